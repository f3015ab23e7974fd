#include "spikecast/codec.hpp"

#include <cmath>
#include <stdexcept>

namespace spikecast {

void EncoderConfig::validate() const {
    if (channels < 2 || channels % 2 != 0)
        throw std::invalid_argument("EncoderConfig: channels must be even and >= 2");
    if (sf_threshold <= 0.0)
        throw std::invalid_argument("EncoderConfig: sf_threshold must be positive");
    if (ratio <= 0.0)
        throw std::invalid_argument("EncoderConfig: ratio must be positive");
}

void SpikeRaster::validate() const {
    if (static_cast<int>(events.size()) != channels)
        throw std::invalid_argument("SpikeRaster: channel count mismatch");
    for (const auto& ch : events) {
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (ch[i] >= horizon)
                throw std::invalid_argument("SpikeRaster: spike beyond horizon");
            if (i > 0 && ch[i] <= ch[i - 1])
                throw std::invalid_argument("SpikeRaster: spike steps not strictly increasing");
        }
    }
}

SfEncoder::SfEncoder(const EncoderConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    baseline_.assign(cfg_.levels(), 0.0);
}

std::vector<int> SfEncoder::feed(double sample) {
    std::vector<int> spikes;
    if (!primed_) {
        // first sample seeds every baseline; nothing can spike yet
        for (double& b : baseline_) b = sample;
        primed_ = true;
        return spikes;
    }
    const int m = cfg_.levels();
    double thr = cfg_.sf_threshold;
    for (int j = 0; j < m; ++j, thr *= cfg_.ratio) {
        if (sample >= baseline_[j] + thr) {
            spikes.push_back(j);
            baseline_[j] += thr;
        } else if (sample <= baseline_[j] - thr) {
            spikes.push_back(m + j);
            baseline_[j] -= thr;
        }
    }
    return spikes;
}

SpikeRaster encode(const TimeSeries& series, const EncoderConfig& cfg) {
    series.validate();
    SfEncoder enc(cfg);
    SpikeRaster raster;
    raster.channels = cfg.channels;
    raster.horizon = series.size();
    raster.events.assign(cfg.channels, {});
    for (std::size_t t = 0; t < series.size(); ++t)
        for (int ch : enc.feed(series.values[t]))
            raster.events[ch].push_back(static_cast<std::uint32_t>(t));
    return raster;
}

DecoderConfig::DecoderConfig(int tau_steps, double decay) : tau(tau_steps), gamma(decay) {
    validate();
}

void DecoderConfig::validate() const {
    if (tau < 1 || tau > 50)
        throw std::invalid_argument("DecoderConfig: tau must be in [1, 50]");
    if (gamma <= 0.0 || gamma > 1.0)
        throw std::invalid_argument("DecoderConfig: gamma must be in (0, 1]");
    if (std::pow(gamma, tau - 1) < 0.1)
        throw std::invalid_argument("DecoderConfig: gamma^(tau-1) must be >= 0.1");
}

MultiSeries decode(const SpikeRaster& raster, const DecoderConfig& cfg) {
    raster.validate();
    cfg.validate();

    std::vector<double> powers(cfg.tau + 1);
    powers[0] = 1.0;
    for (int n = 1; n <= cfg.tau; ++n) powers[n] = powers[n - 1] * cfg.gamma;

    MultiSeries out;
    out.channels.assign(raster.channels, std::vector<double>(raster.horizon, 0.0));
    for (int c = 0; c < raster.channels; ++c) {
        for (std::uint32_t s : raster.events[c]) {
            const std::size_t last =
                std::min(raster.horizon - 1, static_cast<std::size_t>(s) + cfg.tau);
            for (std::size_t t = s; t <= last; ++t)
                out.channels[c][t] += powers[t - s];
        }
    }
    return out;
}

MultiSeries decode_membrane(const MultiSeries& potentials, bool zscore) {
    potentials.validate();
    MultiSeries out = potentials;
    if (zscore) {
        for (auto& ch : out.channels) {
            const double m = mean(ch);
            double s = stddev(ch);
            if (s == 0.0) s = 1.0;
            for (double& v : ch) v = (v - m) / s;
        }
    }
    return out;
}

}  // namespace spikecast
