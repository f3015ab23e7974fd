#pragma once

#include <cstdint>
#include <vector>

#include "spikecast/series.hpp"

namespace spikecast {

/// Step-Forward population encoder: channels/2 threshold levels, each with
/// an up and a down channel. Level j uses sf_threshold * ratio^j.
struct EncoderConfig {
    int channels = 8;           // even, >= 2; half up, half down
    double sf_threshold = 0.1;  // base threshold, > 0
    double ratio = 2.0;         // geometric spacing between levels

    void validate() const;
    int levels() const { return channels / 2; }
};

struct SpikeRaster {
    int channels = 0;
    std::size_t horizon = 0;
    std::vector<std::vector<std::uint32_t>> events;  // strictly increasing per channel

    void validate() const;
};

/// Streaming form of the encoder: feed one sample, get the channels that
/// spiked. encode() is a convenience wrapper over this.
class SfEncoder {
public:
    explicit SfEncoder(const EncoderConfig& cfg);

    // Returns spiking channel ids for this sample. Up channels are
    // [0, levels), down channels [levels, 2*levels).
    std::vector<int> feed(double sample);

    const EncoderConfig& config() const { return cfg_; }

private:
    EncoderConfig cfg_;
    std::vector<double> baseline_;
    bool primed_ = false;
};

SpikeRaster encode(const TimeSeries& series, const EncoderConfig& cfg);

struct DecoderConfig {
    int tau = 30;
    double gamma = 0.924;

    DecoderConfig() = default;
    DecoderConfig(int tau_steps, double decay);  // validates

    void validate() const;
};

// r_i(t) = sum_{n=0}^{tau} gamma^n s_i(t-n)
MultiSeries decode(const SpikeRaster& raster, const DecoderConfig& cfg);

// Membrane-potential channels passed through, optionally z-scored per channel.
MultiSeries decode_membrane(const MultiSeries& potentials, bool zscore = false);

}  // namespace spikecast
