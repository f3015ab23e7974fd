#include "spikecast/series.hpp"

#include <cmath>
#include <numeric>

namespace spikecast {

void TimeSeries::validate() const {
    if (values.empty())
        throw std::invalid_argument("TimeSeries: empty");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("TimeSeries: non-finite value");
}

void MultiSeries::validate() const {
    for (const auto& ch : channels)
        if (ch.size() != steps())
            throw std::invalid_argument("MultiSeries: channel length mismatch");
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::pair<TimeSeries, AffineMap> normalize(const TimeSeries& series) {
    series.validate();
    if (series.size() < 2)
        throw std::invalid_argument("normalize: need at least 2 samples");
    const double m = mean(series.values);
    double s = stddev(series.values);
    if (s == 0.0) s = 1.0;  // constant series: all zeros, offset remembers the level

    TimeSeries out = series;
    for (double& v : out.values) v = (v - m) / s;
    return {out, AffineMap{m, s}};
}

TimeSeries denormalize(const TimeSeries& series, const AffineMap& map) {
    TimeSeries out = series;
    for (double& v : out.values) v = map.apply(v);
    return out;
}

double OnlineNormalizer::sigma() const {
    if (count_ < 2) return 1.0;
    const double var = m2_ / static_cast<double>(count_);  // population
    return var > 1e-24 ? std::sqrt(var) : 1.0;
}

double OnlineNormalizer::push(double y) {
    if (!std::isfinite(y)) throw std::invalid_argument("OnlineNormalizer: non-finite sample");
    if (!frozen_) {
        ++count_;
        const double delta = y - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (y - mean_);
    }
    return to_norm(y);
}

}  // namespace spikecast
