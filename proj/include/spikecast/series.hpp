#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikecast {

enum class SeriesOrigin { synthetic, file };

/// Uniformly sampled scalar sequence. One entry per simulation step.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    SeriesOrigin origin = SeriesOrigin::synthetic;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    // Throws if empty or any value is non-finite.
    void validate() const;
};

/// A bundle of equal-length scalar channels (channel-major).
struct MultiSeries {
    std::vector<std::vector<double>> channels;

    std::size_t n_channels() const { return channels.size(); }
    std::size_t steps() const { return channels.empty() ? 0 : channels[0].size(); }

    // Throws if channel lengths disagree.
    void validate() const;
};

/// Inverse of a normalization: raw = normalized * scale + offset.
struct AffineMap {
    double offset = 0.0;
    double scale = 1.0;

    double apply(double v) const { return v * scale + offset; }
    double invert(double v) const { return (v - offset) / scale; }
};

// Z-scores to zero mean, unit population variance. A constant series maps to
// all zeros with scale 1 and the constant recorded as offset.
std::pair<TimeSeries, AffineMap> normalize(const TimeSeries& series);

TimeSeries denormalize(const TimeSeries& series, const AffineMap& map);

/// Causal z-scoring for streaming data: statistics at step t cover samples
/// 0..t only, so a normalized value never changes once produced and no
/// future sample can influence the past. Until the variance is resolvable
/// (fewer than two distinct samples) the scale falls back to 1.
class OnlineNormalizer {
  public:
    // Absorbs one sample and returns it normalized by the updated stats.
    // Once frozen, samples no longer update the statistics.
    double push(double y);

    // Stops adapting: later samples are transformed with the statistics held
    // at freeze time. Keeps the transform stationary after a warmup period.
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    double mean() const { return mean_; }
    double sigma() const;
    long count() const { return count_; }

    // Maps a normalized value back to raw units with the current stats.
    double to_raw(double yn) const { return yn * sigma() + mean_; }
    // Normalizes a raw value with the current stats (no state change).
    double to_norm(double y) const { return (y - mean_) / sigma(); }

  private:
    long count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;  // sum of squared deviations (Welford)
    bool frozen_ = false;
};

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);  // population

}  // namespace spikecast
