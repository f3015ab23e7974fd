#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "spikecast/series.hpp"

namespace spikecast {

using Vec3 = std::array<double, 3>;

struct LorenzParams {
    double rho;
    double sigma;
    double beta;

    void validate() const;
};

// The four operating regimes the generator cycles through.
namespace lorenz_modes {
inline constexpr LorenzParams fixed_point{60.0, 20.0, 8.0};
inline constexpr LorenzParams chaos{36.0, 8.5, 3.5};
inline constexpr LorenzParams limit_cycle{35.0, 21.0, 1.0};
inline constexpr LorenzParams normal{28.0, 10.0, 2.66};
}  // namespace lorenz_modes

struct ModeSegment {
    LorenzParams params;
    std::size_t length;  // stored samples
};

struct ModeSchedule {
    std::vector<ModeSegment> segments;

    // fixed_point, chaos, limit_cycle, normal; 300 samples each.
    static ModeSchedule canonical();

    std::size_t total_length() const;
    // Cumulative segment end indices, e.g. {300, 600, 900, 1200}.
    std::vector<std::size_t> boundaries() const;
    void validate() const;
};

struct TrendSpec {
    double amplitude = 0.0;  // 0 disables the trend
    double period = 1.0;     // in samples

    void validate() const;
};

Vec3 lorenz_deriv(const Vec3& state, const LorenzParams& p);

// One classical RK4 step. Throws std::runtime_error on non-finite output.
Vec3 lorenz_step(const Vec3& state, const LorenzParams& p, double h);

// Integrates the schedule, carrying state across segment switches, and
// projects the x component. When no initial state is given, one is drawn
// from the seed.
TimeSeries generate_evolving(const ModeSchedule& schedule, double h, std::uint64_t seed,
                             std::optional<Vec3> initial = std::nullopt);

// x'(t) = x(t) + A * sin(2*pi*t / T)
TimeSeries apply_trend(const TimeSeries& series, const TrendSpec& trend);

}  // namespace spikecast
