#include "spikecast/lorenz.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace spikecast {

void LorenzParams::validate() const {
    if (!std::isfinite(rho) || !std::isfinite(sigma) || !std::isfinite(beta))
        throw std::invalid_argument("LorenzParams: non-finite parameter");
    if (beta <= 0.0)
        throw std::invalid_argument("LorenzParams: beta must be positive");
}

ModeSchedule ModeSchedule::canonical() {
    ModeSchedule s;
    s.segments = {{lorenz_modes::fixed_point, 300},
                  {lorenz_modes::chaos, 300},
                  {lorenz_modes::limit_cycle, 300},
                  {lorenz_modes::normal, 300}};
    return s;
}

std::size_t ModeSchedule::total_length() const {
    std::size_t n = 0;
    for (const auto& seg : segments) n += seg.length;
    return n;
}

std::vector<std::size_t> ModeSchedule::boundaries() const {
    std::vector<std::size_t> out;
    std::size_t acc = 0;
    for (const auto& seg : segments) {
        acc += seg.length;
        out.push_back(acc);
    }
    return out;
}

void ModeSchedule::validate() const {
    if (segments.empty())
        throw std::invalid_argument("ModeSchedule: no segments");
    for (const auto& seg : segments) {
        seg.params.validate();
        if (seg.length < 1)
            throw std::invalid_argument("ModeSchedule: segment length must be >= 1");
    }
}

void TrendSpec::validate() const {
    if (amplitude != 0.0 && period < 1.0)
        throw std::invalid_argument("TrendSpec: period must be >= 1 when amplitude is nonzero");
}

Vec3 lorenz_deriv(const Vec3& s, const LorenzParams& p) {
    const double x = s[0], y = s[1], z = s[2];
    return {p.sigma * (y - x), x * (p.rho - z) - y, x * y - p.beta * z};
}

Vec3 lorenz_step(const Vec3& state, const LorenzParams& p, double h) {
    if (h <= 0.0)
        throw std::invalid_argument("lorenz_step: h must be positive");
    for (double c : state)
        if (!std::isfinite(c))
            throw std::invalid_argument("lorenz_step: non-finite state");

    auto axpy = [](const Vec3& a, double t, const Vec3& b) {
        return Vec3{a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
    };
    const Vec3 k1 = lorenz_deriv(state, p);
    const Vec3 k2 = lorenz_deriv(axpy(state, h / 2.0, k1), p);
    const Vec3 k3 = lorenz_deriv(axpy(state, h / 2.0, k2), p);
    const Vec3 k4 = lorenz_deriv(axpy(state, h, k3), p);

    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    for (double c : out)
        if (!std::isfinite(c))
            throw std::runtime_error("lorenz_step: integration diverged");
    return out;
}

TimeSeries generate_evolving(const ModeSchedule& schedule, double h, std::uint64_t seed,
                             std::optional<Vec3> initial) {
    schedule.validate();
    if (h <= 0.0)
        throw std::invalid_argument("generate_evolving: h must be positive");

    Vec3 state;
    if (initial) {
        state = *initial;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> xy(-10.0, 10.0);
        std::uniform_real_distribution<double> zu(10.0, 30.0);
        state = {xy(rng), xy(rng), zu(rng)};
    }

    TimeSeries out;
    out.dt = h;
    out.origin = SeriesOrigin::synthetic;
    out.values.reserve(schedule.total_length());
    for (const auto& seg : schedule.segments) {
        for (std::size_t i = 0; i < seg.length; ++i) {
            state = lorenz_step(state, seg.params, h);
            out.values.push_back(state[0]);
        }
    }
    return out;
}

TimeSeries apply_trend(const TimeSeries& series, const TrendSpec& trend) {
    series.validate();
    trend.validate();
    if (trend.amplitude == 0.0) return series;

    TimeSeries out = series;
    for (std::size_t t = 0; t < out.values.size(); ++t)
        out.values[t] += trend.amplitude *
                         std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / trend.period);
    return out;
}

}  // namespace spikecast
