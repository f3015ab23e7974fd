#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "spikecast/lorenz.hpp"

using namespace spikecast;

namespace {

// Independent check value: tiny-step explicit Euler over the same interval.
Vec3 euler_oracle(Vec3 state, const LorenzParams& p, double h, int substeps) {
    const double dt = h / substeps;
    for (int i = 0; i < substeps; ++i) {
        const Vec3 d = lorenz_deriv(state, p);
        for (int k = 0; k < 3; ++k) state[k] += dt * d[k];
    }
    return state;
}

}  // namespace

TEST_CASE("an equilibrium is a fixed point of the integrator") {
    // (sqrt(beta(rho-1)), sqrt(beta(rho-1)), rho-1) zeroes the vector field,
    // so every RK4 stage evaluates to zero and the state must not move.
    const LorenzParams normal = lorenz_modes::normal;
    const double c = std::sqrt(normal.beta * (normal.rho - 1.0));
    const Vec3 eq = {c, c, normal.rho - 1.0};
    const Vec3 next = lorenz_step(eq, normal, 0.01);
    CHECK(next[0] == eq[0]);
    CHECK(next[1] == eq[1]);
    CHECK(next[2] == eq[2]);

    // An integer-valued instance: beta=3, rho=13 -> (6, 6, 12).
    const LorenzParams p{13.0, 10.0, 3.0};
    const Vec3 eq2 = {6.0, 6.0, 12.0};
    const Vec3 next2 = lorenz_step(eq2, p, 0.02);
    CHECK(next2[0] == 6.0);
    CHECK(next2[1] == 6.0);
    CHECK(next2[2] == 12.0);
}

TEST_CASE("one RK4 step matches a tiny-step Euler integration to 1e-5 relative") {
    const Vec3 start = {1.0, 1.0, 1.0};
    const LorenzParams p = lorenz_modes::normal;
    const Vec3 rk = lorenz_step(start, p, 0.01);
    const Vec3 ref = euler_oracle(start, p, 0.01, 20000);
    for (int k = 0; k < 3; ++k)
        CHECK(rk[k] == doctest::Approx(ref[k]).epsilon(1e-5));
}

TEST_CASE("RK4 halved-step self-consistency is at the h^5 level") {
    // |x(h) - x(h/2 twice)| should be ~O(h^5) for a 4th-order method.
    const Vec3 start = {3.0, -2.0, 15.0};
    const LorenzParams p = lorenz_modes::chaos;
    const double h = 0.01;
    const Vec3 full = lorenz_step(start, p, h);
    const Vec3 halves = lorenz_step(lorenz_step(start, p, h / 2), p, h / 2);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(full[k] - halves[k]) < 1e-7);
}

TEST_CASE("lorenz_step validates inputs") {
    CHECK_THROWS(lorenz_step({1, 1, 1}, lorenz_modes::normal, 0.0));
    CHECK_THROWS(lorenz_step({1, 1, 1}, lorenz_modes::normal, -0.01));
    CHECK_THROWS(lorenz_step({std::nan(""), 1, 1}, lorenz_modes::normal, 0.01));
    LorenzParams bad{28.0, 10.0, 0.0};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("the canonical schedule generates 4 x 300 = 1200 samples") {
    const auto schedule = ModeSchedule::canonical();
    CHECK(schedule.total_length() == 1200);
    const auto b = schedule.boundaries();
    REQUIRE(b.size() == 4);
    CHECK(b[0] == 300);
    CHECK(b[1] == 600);
    CHECK(b[2] == 900);
    CHECK(b[3] == 1200);

    const TimeSeries s = generate_evolving(schedule, 0.01, 1);
    CHECK(s.size() == 1200);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("a single-segment schedule of length 1 yields one sample") {
    ModeSchedule one;
    one.segments = {{lorenz_modes::normal, 1}};
    const TimeSeries s = generate_evolving(one, 0.01, 3);
    CHECK(s.size() == 1);
}

TEST_CASE("generation is a pure function of schedule, step, seed, and start") {
    const auto schedule = ModeSchedule::canonical();
    const TimeSeries a = generate_evolving(schedule, 0.01, 42);
    const TimeSeries b = generate_evolving(schedule, 0.01, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);

    const TimeSeries c = generate_evolving(schedule, 0.01, 43);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.values[i] != c.values[i]) differs = true;
    CHECK(differs);
}

TEST_CASE("state carries across segment boundaries") {
    // Splitting one segment into two with identical parameters must not
    // change the trajectory: the state is handed over, never reset.
    ModeSchedule whole, split;
    whole.segments = {{lorenz_modes::chaos, 300}};
    split.segments = {{lorenz_modes::chaos, 120}, {lorenz_modes::chaos, 180}};
    const TimeSeries a = generate_evolving(whole, 0.01, 5);
    const TimeSeries b = generate_evolving(split, 0.01, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("chaos-mode trajectories separated by 1e-8 diverge past 1e-2 within 1000 steps") {
    // A start on the chaotic attractor (reached by a burn-in under the chaos
    // parameters, so the positive Lyapunov exponent is actually sampled).
    const Vec3 ic = {-0.85538205, -3.11661795, 20.08929744};
    Vec3 a = ic;
    Vec3 b = {ic[0] + 1e-8, ic[1], ic[2]};
    bool diverged = false;
    for (int t = 0; t < 1000 && !diverged; ++t) {
        a = lorenz_step(a, lorenz_modes::chaos, 0.01);
        b = lorenz_step(b, lorenz_modes::chaos, 0.01);
        if (std::abs(a[0] - b[0]) > 1e-2) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("a zero-amplitude trend is the identity") {
    ModeSchedule one;
    one.segments = {{lorenz_modes::normal, 50}};
    const TimeSeries s = generate_evolving(one, 0.01, 9);
    const TimeSeries t = apply_trend(s, TrendSpec{0.0, 100.0});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(t.values[i] == s.values[i]);
}

TEST_CASE("trend on a zero series is the pure sinusoid") {
    TimeSeries zeros;
    zeros.values.assign(5, 0.0);
    const TimeSeries t = apply_trend(zeros, TrendSpec{1.0, 4.0});
    CHECK(t.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.values[2] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(t.values[3] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(t.values[4] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("adding then subtracting the same sinusoid recovers the series to 1e-12") {
    ModeSchedule one;
    one.segments = {{lorenz_modes::limit_cycle, 200}};
    const TimeSeries s = generate_evolving(one, 0.01, 13);
    const TrendSpec trend{3.0, 300.0};
    const TimeSeries modulated = apply_trend(s, trend);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double sin_term = 3.0 * std::sin(2.0 * M_PI * static_cast<double>(i) / 300.0);
        CHECK(modulated.values[i] - sin_term == doctest::Approx(s.values[i]).epsilon(1e-12));
    }
}
