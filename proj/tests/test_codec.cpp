#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "spikecast/codec.hpp"
#include "spikecast/lorenz.hpp"

using namespace spikecast;

namespace {

TimeSeries make_series(std::vector<double> v) {
    TimeSeries s;
    s.values = std::move(v);
    return s;
}

// Independent reconstruction: walk the spike raster, adding (subtracting)
// each channel's threshold per up (down) spike onto the first sample.
std::vector<double> sf_reconstruct(const SpikeRaster& raster, const EncoderConfig& cfg,
                                   double first_sample) {
    std::vector<double> rec(raster.horizon, 0.0);
    const int levels = cfg.levels();
    std::vector<double> delta(raster.horizon, 0.0);
    for (int c = 0; c < raster.channels; ++c) {
        const double thr = cfg.sf_threshold * std::pow(cfg.ratio, c % levels);
        const double sign = c < levels ? 1.0 : -1.0;
        for (std::uint32_t t : raster.events[c]) delta[t] += sign * thr;
    }
    double level = first_sample;
    for (std::size_t t = 0; t < raster.horizon; ++t) {
        level += delta[t];
        rec[t] = level;
    }
    return rec;
}

}  // namespace

TEST_CASE("a constant series produces no spikes") {
    const auto s = make_series(std::vector<double>(40, 2.5));
    const auto raster = encode(s, EncoderConfig{});
    for (const auto& ch : raster.events) CHECK(ch.empty());
}

TEST_CASE("a ramp rising one base threshold per step spikes the base up-channel every step") {
    EncoderConfig cfg;
    cfg.channels = 2;  // one up, one down
    cfg.sf_threshold = 0.5;
    std::vector<double> v;
    for (int i = 0; i < 20; ++i) v.push_back(0.5 * i);
    const auto raster = encode(make_series(std::move(v)), cfg);
    REQUIRE(raster.channels == 2);
    CHECK(raster.events[0].size() == 19);  // every step after the baseline primes
    CHECK(raster.events[1].empty());
}

TEST_CASE("encoding then walking the thresholds reconstructs the signal to within one threshold") {
    ModeSchedule one;
    one.segments = {{lorenz_modes::chaos, 400}};
    TimeSeries s = generate_evolving(one, 0.01, 17);
    // Work on a standardized copy so the default threshold scale applies.
    auto [norm, map] = normalize(s);

    EncoderConfig cfg;
    cfg.channels = 2;  // single threshold level; reconstruction drift is then bounded
    cfg.sf_threshold = 0.1;
    const auto raster = encode(norm, cfg);
    const auto rec = sf_reconstruct(raster, cfg, norm.values[0]);
    double max_err = 0.0;
    for (std::size_t t = 0; t < norm.size(); ++t)
        max_err = std::max(max_err, std::abs(rec[t] - norm.values[t]));
    CHECK(max_err <= cfg.sf_threshold + 1e-9);
}

TEST_CASE("encode is causal: truncating input equals truncating output") {
    ModeSchedule one;
    one.segments = {{lorenz_modes::normal, 120}};
    TimeSeries s = generate_evolving(one, 0.01, 23);
    EncoderConfig cfg;

    const auto full = encode(s, cfg);
    TimeSeries head;
    head.values.assign(s.values.begin(), s.values.begin() + 60);
    const auto part = encode(head, cfg);

    for (int c = 0; c < cfg.channels; ++c) {
        std::vector<std::uint32_t> expected;
        for (auto t : full.events[c])
            if (t < 60) expected.push_back(t);
        CHECK(part.events[c] == expected);
    }
}

TEST_CASE("a single spike decays by gamma per step and dies after the window") {
    SpikeRaster raster;
    raster.channels = 1;
    raster.horizon = 10;
    raster.events = {{5}};
    const auto out = decode(raster, DecoderConfig(3, 0.5));
    REQUIRE(out.n_channels() == 1);
    const auto& r = out.channels[0];
    CHECK(r[4] == doctest::Approx(0.0));
    CHECK(r[5] == doctest::Approx(1.0));
    CHECK(r[6] == doctest::Approx(0.5));
    CHECK(r[7] == doctest::Approx(0.25));
    CHECK(r[8] == doctest::Approx(0.125));
    CHECK(r[9] == doctest::Approx(0.0));
}

TEST_CASE("an empty raster decodes to zeros") {
    SpikeRaster raster;
    raster.channels = 2;
    raster.horizon = 6;
    raster.events = {{}, {}};
    const auto out = decode(raster, DecoderConfig(4, 0.9));
    for (const auto& ch : out.channels)
        for (double v : ch) CHECK(v == 0.0);
}

TEST_CASE("spiking every step with gamma=1 and tau=9 saturates at a window sum of 10") {
    SpikeRaster raster;
    raster.channels = 1;
    raster.horizon = 30;
    raster.events.resize(1);
    for (std::uint32_t t = 0; t < 30; ++t) raster.events[0].push_back(t);
    const auto out = decode(raster, DecoderConfig(9, 1.0));
    for (std::size_t t = 9; t < 30; ++t) CHECK(out.channels[0][t] == doctest::Approx(10.0));
}

TEST_CASE("decode is linear over disjoint spike sets") {
    SpikeRaster a, b, both;
    a.channels = b.channels = both.channels = 1;
    a.horizon = b.horizon = both.horizon = 20;
    a.events = {{2, 7, 11}};
    b.events = {{4, 9, 15}};
    both.events = {{2, 4, 7, 9, 11, 15}};
    const DecoderConfig cfg(6, 0.7);
    const auto da = decode(a, cfg);
    const auto db = decode(b, cfg);
    const auto dboth = decode(both, cfg);
    for (std::size_t t = 0; t < 20; ++t)
        CHECK(dboth.channels[0][t] ==
              doctest::Approx(da.channels[0][t] + db.channels[0][t]).epsilon(1e-12));
}

TEST_CASE("decoded values respect the geometric window bound") {
    SpikeRaster raster;
    raster.channels = 1;
    raster.horizon = 100;
    raster.events.resize(1);
    for (std::uint32_t t = 0; t < 100; ++t) raster.events[0].push_back(t);
    const DecoderConfig cfg(10, 0.8);
    const auto out = decode(raster, cfg);
    const double bound = (1.0 - std::pow(0.8, 11)) / (1.0 - 0.8);
    for (double v : out.channels[0]) CHECK(v <= bound + 1e-12);
}

TEST_CASE("decoder config enforces its stated ranges") {
    CHECK_THROWS(DecoderConfig(0, 0.5));
    CHECK_THROWS(DecoderConfig(51, 0.99));
    CHECK_THROWS(DecoderConfig(10, 0.0));
    CHECK_THROWS(DecoderConfig(10, 1.5));
    // gamma^(tau-1) >= 0.1 must hold.
    CHECK_THROWS(DecoderConfig(30, 0.5));
    CHECK_NOTHROW(DecoderConfig(30, 0.924));
}

TEST_CASE("membrane traces pass through unchanged") {
    MultiSeries pots;
    pots.channels = {{-65.0, -64.0}};
    const auto out = decode_membrane(pots);
    REQUIRE(out.n_channels() == 1);
    CHECK(out.channels[0][0] == -65.0);
    CHECK(out.channels[0][1] == -64.0);
}

TEST_CASE("membrane z-scoring maps a constant trace to zeros") {
    MultiSeries pots;
    pots.channels = {{-70.0, -70.0, -70.0}};
    const auto out = decode_membrane(pots, true);
    for (double v : out.channels[0]) CHECK(v == 0.0);
}

TEST_CASE("membrane channel order is preserved") {
    MultiSeries pots;
    pots.channels = {{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const auto out = decode_membrane(pots);
    REQUIRE(out.n_channels() == 3);
    CHECK(out.channels[2][0] == 5.0);
}

TEST_CASE("ragged membrane traces are rejected") {
    MultiSeries pots;
    pots.channels = {{1.0, 2.0}, {3.0}};
    CHECK_THROWS(decode_membrane(pots));
}

TEST_CASE("encoder config rejects odd or tiny channel counts and bad thresholds") {
    EncoderConfig odd;
    odd.channels = 5;
    CHECK_THROWS(odd.validate());
    EncoderConfig tiny;
    tiny.channels = 0;
    CHECK_THROWS(tiny.validate());
    EncoderConfig bad;
    bad.sf_threshold = 0.0;
    CHECK_THROWS(bad.validate());
}
