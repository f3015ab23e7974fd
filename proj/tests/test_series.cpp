#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "spikecast/series.hpp"

using namespace spikecast;

TEST_CASE("normalize maps a two-point series to +-1") {
    TimeSeries s;
    s.values = {2.0, 4.0};
    auto [norm, map] = normalize(s);
    CHECK(norm.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(norm.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(map.offset == doctest::Approx(3.0));
    CHECK(map.scale == doctest::Approx(1.0));
}

TEST_CASE("normalize maps a constant series to zeros and records the constant") {
    TimeSeries s;
    s.values = {5.0, 5.0, 5.0};
    auto [norm, map] = normalize(s);
    for (double v : norm.values) CHECK(v == 0.0);
    CHECK(map.offset == doctest::Approx(5.0));
    CHECK(map.scale == doctest::Approx(1.0));
}

TEST_CASE("denormalize(normalize(s)) round-trips to 1e-12") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist(3.0, 11.0);
    TimeSeries s;
    for (int i = 0; i < 257; ++i) s.values.push_back(dist(rng));
    auto [norm, map] = normalize(s);
    TimeSeries back = denormalize(norm, map);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(back.values[i] == doctest::Approx(s.values[i]).epsilon(1e-12));
}

TEST_CASE("TimeSeries::validate rejects empty and non-finite input") {
    TimeSeries empty;
    CHECK_THROWS(empty.validate());

    TimeSeries bad;
    bad.values = {1.0, std::nan(""), 2.0};
    CHECK_THROWS(bad.validate());

    TimeSeries inf;
    inf.values = {1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS(inf.validate());

    TimeSeries ok;
    ok.values = {0.0};
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("MultiSeries::validate rejects ragged channels") {
    MultiSeries m;
    m.channels = {{1.0, 2.0}, {3.0}};
    CHECK_THROWS(m.validate());
    m.channels = {{1.0, 2.0}, {3.0, 4.0}};
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("mean and population stddev match a direct computation") {
    std::vector<double> v = {1.0, 2.0, 3.0, 10.0};
    CHECK(mean(v) == doctest::Approx(4.0));
    double m = 4.0, var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= v.size();
    CHECK(stddev(v) == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
}

TEST_CASE("online normalizer is causal: a shared prefix yields identical outputs") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0.0, 2.0);
    std::vector<double> prefix;
    for (int i = 0; i < 64; ++i) prefix.push_back(dist(rng));

    OnlineNormalizer a, b;
    std::vector<double> out_a, out_b;
    for (double y : prefix) out_a.push_back(a.push(y));
    for (double y : prefix) out_b.push_back(b.push(y));
    // Diverging futures cannot rewrite already-produced values.
    a.push(1000.0);
    b.push(-1000.0);
    for (int i = 0; i < 64; ++i) CHECK(out_a[i] == out_b[i]);
}

TEST_CASE("online normalizer freeze pins the statistics") {
    OnlineNormalizer n;
    n.push(1.0);
    n.push(3.0);
    n.push(5.0);
    const double mu = n.mean();
    const double sigma = n.sigma();
    n.freeze();
    CHECK(n.frozen());
    const double yn = n.push(100.0);
    CHECK(n.mean() == mu);
    CHECK(n.sigma() == sigma);
    CHECK(yn == doctest::Approx((100.0 - mu) / sigma));
}

TEST_CASE("online normalizer to_raw inverts to_norm") {
    OnlineNormalizer n;
    for (double y : {0.5, 2.5, -1.0, 4.0}) n.push(y);
    for (double y : {-3.0, 0.0, 7.25}) {
        CHECK(n.to_raw(n.to_norm(y)) == doctest::Approx(y).epsilon(1e-12));
    }
}

TEST_CASE("online normalizer matches batch statistics after the same samples") {
    std::vector<double> v = {4.0, 8.0, 15.0, 16.0, 23.0, 42.0};
    OnlineNormalizer n;
    for (double y : v) n.push(y);
    CHECK(n.mean() == doctest::Approx(mean(v)).epsilon(1e-12));
    CHECK(n.sigma() == doctest::Approx(stddev(v)).epsilon(1e-12));
    CHECK(n.count() == 6);
}

TEST_CASE("online normalizer scale falls back to 1 before variance is resolvable") {
    OnlineNormalizer n;
    CHECK(n.push(7.0) == 0.0);  // single sample: (7-7)/1
    OnlineNormalizer c;
    c.push(2.0);
    c.push(2.0);  // identical samples: variance still zero
    CHECK(c.sigma() == 1.0);
}
