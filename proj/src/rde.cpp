#include "spikecast/rde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace spikecast {

DelayEmbedding delay_embed(const TimeSeries& series, int E, int delay) {
    if (E < 1) throw std::invalid_argument("delay_embed: E must be at least 1");
    if (delay < 1) throw std::invalid_argument("delay_embed: delay must be at least 1");
    const int n = static_cast<int>(series.size());
    const int first = (E - 1) * delay;
    if (n < first + 1) throw std::invalid_argument("delay_embed: series too short");

    DelayEmbedding emb;
    emb.E = E;
    emb.delay = delay;
    emb.first_index = first;
    emb.vectors.reserve(n - first);
    for (int t = first; t < n; ++t) {
        std::vector<double> v(E);
        for (int j = 0; j < E; ++j) v[j] = series.values[t - j * delay];
        emb.vectors.push_back(std::move(v));
    }
    return emb;
}

void RdeConfig::validate() const {
    if (s < 1) throw std::invalid_argument("rde: s must be at least 1");
    if (ensemble < 1) throw std::invalid_argument("rde: ensemble must be at least 1");
    if (embed < 1) throw std::invalid_argument("rde: embed must be at least 1");
    if (delay < 1) throw std::invalid_argument("rde: delay must be at least 1");
    if (k_nn < 1) throw std::invalid_argument("rde: k_nn must be at least 1");
    if (horizon < 1) throw std::invalid_argument("rde: horizon must be at least 1");
    if (!(trim >= 0.0) || !(trim < 0.5)) throw std::invalid_argument("rde: trim must be in [0, 0.5)");
    if (!(weight_eps > 0.0)) throw std::invalid_argument("rde: weight_eps must be positive");
}

namespace {

// Inverse-distance-weighted k-nearest-neighbor regression; `skip` excludes one
// training index (for leave-one-out evaluation).
std::vector<double> knn_regress(const std::vector<std::vector<double>>& x,
                                const std::vector<std::vector<double>>& y,
                                const std::vector<double>& q, int k, int skip = -1) {
    const int n = static_cast<int>(x.size());
    const int dim = static_cast<int>(q.size());
    std::vector<std::pair<double, int>> d2;
    d2.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (i == skip) continue;
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double diff = x[i][j] - q[j];
            acc += diff * diff;
        }
        d2.emplace_back(acc, i);
    }
    if (d2.empty()) throw std::invalid_argument("knn: no training points");
    const int kk = std::min<int>(k, static_cast<int>(d2.size()));
    std::partial_sort(d2.begin(), d2.begin() + kk, d2.end());

    const int h = static_cast<int>(y.front().size());
    std::vector<double> out(h, 0.0);
    double wsum = 0.0;
    for (int r = 0; r < kk; ++r) {
        const double w = 1.0 / (std::sqrt(d2[r].first) + 1e-12);
        wsum += w;
        const auto& yi = y[d2[r].second];
        for (int j = 0; j < h; ++j) out[j] += w * yi[j];
    }
    for (int j = 0; j < h; ++j) out[j] /= wsum;
    return out;
}

double interpolated_quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * (static_cast<double>(v.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

RdeModel fit(const MultiSeries& observations, const TimeSeries& target, const RdeConfig& cfg,
             std::uint64_t seed) {
    cfg.validate();
    observations.validate();
    const int K = observations.n_channels();
    const int n = static_cast<int>(observations.steps());
    if (K < cfg.s) throw std::invalid_argument("rde fit: fewer channels than subset size");
    if (static_cast<int>(target.size()) != n)
        throw std::invalid_argument("rde fit: target length does not match observations");
    const int n_pairs = n - cfg.horizon;
    if (n_pairs < cfg.k_nn + 1) throw std::invalid_argument("rde fit: insufficient data");

    std::mt19937_64 rng(seed);
    std::vector<int> ids(K);
    std::iota(ids.begin(), ids.end(), 0);

    RdeModel model;
    model.cfg = cfg;
    model.predictors.reserve(cfg.ensemble);
    for (int m = 0; m < cfg.ensemble; ++m) {
        WeakPredictor wp;
        std::shuffle(ids.begin(), ids.end(), rng);
        wp.channels.assign(ids.begin(), ids.begin() + cfg.s);
        std::sort(wp.channels.begin(), wp.channels.end());

        wp.train_x.reserve(n_pairs);
        wp.train_y.reserve(n_pairs);
        for (int t = 0; t < n_pairs; ++t) {
            std::vector<double> xv(cfg.s);
            for (int j = 0; j < cfg.s; ++j) xv[j] = observations.channels[wp.channels[j]][t];
            std::vector<double> yv(cfg.horizon);
            for (int h = 0; h < cfg.horizon; ++h) yv[h] = target.values[t + 1 + h];
            wp.train_x.push_back(std::move(xv));
            wp.train_y.push_back(std::move(yv));
        }

        double sse = 0.0;
        for (int i = 0; i < n_pairs; ++i) {
            const auto pred = knn_regress(wp.train_x, wp.train_y, wp.train_x[i], cfg.k_nn, i);
            for (int h = 0; h < cfg.horizon; ++h) {
                const double e = pred[h] - wp.train_y[i][h];
                sse += e * e;
            }
        }
        wp.fit_error = std::sqrt(sse / (static_cast<double>(n_pairs) * cfg.horizon));
        model.predictors.push_back(std::move(wp));
    }
    return model;
}

Forecast predict(const RdeModel& model, const std::vector<double>& observation) {
    if (model.predictors.empty()) throw std::invalid_argument("rde predict: empty model");
    const auto& cfg = model.cfg;
    const int M = static_cast<int>(model.predictors.size());

    // votes[m] is predictor m's horizon-length forecast.
    std::vector<std::vector<double>> votes(M);
    std::vector<double> weights(M);
    for (int m = 0; m < M; ++m) {
        const auto& wp = model.predictors[m];
        std::vector<double> q(wp.channels.size());
        for (std::size_t j = 0; j < wp.channels.size(); ++j) {
            const int c = wp.channels[j];
            if (c >= static_cast<int>(observation.size()))
                throw std::invalid_argument("rde predict: observation vector incomplete");
            q[j] = observation[c];
        }
        votes[m] = knn_regress(wp.train_x, wp.train_y, q, cfg.k_nn);
        weights[m] = 1.0 / (wp.fit_error + cfg.weight_eps);
    }

    int drop = static_cast<int>(std::ceil(cfg.trim * M));
    drop = std::min(drop, (M - 1) / 2);

    Forecast fc;
    fc.point.resize(cfg.horizon);
    fc.spread.resize(cfg.horizon);
    for (int h = 0; h < cfg.horizon; ++h) {
        std::vector<std::pair<double, double>> vw(M);  // (vote, weight), sorted by value
        std::vector<double> vals(M);
        for (int m = 0; m < M; ++m) {
            vw[m] = {votes[m][h], weights[m]};
            vals[m] = votes[m][h];
        }
        std::sort(vw.begin(), vw.end());
        double num = 0.0, den = 0.0;
        for (int m = drop; m < M - drop; ++m) {
            num += vw[m].first * vw[m].second;
            den += vw[m].second;
        }
        fc.point[h] = num / den;
        fc.spread[h] = interpolated_quantile(vals, 0.9) - interpolated_quantile(vals, 0.1);
    }
    return fc;
}

int choose_embedding_dim(const TimeSeries& series, int max_E, int delay) {
    if (max_E < 1) throw std::invalid_argument("fnn: max_E must be at least 1");
    if (delay < 1) throw std::invalid_argument("fnn: delay must be at least 1");
    const int n = static_cast<int>(series.size());
    if (n < 10 * max_E) throw std::invalid_argument("fnn: series too short");

    constexpr double rtol = 10.0, atol = 2.0, threshold = 0.05;
    double ra = stddev(series.values);
    if (ra == 0.0) ra = 1.0;

    for (int E = 1; E <= max_E; ++E) {
        const int span = E * delay;  // history needed for the (E+1)-dim coordinate
        if (n < span + 1) break;
        const int first = span;  // evaluate only vectors extendable to E+1 dims

        int false_count = 0, total = 0;
        for (int t = first; t < n; ++t) {
            // Nearest neighbor in the E-dim embedding.
            double best = -1.0;
            int bt = -1;
            for (int u = first; u < n; ++u) {
                if (u == t) continue;
                double acc = 0.0;
                for (int j = 0; j < E; ++j) {
                    const double diff = series.values[t - j * delay] - series.values[u - j * delay];
                    acc += diff * diff;
                }
                if (bt < 0 || acc < best) {
                    best = acc;
                    bt = u;
                }
            }
            if (bt < 0) continue;
            const double rd = std::sqrt(best);
            const double added = std::abs(series.values[t - span] - series.values[bt - span]);
            ++total;
            bool is_false;
            if (rd == 0.0) {
                is_false = added > 0.0;
            } else {
                is_false = (added / rd > rtol) || (std::sqrt(rd * rd + added * added) / ra > atol);
            }
            if (is_false) ++false_count;
        }
        if (total > 0 && static_cast<double>(false_count) / total < threshold) return E;
    }
    return max_E;
}

}  // namespace spikecast
