#include "spikecast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "spikecast/baselines.hpp"
#include "spikecast/centrality.hpp"

namespace spikecast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 over seed + salt: independent streams from one run seed.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return kNan;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void LossSpec::validate() const {
    if (window < 2) throw std::invalid_argument("loss: window must be at least 2");
    if (!(threshold > 0.0)) throw std::invalid_argument("loss: threshold must be positive");
}

double rolling_rmse(const std::vector<double>& observed, const std::vector<double>& predicted) {
    if (observed.size() != predicted.size())
        throw std::invalid_argument("rolling_rmse: window length mismatch");
    if (observed.empty()) throw std::invalid_argument("rolling_rmse: empty window");
    double sse = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = observed[i] - predicted[i];
        sse += e * e;
    }
    return std::sqrt(sse / static_cast<double>(observed.size()));
}

int ClursnnConfig::readout_count() const {
    if (readout > 0) return readout;
    return std::max(10, neurons / 50);
}

void ClursnnConfig::validate() const {
    if (neurons < 5) throw std::invalid_argument("config: need at least 5 neurons");
    if (!(connectivity > 0.0) || connectivity > 1.0)
        throw std::invalid_argument("config: connectivity must be in (0, 1]");
    encoder.validate();
    decoder.validate();
    lif.validate();
    stdp.validate();
    if (!(input_fraction > 0.0) || input_fraction > 1.0)
        throw std::invalid_argument("config: input_fraction must be in (0, 1]");
    if (!(input_weight > 0.0)) throw std::invalid_argument("config: input_weight must be positive");
    if (!(syn_scale > 0.0)) throw std::invalid_argument("config: syn_scale must be positive");
    if (readout < 0 || readout > neurons)
        throw std::invalid_argument("config: readout count out of range");
    if (centrality_sources < 0 || centrality_sources > neurons)
        throw std::invalid_argument("config: centrality_sources out of range");
    if (buffer < 8) throw std::invalid_argument("config: buffer too small");
    if (target_lags < 1) throw std::invalid_argument("config: target_lags must be at least 1");
    rde.validate();
    if (readout_count() < rde.s)
        throw std::invalid_argument("config: fewer read-out channels than rde subset size");
}

namespace {

// Per-channel standardization of the read-out traces. Estimated once on the
// warmup buffer and then held fixed: re-fits swap the neighbor table, not the
// metric, so models fitted at different times share one feature space.
struct FeatureScale {
    std::vector<double> mu, sigma;
};

FeatureScale feature_scale(const std::vector<std::vector<double>>& buf_obs) {
    const int K = static_cast<int>(buf_obs.front().size());
    const int n = static_cast<int>(buf_obs.size());
    FeatureScale fs;
    fs.mu.assign(K, 0.0);
    fs.sigma.assign(K, 1.0);
    for (int c = 0; c < K; ++c) {
        double m = 0.0;
        for (int t = 0; t < n; ++t) m += buf_obs[t][c];
        m /= n;
        double var = 0.0;
        for (int t = 0; t < n; ++t) {
            const double d = buf_obs[t][c] - m;
            var += d * d;
        }
        var /= n;
        fs.mu[c] = m;
        fs.sigma[c] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return fs;
}

struct FittedReadout {
    RdeModel rde;
};

FittedReadout fit_readout(const std::vector<std::vector<double>>& buf_obs,
                          const std::vector<double>& buf_target, const RdeConfig& rde_cfg,
                          std::uint64_t seed, const FeatureScale& fs) {
    const int K = static_cast<int>(buf_obs.front().size());
    const int n = static_cast<int>(buf_obs.size());

    MultiSeries obs;
    obs.channels.assign(K, {});
    for (int c = 0; c < K; ++c) {
        obs.channels[c].resize(n);
        for (int t = 0; t < n; ++t)
            obs.channels[c][t] = (buf_obs[t][c] - fs.mu[c]) / fs.sigma[c];
    }
    TimeSeries target;
    target.values = buf_target;

    FittedReadout fr;
    fr.rde = fit(obs, target, rde_cfg, seed);
    return fr;
}

double predict_readout(const FittedReadout& fr, const FeatureScale& fs,
                       const std::vector<double>& readout_values) {
    std::vector<double> q(readout_values.size());
    for (std::size_t c = 0; c < q.size(); ++c)
        q[c] = (readout_values[c] - fs.mu[c]) / fs.sigma[c];
    return predict(fr.rde, q).point.front();
}

// Rolling losses over the trailing `window` pairs ending at t, in normalized
// units. Both columns are produced regardless of which one gates re-fits.
void fill_rolling(StepRecord& row, const std::vector<double>& obs_norm,
                  const std::vector<double>& pred_norm, int t, int window,
                  const TdaConfig& tda) {
    std::vector<double> ow(obs_norm.begin() + t + 1 - window, obs_norm.begin() + t + 1);
    std::vector<double> pw(pred_norm.begin() + t + 1 - window, pred_norm.begin() + t + 1);
    row.rmse = rolling_rmse(ow, pw);
    TimeSeries ots, pts;
    ots.values = std::move(ow);
    pts.values = std::move(pw);
    row.d_w = rolling_wasserstein(ots, pts, window, tda);
}

}  // namespace

RunRecord run_online(const TimeSeries& series, const ClursnnConfig& cfg, const LossSpec& loss,
                     std::uint64_t seed) {
    cfg.validate();
    loss.validate();
    series.validate();
    const int n = static_cast<int>(series.size());
    const int warmup = cfg.buffer + loss.window;
    if (n <= warmup) throw std::invalid_argument("run_online: series not longer than warmup");

    Rsnn net(build_topology(cfg.neurons, cfg.connectivity, derive_seed(seed, 1), cfg.stdp),
             cfg.lif, cfg.stdp, cfg.syn_scale);
    const auto input_map = InputMap::random(cfg.encoder.channels, net.topology(),
                                            cfg.input_fraction, derive_seed(seed, 2),
                                            cfg.input_weight);

    const int K = cfg.readout_count();
    std::vector<int> readout;
    if (cfg.random_readout) {
        std::vector<int> ids(cfg.neurons);
        std::iota(ids.begin(), ids.end(), 0);
        std::mt19937_64 rng(derive_seed(seed, 3));
        std::shuffle(ids.begin(), ids.end(), rng);
        readout.assign(ids.begin(), ids.begin() + K);
        std::sort(readout.begin(), readout.end());
    } else {
        const auto g = net.topology().as_digraph();
        const auto scores = (cfg.centrality_sources > 0 && cfg.centrality_sources < cfg.neurons)
                                ? betweenness_sampled(g, cfg.centrality_sources, derive_seed(seed, 3))
                                : betweenness(g);
        readout = top_k(scores, K);
    }

    SfEncoder encoder(cfg.encoder);

    // Exponential spike decoding of the read-out neurons over a hard window of
    // tau + 1 steps, computed from a ring of recent spikes. Only consulted
    // when the spike read-out is configured; the default reads membranes.
    const int win = cfg.decoder.tau + 1;
    std::vector<double> powers(win);
    for (int i = 0; i < win; ++i) powers[i] = std::pow(cfg.decoder.gamma, i);
    std::vector<std::vector<std::uint8_t>> spike_ring(win, std::vector<std::uint8_t>(K, 0));

    // Observation matrix for the reconstruction: the K decoded channels plus
    // lagged copies of the target itself, mirroring how the reconstruction
    // module is driven in its direct-observation setting. The copies are
    // consecutive recent values: at horizon 1 only shallow lags carry
    // information, so spreading them out only dilutes the ensemble.
    const int L = cfg.target_lags;
    const int C = K + L;

    std::vector<std::vector<double>> buf_obs;   // observation rows, trailing B steps
    std::vector<double> buf_target;             // normalized observations, aligned
    buf_obs.reserve(cfg.buffer + 1);
    buf_target.reserve(cfg.buffer + 1);

    bool fitted = false;
    FittedReadout model;
    FeatureScale fscale;
    long last_fit = -1;
    int refit_count = 0;
    const int cooldown = loss.window;

    RunRecord rec;
    rec.warmup = warmup;
    rec.steps.resize(n);
    rec.scale.resize(n, 1.0);

    OnlineNormalizer norm;
    std::vector<double> obs_norm(n, kNan), pred_metric(n, kNan), pred_raw(n, kNan);
    std::vector<double> current(cfg.neurons, 0.0);
    std::vector<double> readout_values(C, 0.0);

    for (int t = 0; t < n; ++t) {
        const double yn = norm.push(series.values[t]);
        obs_norm[t] = yn;
        rec.scale[t] = norm.sigma();
        // Prediction made last step, re-expressed with the stats of this step
        // so observed and predicted live in the same units.
        if (std::isfinite(pred_raw[t])) pred_metric[t] = norm.to_norm(pred_raw[t]);
        // Adapt the scale during warmup only: a stationary transform keeps the
        // reconstruction's training geometry valid between re-fits.
        if (t + 1 == warmup) norm.freeze();

        const auto channels = encoder.feed(yn);
        std::fill(current.begin(), current.end(), 0.0);
        input_map.inject(channels, current);
        const auto& spikes = net.step(current);

        if (cfg.decode == DecodeKind::spikes) {
            auto& ring_row = spike_ring[t % win];
            for (int c = 0; c < K; ++c) ring_row[c] = spikes[readout[c]];
            const int depth = std::min(t + 1, win);
            for (int c = 0; c < K; ++c) {
                double r = 0.0;
                for (int d = 0; d < depth; ++d) r += powers[d] * spike_ring[(t - d) % win][c];
                readout_values[c] = r;
            }
        } else {
            const auto& v = net.state().v;
            for (int c = 0; c < K; ++c) readout_values[c] = v[readout[c]];
        }
        for (int j = 0; j < L; ++j) readout_values[K + j] = obs_norm[std::max(t - j, 0)];

        buf_obs.push_back(readout_values);
        buf_target.push_back(yn);
        if (static_cast<int>(buf_obs.size()) > cfg.buffer) {
            buf_obs.erase(buf_obs.begin());
            buf_target.erase(buf_target.begin());
        }

        auto& row = rec.steps[t];
        row.t = t;
        row.observed = series.values[t];
        row.predicted = pred_raw[t];
        row.rmse = kNan;
        row.d_w = kNan;

        if (t >= loss.window) fill_rolling(row, obs_norm, pred_metric, t, loss.window, cfg.tda);

        // First fit is unconditional at the end of warmup; later fits trigger
        // on the selected loss, rate-limited by the cooldown.
        if (!fitted && t == warmup - 1) {
            fscale = feature_scale(buf_obs);
            model = fit_readout(buf_obs, buf_target, cfg.rde, derive_seed(seed, 100), fscale);
            fitted = true;
            last_fit = t;
        } else if (fitted && t >= warmup) {
            const double value = loss.kind == LossKind::rmse ? row.rmse : row.d_w;
            if (std::isfinite(value) && value > loss.threshold && t - last_fit >= cooldown) {
                ++refit_count;
                model = fit_readout(buf_obs, buf_target, cfg.rde,
                                    derive_seed(seed, 100 + refit_count), fscale);
                last_fit = t;
                row.refit = true;
                rec.refit_steps.push_back(t);
            }
        }

        if (t + 1 < n) {
            const double next_norm =
                fitted ? predict_readout(model, fscale, readout_values) : yn;
            pred_raw[t + 1] = norm.to_raw(next_norm);
        }
    }
    return rec;
}

std::vector<long> convergence_steps(const RunRecord& record, const ConvergenceSpec& spec) {
    if (!(spec.epsilon > 0.0)) throw std::invalid_argument("convergence: epsilon must be positive");
    const long n = static_cast<long>(record.steps.size());
    std::vector<long> ends = spec.boundaries;
    if (ends.empty()) ends.push_back(n);

    std::vector<long> out;
    long start = 0;
    for (long end : ends) {
        if (end > n || end <= start) throw std::invalid_argument("convergence: bad segment boundary");
        long converged_from = end;  // first index of the all-below-epsilon suffix
        for (long t = end - 1; t >= start; --t) {
            const auto& row = record.steps[t];
            const double scale =
                t < static_cast<long>(record.scale.size()) && record.scale[t] > 0.0
                    ? record.scale[t]
                    : 1.0;
            const double err = std::isfinite(row.predicted)
                                   ? std::abs(row.observed - row.predicted) / scale
                                   : std::numeric_limits<double>::infinity();
            if (err < spec.epsilon)
                converged_from = t;
            else
                break;
        }
        out.push_back(converged_from - start);
        start = end;
    }
    return out;
}

ModelSpec ModelSpec::make(ModelKind kind) {
    ModelSpec spec;
    spec.kind = kind;
    spec.loss = kind == ModelKind::rmse ? LossSpec::rmse_default() : LossSpec::wasserstein_default();
    return spec;
}

std::string ModelSpec::name() const {
    switch (kind) {
        case ModelKind::wass: return "wass";
        case ModelKind::rmse: return "rmse";
        case ModelKind::ar: return "ar";
        case ModelKind::naive: return "naive";
    }
    return "?";
}

namespace {

RunRecord run_baseline(const TimeSeries& series, const ModelSpec& spec) {
    series.validate();
    const int n = static_cast<int>(series.size());
    const int window = spec.loss.window;
    if (n <= window) throw std::invalid_argument("baseline run: series not longer than window");

    OnlineAr ar(spec.ar_order, spec.ar_lr);

    RunRecord rec;
    rec.warmup = window;
    rec.steps.resize(n);
    rec.scale.resize(n, 1.0);

    // Freeze the running scale at the same step as the network pipeline so
    // compared models share one metric space over the scored region.
    const int freeze_at = spec.clursnn.buffer + window;

    OnlineNormalizer norm;
    std::vector<double> obs_norm(n, kNan), pred_metric(n, kNan), pred_raw(n, kNan);
    for (int t = 0; t < n; ++t) {
        const double yn = norm.push(series.values[t]);
        obs_norm[t] = yn;
        rec.scale[t] = norm.sigma();
        if (std::isfinite(pred_raw[t])) pred_metric[t] = norm.to_norm(pred_raw[t]);
        if (t + 1 == freeze_at) norm.freeze();

        auto& row = rec.steps[t];
        row.t = t;
        row.observed = series.values[t];
        row.predicted = pred_raw[t];
        row.rmse = kNan;
        row.d_w = kNan;
        if (t >= window) fill_rolling(row, obs_norm, pred_metric, t, window, spec.clursnn.tda);

        if (t + 1 < n) {
            const double next_norm = spec.kind == ModelKind::naive ? yn : ar.step(yn);
            pred_raw[t + 1] = norm.to_raw(next_norm);
        }
    }
    return rec;
}

}  // namespace

RunRecord run_model(const TimeSeries& series, const ModelSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
        case ModelKind::wass:
        case ModelKind::rmse:
            return run_online(series, spec.clursnn, spec.loss, seed);
        case ModelKind::ar:
        case ModelKind::naive:
            return run_baseline(series, spec);
    }
    throw std::logic_error("run_model: unknown model kind");
}

ComparisonRow summarize_record(const RunRecord& record, const std::vector<long>& boundaries,
                               long aggregate_from, const std::string& name) {
    const long n = static_cast<long>(record.steps.size());
    std::vector<long> ends = boundaries;
    if (ends.empty()) ends.push_back(n);

    ComparisonRow row;
    row.model = name;
    row.refits = static_cast<long>(record.refit_steps.size());

    std::vector<double> seg_rmse, seg_dw;
    long a = 0;
    for (long end : ends) {
        if (end > n || end <= a) throw std::invalid_argument("summarize: bad segment boundary");
        std::vector<double> rs, ds;
        for (long t = std::max(a, aggregate_from); t < end; ++t) {
            if (std::isfinite(record.steps[t].rmse)) rs.push_back(record.steps[t].rmse);
            if (std::isfinite(record.steps[t].d_w)) ds.push_back(record.steps[t].d_w);
        }
        ModeStats ms;
        ms.avg_rmse = mean_of(rs);
        ms.avg_dw = mean_of(ds);
        row.per_mode.push_back(ms);
        seg_rmse.push_back(ms.avg_rmse);
        seg_dw.push_back(ms.avg_dw);
        a = end;
    }
    row.rmse_mean = mean_of(seg_rmse);
    row.dw_mean = mean_of(seg_dw);
    row.rmse_std = seg_rmse.size() > 1 ? stddev(seg_rmse) : 0.0;
    row.dw_std = seg_dw.size() > 1 ? stddev(seg_dw) : 0.0;
    return row;
}

Comparison compare_models(const TimeSeries& series, const std::vector<ModelSpec>& specs,
                          const std::vector<long>& boundaries, std::uint64_t seed) {
    if (specs.empty()) throw std::invalid_argument("compare_models: no models");

    std::vector<RunRecord> records;
    records.reserve(specs.size());
    for (const auto& spec : specs) records.push_back(run_model(series, spec, seed));

    // Each model is scored over every step where its rolling losses are defined.
    Comparison cmp;
    for (std::size_t r = 0; r < specs.size(); ++r)
        cmp.rows.push_back(summarize_record(records[r], boundaries, 0, specs[r].name()));
    return cmp;
}

}  // namespace spikecast
