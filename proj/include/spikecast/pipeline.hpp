#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spikecast/codec.hpp"
#include "spikecast/rde.hpp"
#include "spikecast/rsnn.hpp"
#include "spikecast/series.hpp"
#include "spikecast/tda.hpp"

namespace spikecast {

enum class LossKind { rmse, wasserstein };

struct LossSpec {
    LossKind kind = LossKind::wasserstein;
    int window = 30;
    double threshold = 0.3;

    void validate() const;
    static LossSpec rmse_default() { return {LossKind::rmse, 30, 0.5}; }
    static LossSpec wasserstein_default() { return {LossKind::wasserstein, 30, 0.3}; }
};

// RMSE over a pair of aligned windows.
double rolling_rmse(const std::vector<double>& observed, const std::vector<double>& predicted);

struct StepRecord {
    long t = 0;
    double observed = 0.0;   // raw units
    double predicted = 0.0;  // raw units; NaN when no prediction exists yet
    double rmse = 0.0;       // rolling, normalized units; NaN until window filled
    double d_w = 0.0;        // rolling, normalized units; NaN until window filled
    bool refit = false;
};

struct RunRecord {
    std::vector<StepRecord> steps;
    int warmup = 0;       // first step whose prediction comes from a fitted model
    std::vector<double> scale;  // causal sigma estimate per step (raw units)
    std::vector<long> refit_steps;
    std::vector<long> convergence;  // per-mode steps, filled when a schedule is known
};

enum class DecodeKind { membrane, spikes };

struct ClursnnConfig {
    int neurons = 500;
    double connectivity = 0.2;
    EncoderConfig encoder{};
    DecoderConfig decoder{};
    LifParams lif{};
    StdpParams stdp{};
    double input_fraction = 0.05;  // excitatory fan-in per encoder channel
    double input_weight = 12.0;    // mV per input spike
    double syn_scale = 0.5;        // mV per unit recurrent weight
    DecodeKind decode = DecodeKind::membrane;  // read-out signal for the RDE
    int readout = 0;               // recorded neurons; 0 = max(10, neurons/50)
    int centrality_sources = 0;    // 0 = exact betweenness
    bool random_readout = false;   // ablation: random read-out set instead of top-k
    int buffer = 200;              // trailing re-fit buffer B
    int target_lags = 8;           // lagged target copies appended to the observations
    RdeConfig rde{};
    TdaConfig tda{};

    int readout_count() const;
    void validate() const;
};

struct ConvergenceSpec {
    double epsilon = 0.1;
    std::vector<long> boundaries;  // cumulative segment ends; empty = one segment
};

// The online loop: encode -> RSNN step (plasticity on) -> decode sampled
// neurons -> RDE prediction -> rolling losses -> threshold-triggered re-fit.
RunRecord run_online(const TimeSeries& series, const ClursnnConfig& cfg, const LossSpec& loss,
                     std::uint64_t seed);

// Per segment, the smallest N with |observed - predicted| < epsilon
// (normalized units) from N to the segment end; segment length if never.
std::vector<long> convergence_steps(const RunRecord& record, const ConvergenceSpec& spec);

enum class ModelKind { wass, rmse, ar, naive };

struct ModelSpec {
    ModelKind kind = ModelKind::wass;
    ClursnnConfig clursnn{};
    LossSpec loss = LossSpec::wasserstein_default();
    int ar_order = 8;
    double ar_lr = 0.01;

    static ModelSpec make(ModelKind kind);
    std::string name() const;
};

// Dispatches to run_online for the network variants or to the baseline loop.
RunRecord run_model(const TimeSeries& series, const ModelSpec& spec, std::uint64_t seed);

struct ModeStats {
    double avg_rmse = 0.0;
    double avg_dw = 0.0;
};

struct ComparisonRow {
    std::string model;
    std::vector<ModeStats> per_mode;
    double rmse_mean = 0.0, rmse_std = 0.0;
    double dw_mean = 0.0, dw_std = 0.0;
    long refits = 0;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
};

// Per-mode averages of the rolling loss columns over steps >= aggregate_from,
// with mean +/- std across modes.
ComparisonRow summarize_record(const RunRecord& record, const std::vector<long>& boundaries,
                               long aggregate_from, const std::string& name);

// Runs every model on the identical series and seed; per-mode averages of the
// rolling losses with mean +/- std across modes.
Comparison compare_models(const TimeSeries& series, const std::vector<ModelSpec>& specs,
                          const std::vector<long>& boundaries, std::uint64_t seed);

}  // namespace spikecast
