#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spikecast/config.hpp"
#include "spikecast/pipeline.hpp"
#include "spikecast/series.hpp"

namespace spikecast {

// Materializes the configured dataset: the evolving Lorenz series with its
// mode boundaries, or a CSV file as a single segment.
std::pair<TimeSeries, std::vector<long>> make_dataset(const DatasetSpec& dataset,
                                                      std::uint64_t seed);

struct ExperimentResult {
    RunRecord record;
    ComparisonRow summary;
    std::vector<long> boundaries;
};

// Runs the configured model and writes record.csv, summary.json, and
// manifest.json into the output directory.
ExperimentResult run_experiment(const RunConfig& config);

// Runs several model kinds on the identical dataset and seed. Network and AR
// parameters come from the config; each kind keeps its own default loss
// threshold unless it is the configured kind.
Comparison run_compare(const RunConfig& config, const std::vector<ModelKind>& kinds);

struct TableRow {
    std::string model;
    double amplitude = 0.0;
    double period = 0.0;  // 0 when no trend applies
    double rmse_mean = 0.0, rmse_std = 0.0;
    double dw_mean = 0.0, dw_std = 0.0;
};

// Trend-modulation grid: amplitude 0 once, then every (amplitude, period)
// pair, for each model kind. Cells are mean +/- std across modes.
std::vector<TableRow> trend_table(const RunConfig& base, const std::vector<ModelKind>& kinds,
                                  const std::vector<double>& amplitudes,
                                  const std::vector<double>& periods);

std::string comparison_csv(const Comparison& comparison);
std::string per_mode_csv(const Comparison& comparison);
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace spikecast
