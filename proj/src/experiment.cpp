#include "spikecast/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "spikecast/io.hpp"

namespace spikecast {

using nlohmann::json;

std::pair<TimeSeries, std::vector<long>> make_dataset(const DatasetSpec& dataset,
                                                      std::uint64_t seed) {
    dataset.validate();
    if (dataset.kind == DatasetSpec::Kind::lorenz) {
        const auto schedule = dataset.schedule();
        auto series = generate_evolving(schedule, dataset.h, seed);
        if (dataset.trend.amplitude != 0.0) series = apply_trend(series, dataset.trend);
        std::vector<long> ends;
        for (auto b : schedule.boundaries()) ends.push_back(static_cast<long>(b));
        return {std::move(series), std::move(ends)};
    }
    auto series = load_series_csv(dataset.path, dataset.value_column);
    const long n = static_cast<long>(series.size());
    return {std::move(series), {n}};
}

namespace {

json stats_json(const ComparisonRow& row, bool rmse) {
    json per_mode = json::array();
    for (const auto& ms : row.per_mode) per_mode.push_back(rmse ? ms.avg_rmse : ms.avg_dw);
    return {{"per_mode", per_mode},
            {"mean", rmse ? row.rmse_mean : row.dw_mean},
            {"std", rmse ? row.rmse_std : row.dw_std}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
    config.validate();
    auto [series, boundaries] = make_dataset(config.dataset, config.seed);

    ExperimentResult result;
    result.boundaries = boundaries;
    result.record = run_model(series, config.model, config.seed);
    result.record.convergence =
        convergence_steps(result.record, ConvergenceSpec{config.epsilon, boundaries});
    result.summary = summarize_record(result.record, boundaries, result.record.warmup,
                                      config.model.name());

    std::filesystem::create_directories(config.out);
    save_record_csv(config.out + "/record.csv", result.record);
    write_text(config.out + "/manifest.json", emit_config(config));

    json refit_steps = json::array();
    for (long t : result.record.refit_steps) refit_steps.push_back(t);
    json convergence = json::array();
    for (long c : result.record.convergence) convergence.push_back(c);
    json bounds = json::array();
    for (long b : boundaries) bounds.push_back(b);
    const json summary{{"model", config.model.name()},
                       {"seed", config.seed},
                       {"warmup", result.record.warmup},
                       {"refits", result.record.refit_steps.size()},
                       {"refit_steps", refit_steps},
                       {"boundaries", bounds},
                       {"epsilon", config.epsilon},
                       {"convergence_steps", convergence},
                       {"avg_rmse", stats_json(result.summary, true)},
                       {"avg_dw", stats_json(result.summary, false)}};
    write_text(config.out + "/summary.json", summary.dump(2) + "\n");
    return result;
}

Comparison run_compare(const RunConfig& config, const std::vector<ModelKind>& kinds) {
    config.validate();
    auto [series, boundaries] = make_dataset(config.dataset, config.seed);

    std::vector<ModelSpec> specs;
    for (ModelKind kind : kinds) {
        ModelSpec spec = ModelSpec::make(kind);
        spec.clursnn = config.model.clursnn;
        spec.ar_order = config.model.ar_order;
        spec.ar_lr = config.model.ar_lr;
        spec.loss.window = config.model.loss.window;
        if (kind == config.model.kind) spec.loss.threshold = config.model.loss.threshold;
        specs.push_back(spec);
    }
    return compare_models(series, specs, boundaries, config.seed);
}

std::vector<TableRow> trend_table(const RunConfig& base, const std::vector<ModelKind>& kinds,
                                  const std::vector<double>& amplitudes,
                                  const std::vector<double>& periods) {
    if (base.dataset.kind != DatasetSpec::Kind::lorenz)
        throw std::invalid_argument("trend table: requires the synthetic dataset");

    std::vector<std::pair<double, double>> cells;
    for (double a : amplitudes) {
        if (a == 0.0) {
            cells.emplace_back(0.0, 0.0);
            continue;
        }
        for (double t : periods) cells.emplace_back(a, t);
    }

    std::vector<TableRow> rows;
    for (const auto& [a, t] : cells) {
        RunConfig config = base;
        config.dataset.trend.amplitude = a;
        config.dataset.trend.period = t > 0.0 ? t : 1.0;
        const auto cmp = run_compare(config, kinds);
        for (const auto& row : cmp.rows) {
            TableRow tr;
            tr.model = row.model;
            tr.amplitude = a;
            tr.period = t;
            tr.rmse_mean = row.rmse_mean;
            tr.rmse_std = row.rmse_std;
            tr.dw_mean = row.dw_mean;
            tr.dw_std = row.dw_std;
            rows.push_back(tr);
        }
    }
    return rows;
}

std::string comparison_csv(const Comparison& comparison) {
    std::string out = "model,avg_rmse,rmse_std,avg_dw,dw_std,refits\n";
    for (const auto& row : comparison.rows) {
        out += row.model + ',' + format_double(row.rmse_mean) + ',' + format_double(row.rmse_std) +
               ',' + format_double(row.dw_mean) + ',' + format_double(row.dw_std) + ',' +
               std::to_string(row.refits) + '\n';
    }
    return out;
}

std::string per_mode_csv(const Comparison& comparison) {
    std::string out = "model,mode,avg_rmse,avg_dw\n";
    for (const auto& row : comparison.rows)
        for (std::size_t m = 0; m < row.per_mode.size(); ++m)
            out += row.model + ',' + std::to_string(m) + ',' +
                   format_double(row.per_mode[m].avg_rmse) + ',' +
                   format_double(row.per_mode[m].avg_dw) + '\n';
    return out;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::string out = "model,amplitude,period,avg_rmse,rmse_std,avg_dw,dw_std\n";
    for (const auto& r : rows) {
        out += r.model + ',' + format_double(r.amplitude) + ',' + format_double(r.period) + ',' +
               format_double(r.rmse_mean) + ',' + format_double(r.rmse_std) + ',' +
               format_double(r.dw_mean) + ',' + format_double(r.dw_std) + '\n';
    }
    return out;
}

}  // namespace spikecast
