#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spikecast/config.hpp"
#include "spikecast/experiment.hpp"
#include "spikecast/io.hpp"

namespace {

using namespace spikecast;

struct CommonArgs {
    std::string config_path;
    std::string dataset;
    std::string model;
    std::string out;
    std::uint64_t seed = 0;
    int neurons = 0;
    int window = 0;
    double threshold = 0.0;
    bool has_seed = false, has_neurons = false, has_window = false, has_threshold = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--dataset", args.dataset, "lorenz or csv:<path>");
    cmd->add_option("--model", args.model, "wass|rmse|ar|naive");
    cmd->add_option("--seed", args.seed, "run seed")->each([&](const std::string&) {
        args.has_seed = true;
    });
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--neurons", args.neurons, "recurrent layer size")
        ->each([&](const std::string&) { args.has_neurons = true; });
    cmd->add_option("--window", args.window, "rolling loss window")
        ->each([&](const std::string&) { args.has_window = true; });
    cmd->add_option("--threshold", args.threshold, "re-fit loss threshold")
        ->each([&](const std::string&) { args.has_threshold = true; });
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Config file first, flags on top.
RunConfig resolve(const CommonArgs& args) {
    RunConfig config = args.config_path.empty() ? RunConfig{} : parse_config(slurp(args.config_path));

    if (!args.dataset.empty()) {
        if (args.dataset == "lorenz") {
            config.dataset.kind = DatasetSpec::Kind::lorenz;
        } else if (args.dataset.rfind("csv:", 0) == 0) {
            config.dataset.kind = DatasetSpec::Kind::csv;
            config.dataset.path = args.dataset.substr(4);
        } else {
            throw std::runtime_error("--dataset must be lorenz or csv:<path>");
        }
    }
    if (!args.model.empty()) {
        // Rebuild the model spec around the requested kind, keeping the
        // network and AR parameters already configured.
        RunConfig overlay = parse_config("{\"model\":{\"kind\":\"" + args.model + "\"}}");
        overlay.model.clursnn = config.model.clursnn;
        overlay.model.ar_order = config.model.ar_order;
        overlay.model.ar_lr = config.model.ar_lr;
        overlay.model.loss.window = config.model.loss.window;
        config.model = overlay.model;
    }
    if (args.has_seed) config.seed = args.seed;
    if (!args.out.empty()) config.out = args.out;
    if (args.has_neurons) config.model.clursnn.neurons = args.neurons;
    if (args.has_window) config.model.loss.window = args.window;
    if (args.has_threshold) config.model.loss.threshold = args.threshold;
    config.validate();
    return config;
}

std::vector<ModelKind> parse_kinds(const std::string& csv) {
    std::vector<ModelKind> kinds;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "wass") kinds.push_back(ModelKind::wass);
        else if (tok == "rmse") kinds.push_back(ModelKind::rmse);
        else if (tok == "ar") kinds.push_back(ModelKind::ar);
        else if (tok == "naive") kinds.push_back(ModelKind::naive);
        else throw std::runtime_error("unknown model '" + tok + "'");
    }
    if (kinds.empty()) throw std::runtime_error("no models given");
    return kinds;
}

int cmd_generate(const CommonArgs& args) {
    const auto config = resolve(args);
    auto [series, boundaries] = make_dataset(config.dataset, config.seed);
    std::filesystem::create_directories(config.out);
    const auto path = config.out + "/series.csv";
    save_series_csv(path, series);
    std::cout << path << ": " << series.size() << " steps";
    if (boundaries.size() > 1) {
        std::cout << ", segment ends";
        for (long b : boundaries) std::cout << ' ' << b;
    }
    std::cout << '\n';
    return 0;
}

int cmd_run(const CommonArgs& args) {
    const auto config = resolve(args);
    const auto result = run_experiment(config);
    std::cout << "model " << config.model.name() << "  avg_rmse " << format_double(result.summary.rmse_mean)
              << " +/- " << format_double(result.summary.rmse_std) << "  avg_dw "
              << format_double(result.summary.dw_mean) << " +/- "
              << format_double(result.summary.dw_std) << "  refits "
              << result.record.refit_steps.size() << '\n';
    std::cout << "wrote " << config.out << "/record.csv, summary.json, manifest.json\n";
    return 0;
}

int cmd_compare(const CommonArgs& args, const std::string& models) {
    const auto config = resolve(args);
    const auto cmp = run_compare(config, parse_kinds(models));
    std::filesystem::create_directories(config.out);
    const auto csv = comparison_csv(cmp);
    std::ofstream(config.out + "/compare.csv", std::ios::binary) << csv;
    std::ofstream(config.out + "/per_mode.csv", std::ios::binary) << per_mode_csv(cmp);
    std::cout << csv;
    return 0;
}

int cmd_table1(const CommonArgs& args, const std::string& models,
               std::vector<double> amplitudes, std::vector<double> periods) {
    const auto config = resolve(args);
    if (amplitudes.empty()) amplitudes = {0.0, 3.0, 5.0};
    if (periods.empty()) periods = {100.0, 300.0, 500.0};
    const auto rows = trend_table(config, parse_kinds(models), amplitudes, periods);
    std::filesystem::create_directories(config.out);
    const auto csv = table_csv(rows);
    std::ofstream(config.out + "/table1.csv", std::ios::binary) << csv;
    std::cout << csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online unsupervised time-series prediction with a spiking reservoir"};
    app.require_subcommand(1);

    CommonArgs gen_args, run_args, cmp_args, tab_args;
    std::string cmp_models = "wass,rmse,ar,naive";
    std::string tab_models = "wass,rmse,ar,naive";
    std::vector<double> amplitudes, periods;

    auto* gen = app.add_subcommand("generate", "Write the configured dataset as CSV");
    add_common(gen, gen_args);
    auto* run = app.add_subcommand("run", "Run one model online and write records");
    add_common(run, run_args);
    auto* cmp = app.add_subcommand("compare", "Run several models on the identical series");
    add_common(cmp, cmp_args);
    cmp->add_option("--models", cmp_models, "comma-separated model kinds");
    auto* tab = app.add_subcommand("table1", "Trend-modulation grid of avg losses");
    add_common(tab, tab_args);
    tab->add_option("--models", tab_models, "comma-separated model kinds");
    tab->add_option("--amplitudes", amplitudes, "trend amplitudes (0 = no trend)");
    tab->add_option("--periods", periods, "trend periods in steps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(gen_args);
        if (run->parsed()) return cmd_run(run_args);
        if (cmp->parsed()) return cmd_compare(cmp_args, cmp_models);
        if (tab->parsed()) return cmd_table1(tab_args, tab_models, amplitudes, periods);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
