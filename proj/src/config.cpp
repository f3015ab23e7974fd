#include "spikecast/config.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace spikecast {

using nlohmann::json;

ModeSchedule DatasetSpec::schedule() const {
    ModeSchedule s;
    const auto len = static_cast<std::size_t>(steps_per_mode);
    s.segments = {{lorenz_modes::fixed_point, len},
                  {lorenz_modes::chaos, len},
                  {lorenz_modes::limit_cycle, len},
                  {lorenz_modes::normal, len}};
    return s;
}

void DatasetSpec::validate() const {
    if (steps_per_mode < 1) throw std::invalid_argument("config: dataset.steps_per_mode must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("config: dataset.h must be positive");
    trend.validate();
    if (kind == Kind::csv && path.empty())
        throw std::invalid_argument("config: dataset.path required for csv datasets");
}

void RunConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
    if (out.empty()) throw std::invalid_argument("config: out directory must be set");
    dataset.validate();
    model.loss.validate();
    model.clursnn.validate();
    if (model.ar_order < 1) throw std::invalid_argument("config: ar.order must be >= 1");
    if (!(model.ar_lr >= 0.0)) throw std::invalid_argument("config: ar.lr must be non-negative");
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("config: " + msg); }

std::string join_key(const std::string& scope, const std::string& key) {
    return scope.empty() ? key : scope + "." + key;
}

void expect_object(const json& j, const std::string& scope) {
    if (!j.is_object()) fail("'" + scope + "' must be an object");
}

void check_unknown(const json& obj, const std::string& scope,
                   std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) fail("unknown key '" + join_key(scope, it.key()) + "'");
    }
}

template <typename T>
void read(const json& obj, const std::string& scope, const char* key, T& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        it->get_to(out);
    } catch (const json::exception&) {
        fail("bad value for '" + join_key(scope, key) + "'");
    }
}

ModelKind parse_kind(const std::string& s) {
    if (s == "wass") return ModelKind::wass;
    if (s == "rmse") return ModelKind::rmse;
    if (s == "ar") return ModelKind::ar;
    if (s == "naive") return ModelKind::naive;
    fail("model.kind must be one of wass|rmse|ar|naive, got '" + s + "'");
}

void parse_dataset(const json& j, DatasetSpec& ds) {
    expect_object(j, "dataset");
    check_unknown(j, "dataset",
                  {"kind", "steps_per_mode", "h", "trend_amplitude", "trend_period", "path",
                   "value_column"});
    std::string kind = ds.kind == DatasetSpec::Kind::lorenz ? "lorenz" : "csv";
    read(j, "dataset", "kind", kind);
    if (kind == "lorenz")
        ds.kind = DatasetSpec::Kind::lorenz;
    else if (kind == "csv")
        ds.kind = DatasetSpec::Kind::csv;
    else
        fail("dataset.kind must be lorenz or csv, got '" + kind + "'");
    read(j, "dataset", "steps_per_mode", ds.steps_per_mode);
    read(j, "dataset", "h", ds.h);
    read(j, "dataset", "trend_amplitude", ds.trend.amplitude);
    read(j, "dataset", "trend_period", ds.trend.period);
    read(j, "dataset", "path", ds.path);
    read(j, "dataset", "value_column", ds.value_column);
}

void parse_model(const json& j, ModelSpec& spec) {
    expect_object(j, "model");
    check_unknown(j, "model",
                  {"kind", "loss", "network", "encoder", "decoder", "lif", "stdp", "rde", "tda",
                   "ar"});

    std::string kind = spec.name();
    read(j, "model", "kind", kind);
    const auto network_defaults = spec.clursnn;
    spec = ModelSpec::make(parse_kind(kind));
    spec.clursnn = network_defaults;

    if (auto it = j.find("loss"); it != j.end()) {
        expect_object(*it, "model.loss");
        check_unknown(*it, "model.loss", {"window", "threshold"});
        read(*it, "model.loss", "window", spec.loss.window);
        read(*it, "model.loss", "threshold", spec.loss.threshold);
    }
    if (auto it = j.find("network"); it != j.end()) {
        expect_object(*it, "model.network");
        const std::string s = "model.network";
        check_unknown(*it, s,
                      {"neurons", "connectivity", "input_fraction", "input_weight", "syn_scale",
                       "decode", "readout", "centrality_sources", "random_readout", "buffer",
                       "target_lags"});
        auto& c = spec.clursnn;
        read(*it, s, "neurons", c.neurons);
        read(*it, s, "connectivity", c.connectivity);
        read(*it, s, "input_fraction", c.input_fraction);
        read(*it, s, "input_weight", c.input_weight);
        read(*it, s, "syn_scale", c.syn_scale);
        std::string decode = c.decode == DecodeKind::spikes ? "spikes" : "membrane";
        read(*it, s, "decode", decode);
        if (decode == "membrane")
            c.decode = DecodeKind::membrane;
        else if (decode == "spikes")
            c.decode = DecodeKind::spikes;
        else
            fail("model.network.decode must be membrane or spikes, got '" + decode + "'");
        read(*it, s, "readout", c.readout);
        read(*it, s, "centrality_sources", c.centrality_sources);
        read(*it, s, "random_readout", c.random_readout);
        read(*it, s, "buffer", c.buffer);
        read(*it, s, "target_lags", c.target_lags);
    }
    if (auto it = j.find("encoder"); it != j.end()) {
        expect_object(*it, "model.encoder");
        check_unknown(*it, "model.encoder", {"channels", "sf_threshold", "ratio"});
        read(*it, "model.encoder", "channels", spec.clursnn.encoder.channels);
        read(*it, "model.encoder", "sf_threshold", spec.clursnn.encoder.sf_threshold);
        read(*it, "model.encoder", "ratio", spec.clursnn.encoder.ratio);
    }
    if (auto it = j.find("decoder"); it != j.end()) {
        expect_object(*it, "model.decoder");
        check_unknown(*it, "model.decoder", {"tau", "gamma"});
        read(*it, "model.decoder", "tau", spec.clursnn.decoder.tau);
        read(*it, "model.decoder", "gamma", spec.clursnn.decoder.gamma);
    }
    if (auto it = j.find("lif"); it != j.end()) {
        expect_object(*it, "model.lif");
        check_unknown(*it, "model.lif", {"tau_m", "v_rest", "v_th", "v_reset", "refractory"});
        auto& l = spec.clursnn.lif;
        read(*it, "model.lif", "tau_m", l.tau_m);
        read(*it, "model.lif", "v_rest", l.v_rest);
        read(*it, "model.lif", "v_th", l.v_th);
        read(*it, "model.lif", "v_reset", l.v_reset);
        read(*it, "model.lif", "refractory", l.refractory);
    }
    if (auto it = j.find("stdp"); it != j.end()) {
        expect_object(*it, "model.stdp");
        check_unknown(*it, "model.stdp",
                      {"eta_plus", "eta_minus", "tau_plus", "tau_minus", "w_min", "w_max"});
        auto& st = spec.clursnn.stdp;
        read(*it, "model.stdp", "eta_plus", st.eta_plus);
        read(*it, "model.stdp", "eta_minus", st.eta_minus);
        read(*it, "model.stdp", "tau_plus", st.tau_plus);
        read(*it, "model.stdp", "tau_minus", st.tau_minus);
        read(*it, "model.stdp", "w_min", st.w_min);
        read(*it, "model.stdp", "w_max", st.w_max);
    }
    if (auto it = j.find("rde"); it != j.end()) {
        expect_object(*it, "model.rde");
        check_unknown(*it, "model.rde",
                      {"s", "ensemble", "embed", "delay", "k_nn", "horizon", "trim", "weight_eps"});
        auto& r = spec.clursnn.rde;
        read(*it, "model.rde", "s", r.s);
        read(*it, "model.rde", "ensemble", r.ensemble);
        read(*it, "model.rde", "embed", r.embed);
        read(*it, "model.rde", "delay", r.delay);
        read(*it, "model.rde", "k_nn", r.k_nn);
        read(*it, "model.rde", "horizon", r.horizon);
        read(*it, "model.rde", "trim", r.trim);
        read(*it, "model.rde", "weight_eps", r.weight_eps);
    }
    if (auto it = j.find("tda"); it != j.end()) {
        expect_object(*it, "model.tda");
        check_unknown(*it, "model.tda", {"embed_dim", "delay", "q"});
        read(*it, "model.tda", "embed_dim", spec.clursnn.tda.embed_dim);
        read(*it, "model.tda", "delay", spec.clursnn.tda.delay);
        read(*it, "model.tda", "q", spec.clursnn.tda.q);
    }
    if (auto it = j.find("ar"); it != j.end()) {
        expect_object(*it, "model.ar");
        check_unknown(*it, "model.ar", {"order", "lr"});
        read(*it, "model.ar", "order", spec.ar_order);
        read(*it, "model.ar", "lr", spec.ar_lr);
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;

    std::size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        config.validate();
        return config;  // empty document: all defaults
    }

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    expect_object(j, "<root>");
    check_unknown(j, "", {"seed", "out", "dataset", "model", "epsilon"});

    read(j, "", "seed", config.seed);
    read(j, "", "out", config.out);
    read(j, "", "epsilon", config.epsilon);
    if (auto it = j.find("dataset"); it != j.end()) parse_dataset(*it, config.dataset);
    if (auto it = j.find("model"); it != j.end()) parse_model(*it, config.model);

    config.validate();
    return config;
}

std::string emit_config(const RunConfig& config) {
    const auto& m = config.model;
    const auto& c = m.clursnn;
    json j{
        {"seed", config.seed},
        {"out", config.out},
        {"epsilon", config.epsilon},
        {"dataset",
         {{"kind", config.dataset.kind == DatasetSpec::Kind::lorenz ? "lorenz" : "csv"},
          {"steps_per_mode", config.dataset.steps_per_mode},
          {"h", config.dataset.h},
          {"trend_amplitude", config.dataset.trend.amplitude},
          {"trend_period", config.dataset.trend.period},
          {"path", config.dataset.path},
          {"value_column", config.dataset.value_column}}},
        {"model",
         {{"kind", m.name()},
          {"loss", {{"window", m.loss.window}, {"threshold", m.loss.threshold}}},
          {"network",
           {{"neurons", c.neurons},
            {"connectivity", c.connectivity},
            {"input_fraction", c.input_fraction},
            {"input_weight", c.input_weight},
            {"syn_scale", c.syn_scale},
            {"decode", c.decode == DecodeKind::spikes ? "spikes" : "membrane"},
            {"readout", c.readout},
            {"centrality_sources", c.centrality_sources},
            {"random_readout", c.random_readout},
            {"buffer", c.buffer},
            {"target_lags", c.target_lags}}},
          {"encoder",
           {{"channels", c.encoder.channels},
            {"sf_threshold", c.encoder.sf_threshold},
            {"ratio", c.encoder.ratio}}},
          {"decoder", {{"tau", c.decoder.tau}, {"gamma", c.decoder.gamma}}},
          {"lif",
           {{"tau_m", c.lif.tau_m},
            {"v_rest", c.lif.v_rest},
            {"v_th", c.lif.v_th},
            {"v_reset", c.lif.v_reset},
            {"refractory", c.lif.refractory}}},
          {"stdp",
           {{"eta_plus", c.stdp.eta_plus},
            {"eta_minus", c.stdp.eta_minus},
            {"tau_plus", c.stdp.tau_plus},
            {"tau_minus", c.stdp.tau_minus},
            {"w_min", c.stdp.w_min},
            {"w_max", c.stdp.w_max}}},
          {"rde",
           {{"s", c.rde.s},
            {"ensemble", c.rde.ensemble},
            {"embed", c.rde.embed},
            {"delay", c.rde.delay},
            {"k_nn", c.rde.k_nn},
            {"horizon", c.rde.horizon},
            {"trim", c.rde.trim},
            {"weight_eps", c.rde.weight_eps}}},
          {"tda", {{"embed_dim", c.tda.embed_dim}, {"delay", c.tda.delay}, {"q", c.tda.q}}},
          {"ar", {{"order", m.ar_order}, {"lr", m.ar_lr}}}}},
    };
    return j.dump(2) + "\n";
}

}  // namespace spikecast
