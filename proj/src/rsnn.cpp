#include "spikecast/rsnn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace spikecast {

void LifParams::validate() const {
    if (!(tau_m > 0.0)) throw std::invalid_argument("lif: tau_m must be positive");
    if (!(v_th > v_rest)) throw std::invalid_argument("lif: v_th must exceed v_rest");
    if (v_reset > v_th) throw std::invalid_argument("lif: v_reset must not exceed v_th");
    if (refractory < 0) throw std::invalid_argument("lif: refractory must be non-negative");
}

void StdpParams::validate() const {
    if (!(eta_plus >= 0.0) || !(eta_minus >= 0.0))
        throw std::invalid_argument("stdp: learning rates must be non-negative");
    if (!(tau_plus > 0.0) || !(tau_minus > 0.0))
        throw std::invalid_argument("stdp: time constants must be positive");
    if (!(w_max > w_min)) throw std::invalid_argument("stdp: w_max must exceed w_min");
}

void Topology::finalize() {
    out_begin.assign(n_neurons + 1, 0);
    in_begin.assign(n_neurons + 1, 0);
    for (const auto& s : synapses) {
        ++out_begin[s.pre + 1];
        ++in_begin[s.post + 1];
    }
    for (int i = 0; i < n_neurons; ++i) {
        out_begin[i + 1] += out_begin[i];
        in_begin[i + 1] += in_begin[i];
    }
    out_syn.resize(synapses.size());
    in_syn.resize(synapses.size());
    auto out_fill = out_begin;
    auto in_fill = in_begin;
    for (std::uint32_t k = 0; k < synapses.size(); ++k) {
        out_syn[out_fill[synapses[k].pre]++] = k;
        in_syn[in_fill[synapses[k].post]++] = k;
    }
}

Digraph Topology::as_digraph() const {
    Digraph g;
    g.n = n_neurons;
    g.adj.assign(n_neurons, {});
    for (const auto& s : synapses) g.adj[s.pre].push_back(static_cast<int>(s.post));
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

Topology build_topology(int n, double p, std::uint64_t seed, const StdpParams& stdp) {
    if (n < 5) throw std::invalid_argument("topology: need at least 5 neurons");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("topology: p must be in (0, 1]");
    stdp.validate();

    Topology topo;
    topo.n_neurons = n;
    topo.n_excitatory = static_cast<int>((4 * static_cast<long long>(n) + 4) / 5);
    topo.connectivity_p = p;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double span = stdp.w_max - stdp.w_min;
    std::uniform_real_distribution<double> w0(stdp.w_min + 0.3 * span, stdp.w_min + 0.7 * span);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (coin(rng) >= p) continue;
            Synapse s;
            s.pre = static_cast<std::uint32_t>(i);
            s.post = static_cast<std::uint32_t>(j);
            s.weight = w0(rng);
            s.plastic = topo.is_excitatory(i);
            topo.synapses.push_back(s);
        }
    }
    topo.finalize();
    return topo;
}

Rsnn::Rsnn(Topology topology, LifParams lif, StdpParams stdp, double syn_scale)
    : topology_(std::move(topology)), lif_(lif), stdp_(stdp), syn_scale_(syn_scale) {
    lif_.validate();
    stdp_.validate();
    if (!(syn_scale_ > 0.0)) throw std::invalid_argument("rsnn: syn_scale must be positive");
    if (topology_.out_begin.empty()) topology_.finalize();

    const int n = topology_.n_neurons;
    state_.v.assign(n, lif_.v_rest);
    state_.refractory_left.assign(n, 0);
    state_.pre_trace.assign(n, 0.0);
    state_.post_trace.assign(n, 0.0);
    state_.last_spikes.assign(n, 0);
    decay_m_ = std::exp(-1.0 / lif_.tau_m);
    decay_plus_ = std::exp(-1.0 / stdp_.tau_plus);
    decay_minus_ = std::exp(-1.0 / stdp_.tau_minus);
    recurrent_current_.assign(n, 0.0);
}

const std::vector<std::uint8_t>& Rsnn::step(const std::vector<double>& input_current) {
    const int n = topology_.n_neurons;
    if (static_cast<int>(input_current.size()) != n)
        throw std::invalid_argument("rsnn: input current size mismatch");

    // Recurrent currents from last step's spikes (one-step synaptic delay).
    std::fill(recurrent_current_.begin(), recurrent_current_.end(), 0.0);
    for (int i = 0; i < n; ++i) {
        if (!state_.last_spikes[i]) continue;
        const double sign = topology_.is_excitatory(i) ? 1.0 : -1.0;
        for (std::uint32_t k = topology_.out_begin[i]; k < topology_.out_begin[i + 1]; ++k) {
            const auto& s = topology_.synapses[topology_.out_syn[k]];
            recurrent_current_[s.post] += sign * syn_scale_ * s.weight;
        }
    }

    // Traces decay before this step's spikes are folded in.
    for (int i = 0; i < n; ++i) {
        state_.pre_trace[i] *= decay_plus_;
        state_.post_trace[i] *= decay_minus_;
    }

    std::vector<std::uint8_t> spikes(n, 0);
    for (int i = 0; i < n; ++i) {
        if (state_.refractory_left[i] > 0) {
            --state_.refractory_left[i];
            state_.v[i] = lif_.v_reset;
            continue;
        }
        double v = lif_.v_rest + (state_.v[i] - lif_.v_rest) * decay_m_;
        v += recurrent_current_[i] + input_current[i];
        if (v >= lif_.v_th) {
            spikes[i] = 1;
            v = lif_.v_reset;
            state_.refractory_left[i] = lif_.refractory;
        }
        state_.v[i] = v;
    }

    if (state_.plastic) {
        // Potentiation: post fired now, credit incoming plastic synapses by the
        // pre trace. A pre spike on the same step counts with trace 1 (dt = 0).
        for (int post = 0; post < n; ++post) {
            if (!spikes[post]) continue;
            for (std::uint32_t k = topology_.in_begin[post]; k < topology_.in_begin[post + 1]; ++k) {
                auto& s = topology_.synapses[topology_.in_syn[k]];
                if (!s.plastic) continue;
                const double trace = spikes[s.pre] ? 1.0 : state_.pre_trace[s.pre];
                if (trace <= 0.0) continue;
                s.weight += stdp_.eta_plus * (stdp_.w_max - s.weight) * trace;
                s.weight = std::min(s.weight, stdp_.w_max);
            }
        }
        // Depression: pre fired now after an earlier post spike. Simultaneous
        // post spikes were handled above as dt = 0 potentiation.
        for (int pre = 0; pre < n; ++pre) {
            if (!spikes[pre]) continue;
            for (std::uint32_t k = topology_.out_begin[pre]; k < topology_.out_begin[pre + 1]; ++k) {
                auto& s = topology_.synapses[topology_.out_syn[k]];
                if (!s.plastic || spikes[s.post]) continue;
                const double trace = state_.post_trace[s.post];
                if (trace <= 0.0) continue;
                s.weight -= stdp_.eta_minus * (s.weight - stdp_.w_min) * trace;
                s.weight = std::max(s.weight, stdp_.w_min);
            }
        }
    }

    // Nearest-neighbor traces: a spike resets its neuron's traces to 1.
    for (int i = 0; i < n; ++i) {
        if (spikes[i]) {
            state_.pre_trace[i] = 1.0;
            state_.post_trace[i] = 1.0;
        }
    }

    state_.last_spikes = std::move(spikes);
    ++state_.step;
    return state_.last_spikes;
}

InputMap InputMap::random(int channels, const Topology& topo, double fraction,
                          std::uint64_t seed, double weight) {
    if (channels < 1) throw std::invalid_argument("input map: need at least one channel");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("input map: fraction must be in (0, 1]");
    const int n_exc = topo.n_excitatory;
    int fan_out = static_cast<int>(std::ceil(fraction * n_exc));
    fan_out = std::min(fan_out, n_exc);
    if (fan_out < 1) throw std::invalid_argument("input map: empty fan-out");

    std::mt19937_64 rng(seed);
    std::vector<int> ids(n_exc);
    for (int i = 0; i < n_exc; ++i) ids[i] = i;

    InputMap map;
    map.weight = weight;
    map.targets.resize(channels);
    for (int c = 0; c < channels; ++c) {
        std::shuffle(ids.begin(), ids.end(), rng);
        map.targets[c].assign(ids.begin(), ids.begin() + fan_out);
        std::sort(map.targets[c].begin(), map.targets[c].end());
    }
    return map;
}

void InputMap::inject(const std::vector<int>& spiking_channels, std::vector<double>& current) const {
    for (int c : spiking_channels) {
        if (c < 0 || c >= static_cast<int>(targets.size()))
            throw std::out_of_range("input map: channel out of range");
        for (int t : targets[c]) current[t] += weight;
    }
}

RsnnRunResult run(Rsnn& net, const SpikeRaster& input, const InputMap& input_map,
                  const std::vector<int>& record) {
    input.validate();
    if (input.channels != static_cast<int>(input_map.targets.size()))
        throw std::invalid_argument("rsnn run: raster channels do not match input map");
    const int n = net.topology().n_neurons;
    for (int id : record)
        if (id < 0 || id >= n) throw std::out_of_range("rsnn run: recorded neuron out of range");

    RsnnRunResult out;
    out.membrane.channels.assign(record.size(), {});
    for (auto& ch : out.membrane.channels) ch.reserve(input.horizon);
    out.spikes.channels = n;
    out.spikes.horizon = input.horizon;
    out.spikes.events.assign(n, {});

    // Events per step, replayed in order.
    const int horizon = static_cast<int>(input.horizon);
    std::vector<std::vector<int>> by_step(horizon);
    for (int c = 0; c < input.channels; ++c)
        for (auto s : input.events[c]) by_step[s].push_back(c);

    std::vector<double> current(n, 0.0);
    for (int t = 0; t < horizon; ++t) {
        std::fill(current.begin(), current.end(), 0.0);
        input_map.inject(by_step[t], current);
        const auto& spikes = net.step(current);
        for (std::size_t r = 0; r < record.size(); ++r)
            out.membrane.channels[r].push_back(net.state().v[record[r]]);
        for (int i = 0; i < n; ++i)
            if (spikes[i]) out.spikes.events[i].push_back(t);
    }
    return out;
}

}  // namespace spikecast
