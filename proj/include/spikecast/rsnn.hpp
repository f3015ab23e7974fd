#pragma once

#include <cstdint>
#include <vector>

#include "spikecast/centrality.hpp"
#include "spikecast/codec.hpp"
#include "spikecast/series.hpp"

namespace spikecast {

struct LifParams {
    double tau_m = 20.0;     // steps
    double v_rest = -65.0;   // mV
    double v_th = -55.0;     // mV
    double v_reset = -70.0;  // mV
    int refractory = 2;      // steps

    void validate() const;
};

struct StdpParams {
    double eta_plus = 0.01;
    double eta_minus = 0.01;
    double tau_plus = 20.0;   // steps
    double tau_minus = 20.0;  // steps
    double w_min = 0.0;
    double w_max = 1.0;

    void validate() const;
};

struct Synapse {
    std::uint32_t pre;
    std::uint32_t post;
    double weight;  // magnitude in [w_min, w_max]; sign applied by polarity
    bool plastic;
};

/// Static synapse structure. Weights change under STDP; edges do not.
struct Topology {
    int n_neurons = 0;
    int n_excitatory = 0;
    double connectivity_p = 0.0;
    std::vector<Synapse> synapses;

    // CSR-style views built by finalize(): synapse indices grouped by pre
    // neuron and by post neuron.
    std::vector<std::uint32_t> out_begin, out_syn;
    std::vector<std::uint32_t> in_begin, in_syn;

    bool is_excitatory(int i) const { return i < n_excitatory; }
    void finalize();
    Digraph as_digraph() const;
};

// Erdos-Renyi digraph at probability p; ceil(4n/5) excitatory neurons first;
// initial weights uniform in the middle 40% of [w_min, w_max]; synapses from
// inhibitory neurons are non-plastic.
Topology build_topology(int n, double p, std::uint64_t seed, const StdpParams& stdp = {});

struct RsnnState {
    std::vector<double> v;
    std::vector<int> refractory_left;
    std::vector<double> pre_trace, post_trace;
    std::vector<std::uint8_t> last_spikes;  // spikes emitted on the previous step
    std::uint64_t step = 0;
    bool plastic = true;
};

/// Discrete-time simulation: one step per input sample, exponential-Euler
/// membrane update, pair-based STDP via nearest-neighbor eligibility traces.
class Rsnn {
public:
    Rsnn(Topology topology, LifParams lif, StdpParams stdp, double syn_scale = 1.0);

    // Advances one step. input_current[i] is added to neuron i's membrane
    // after leak; recurrent currents come from last step's spikes.
    const std::vector<std::uint8_t>& step(const std::vector<double>& input_current);

    void freeze_plasticity() { state_.plastic = false; }
    void resume_plasticity() { state_.plastic = true; }

    const Topology& topology() const { return topology_; }
    const RsnnState& state() const { return state_; }
    const LifParams& lif() const { return lif_; }

private:
    Topology topology_;
    LifParams lif_;
    StdpParams stdp_;
    double syn_scale_;
    RsnnState state_;
    double decay_m_, decay_plus_, decay_minus_;
    std::vector<double> recurrent_current_;
};

/// Fixed fan-out from encoder channels into excitatory neurons.
struct InputMap {
    std::vector<std::vector<int>> targets;  // per channel
    double weight = 8.0;

    // Each channel is wired to a random `fraction` of the excitatory neurons.
    static InputMap random(int channels, const Topology& topo, double fraction,
                           std::uint64_t seed, double weight);

    // Accumulates input currents for one step given spiking channels.
    void inject(const std::vector<int>& spiking_channels, std::vector<double>& current) const;
};

struct RsnnRunResult {
    MultiSeries membrane;  // one channel per recorded neuron
    SpikeRaster spikes;    // all neurons
};

// Drives an encoded raster through the network, recording the requested
// neurons' membrane potentials every step.
RsnnRunResult run(Rsnn& net, const SpikeRaster& input, const InputMap& input_map,
                  const std::vector<int>& record);

}  // namespace spikecast
