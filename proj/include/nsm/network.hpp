#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsm/dynamics.hpp"

namespace nsm {

struct topology_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NeuronModel { AdEx, LIF };
enum class PopulationRole { State, WtaInh, Gate, GateInh, InputEncoder };

std::string to_string(PopulationRole r);

struct PopulationSpec {
    std::string id;
    int size = 0;
    NeuronModel model = NeuronModel::AdEx;
    PopulationRole role = PopulationRole::State;
    AdExParams adex;          // used when model == AdEx
    LIFParams lif;            // used when model == LIF
    double bias_current = 0;  // constant injected current per neuron [A]
    int state_index = -1;     // for State/Gate/GateInh/InputEncoder roles
};

struct ProjectionSpec {
    std::string label;        // connection-class name, e.g. "wta.state_state"
    std::string src;
    std::string dst;
    SynapseKind kind = SynapseKind::FastExc;
    double probability = 0.0;
    double weight = 0.0;      // per-spike current increment [A]
    double tau = 0.0;         // 0 picks the kind's default
};

struct NetworkSpec {
    std::vector<PopulationSpec> populations;
    std::vector<ProjectionSpec> projections;
    std::uint64_t seed = 0;

    int population_index(const std::string& id) const;  // -1 if absent
    const PopulationSpec& population(const std::string& id) const;
    int total_neurons() const;
    void validate() const;
};

struct Edge {
    int src = 0;  // neuron index within source population
    int dst = 0;  // neuron index within destination population
};

struct ConnectivityMatrix {
    // edges[i] belongs to spec.projections[i]
    std::vector<std::vector<Edge>> edges;
};

// Per-spike current weights for every connection class of the state machine,
// plus the stimulation/priming knobs that live alongside them. Defaults are
// the shipped calibration: every population settles near 50 Hz when active.
// The recurrent weights are strong enough that an ignited attractor
// self-sustains against the refractory rate cap, and inh_state is sized so
// that with two state populations active the shared inhibitor silences the
// weaker one (winner-take-all) while a lone winner survives it.
struct WeightTable {
    // WTA core
    double state_state = 18e-12;    // NMDA, recurrent
    double state_inh = 8e-12;       // NMDA
    double inh_state = 22e-12;      // GABA_B
    double inh_inh = 4e-12;         // GABA_B

    // Gating attractors
    double gate_gate = 24e-12;      // NMDA, recurrent
    double gate_inh = 20e-12;       // NMDA
    double inh_gate = 10e-12;       // GABA_B
    double ginh_ginh = 4e-12;       // GABA_B

    // Monotonic wiring
    double gate_state = 45e-12;     // GABA_B, gate silences its state
    double state_gate_gaba = 20e-12;// GABA_B, dis-inhibition of the next state
    double state_gate_ampa = 800e-12;// AMPA, re-arming of other gates

    // Input
    double encoder_state = 4000e-12;// AMPA, encoder fan-out
    double stimulus = 4000e-12;     // AMPA, external spike drive
};

// Operating point of the state-machine AdEx populations. The long refractory
// period caps attractor rates a little above the 50 Hz target, so ignited
// populations saturate there instead of running away; the chip analogue is a
// tunable refractory bias.
inline AdExParams nsm_core_adex() {
    AdExParams p;
    p.t_ref = 15e-3;
    return p;
}

struct TopologyOptions {
    bool wta_only = false;           // drop gates and monotonic wiring
    bool shared_gate_inhibitor = false;  // one GateInh shared by all gates
    int encoder_size = 1;            // LIF neurons per input channel
    bool adex_encoders = false;
    AdExParams adex = nsm_core_adex();  // neuron params for AdEx populations
    LIFParams encoder_lif;
};

// Builds the monotonic state machine: n_states WTA attractors with a shared
// inhibitor, per-state gate/gate-inhibitor pairs for states 1.., monotonic
// dis-inhibition wiring, and one input encoder per state. State 0 is gateless
// and acts as the reset state.
NetworkSpec build_nsm_topology(int n_states, int pop_size,
                               const WeightTable& w = {},
                               const TopologyOptions& opt = {});

// Independent Bernoulli sampling per ordered neuron pair; recurrent
// projections never create autapses. Deterministic for a fixed spec seed.
ConnectivityMatrix sample_connectivity(const NetworkSpec& spec);

// Per-neuron fan-in over all projections; the reference substrate caps this
// at 64. Returns ids of populations containing a neuron above the cap.
std::vector<std::string> fan_in_warnings(const NetworkSpec& spec,
                                         const ConnectivityMatrix& conn,
                                         int cap = 64);

}  // namespace nsm
