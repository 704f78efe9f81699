#include "nsm/network.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace nsm {

std::string to_string(PopulationRole r) {
    switch (r) {
        case PopulationRole::State: return "STATE";
        case PopulationRole::WtaInh: return "WTA_INH";
        case PopulationRole::Gate: return "GATE";
        case PopulationRole::GateInh: return "GATE_INH";
        case PopulationRole::InputEncoder: return "INPUT_ENCODER";
    }
    return "?";
}

int NetworkSpec::population_index(const std::string& id) const {
    for (size_t i = 0; i < populations.size(); ++i)
        if (populations[i].id == id) return static_cast<int>(i);
    return -1;
}

const PopulationSpec& NetworkSpec::population(const std::string& id) const {
    int i = population_index(id);
    if (i < 0) throw topology_error("unknown population: " + id);
    return populations[i];
}

int NetworkSpec::total_neurons() const {
    int n = 0;
    for (const auto& p : populations) n += p.size;
    return n;
}

void NetworkSpec::validate() const {
    std::set<std::string> ids;
    for (const auto& p : populations) {
        if (p.size < 1) throw topology_error("population " + p.id + " has size < 1");
        if (!ids.insert(p.id).second)
            throw topology_error("duplicate population id: " + p.id);
        if (p.model == NeuronModel::AdEx) p.adex.validate();
        else p.lif.validate();
    }
    for (const auto& pr : projections) {
        if (population_index(pr.src) < 0 || population_index(pr.dst) < 0)
            throw topology_error("projection " + pr.label + " references unknown population");
        if (pr.probability < 0.0 || pr.probability > 1.0)
            throw topology_error("projection " + pr.label + " probability outside [0,1]");
        if (pr.weight < 0.0)
            throw topology_error("projection " + pr.label + " has negative weight");
    }
}

namespace {

ProjectionSpec proj(std::string label, std::string src, std::string dst,
                    SynapseKind kind, double p, double w) {
    ProjectionSpec pr;
    pr.label = std::move(label);
    pr.src = std::move(src);
    pr.dst = std::move(dst);
    pr.kind = kind;
    pr.probability = p;
    pr.weight = w;
    pr.tau = default_synapse_tau(kind);
    return pr;
}

}  // namespace

NetworkSpec build_nsm_topology(int n_states, int pop_size, const WeightTable& w,
                               const TopologyOptions& opt) {
    if (n_states < 2) throw topology_error("build_nsm_topology: need at least 2 states");
    if (pop_size < 1) throw topology_error("build_nsm_topology: pop_size must be >= 1");

    NetworkSpec net;
    auto add_pop = [&](const std::string& id, int size, PopulationRole role,
                       NeuronModel model, int state_index) {
        PopulationSpec p;
        p.id = id;
        p.size = size;
        p.role = role;
        p.model = model;
        p.adex = opt.adex;
        p.lif = opt.encoder_lif;
        p.state_index = state_index;
        net.populations.push_back(p);
    };

    for (int k = 0; k < n_states; ++k)
        add_pop("state" + std::to_string(k), pop_size, PopulationRole::State,
                NeuronModel::AdEx, k);
    add_pop("wta_inh", pop_size, PopulationRole::WtaInh, NeuronModel::AdEx, -1);

    // WTA core (connection classes and probabilities of the reference design).
    for (int k = 0; k < n_states; ++k) {
        std::string st = "state" + std::to_string(k);
        net.projections.push_back(
            proj("wta.state_state", st, st, SynapseKind::SlowExc, 0.83, w.state_state));
        net.projections.push_back(
            proj("wta.state_inh", st, "wta_inh", SynapseKind::SlowExc, 0.60, w.state_inh));
        net.projections.push_back(
            proj("wta.inh_state", "wta_inh", st, SynapseKind::SlowInh, 0.60, w.inh_state));
    }
    net.projections.push_back(
        proj("wta.inh_inh", "wta_inh", "wta_inh", SynapseKind::SlowInh, 0.20, w.inh_inh));

    if (!opt.wta_only) {
        // Gating attractors: one EI pair per state k >= 1; state 0 is the
        // gateless reset state.
        if (opt.shared_gate_inhibitor)
            add_pop("gate_inh", pop_size, PopulationRole::GateInh, NeuronModel::AdEx, -1);
        for (int k = 1; k < n_states; ++k) {
            std::string g = "gate" + std::to_string(k);
            std::string gi = opt.shared_gate_inhibitor ? "gate_inh"
                                                       : "gate_inh" + std::to_string(k);
            add_pop(g, pop_size, PopulationRole::Gate, NeuronModel::AdEx, k);
            if (!opt.shared_gate_inhibitor)
                add_pop(gi, pop_size, PopulationRole::GateInh, NeuronModel::AdEx, k);

            net.projections.push_back(
                proj("gating.gate_gate", g, g, SynapseKind::SlowExc, 0.50, w.gate_gate));
            net.projections.push_back(
                proj("gating.gate_inh", g, gi, SynapseKind::SlowExc, 0.30, w.gate_inh));
            net.projections.push_back(
                proj("gating.inh_gate", gi, g, SynapseKind::SlowInh, 0.30, w.inh_gate));
            net.projections.push_back(
                proj("gating.inh_inh", gi, gi, SynapseKind::SlowInh, 0.50, w.ginh_ginh));
        }

        // Monotonic wiring.
        for (int k = 1; k < n_states; ++k) {
            std::string g = "gate" + std::to_string(k);
            net.projections.push_back(proj("monotonic.gate_state", g,
                                           "state" + std::to_string(k),
                                           SynapseKind::SlowInh, 1.0, w.gate_state));
            // The preceding state dis-inhibits this gate's state.
            net.projections.push_back(proj("monotonic.state_gate_gaba",
                                           "state" + std::to_string(k - 1), g,
                                           SynapseKind::SlowInh, 1.0, w.state_gate_gaba));
        }
        // An active state re-arms the gates of earlier states and of states
        // beyond the next one; never its own gate.
        for (int k = 0; k < n_states; ++k) {
            for (int j = 1; j < n_states; ++j) {
                if (j == k || j == k + 1) continue;  // own gate and the dis-inhibited one
                net.projections.push_back(proj("monotonic.state_gate_ampa",
                                               "state" + std::to_string(k),
                                               "gate" + std::to_string(j),
                                               SynapseKind::FastExc, 1.0,
                                               w.state_gate_ampa));
            }
        }
    }

    // Input encoders, one channel per state.
    for (int k = 0; k < n_states; ++k) {
        add_pop("enc" + std::to_string(k), opt.encoder_size,
                PopulationRole::InputEncoder,
                opt.adex_encoders ? NeuronModel::AdEx : NeuronModel::LIF, k);
        net.projections.push_back(proj("input.lif_state", "enc" + std::to_string(k),
                                       "state" + std::to_string(k),
                                       SynapseKind::FastExc, 1.0, w.encoder_state));
    }

    net.validate();
    return net;
}

ConnectivityMatrix sample_connectivity(const NetworkSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    ConnectivityMatrix conn;
    conn.edges.resize(spec.projections.size());
    for (size_t i = 0; i < spec.projections.size(); ++i) {
        const auto& pr = spec.projections[i];
        const bool recurrent = pr.src == pr.dst;
        const int n_src = spec.population(pr.src).size;
        const int n_dst = spec.population(pr.dst).size;
        auto& edges = conn.edges[i];
        for (int s = 0; s < n_src; ++s) {
            for (int d = 0; d < n_dst; ++d) {
                if (recurrent && s == d) continue;
                if (uniform() < pr.probability) edges.push_back({s, d});
            }
        }
    }
    return conn;
}

std::vector<std::string> fan_in_warnings(const NetworkSpec& spec,
                                         const ConnectivityMatrix& conn, int cap) {
    std::vector<std::vector<int>> fan_in(spec.populations.size());
    for (size_t p = 0; p < spec.populations.size(); ++p)
        fan_in[p].assign(spec.populations[p].size, 0);
    for (size_t i = 0; i < spec.projections.size(); ++i) {
        int dst = spec.population_index(spec.projections[i].dst);
        for (const auto& e : conn.edges[i]) ++fan_in[dst][e.dst];
    }
    std::vector<std::string> out;
    for (size_t p = 0; p < spec.populations.size(); ++p)
        if (std::any_of(fan_in[p].begin(), fan_in[p].end(),
                        [cap](int f) { return f > cap; }))
            out.push_back(spec.populations[p].id);
    return out;
}

}  // namespace nsm
