#include "nsm/engine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nsm {

void SimulationConfig::validate() const {
    if (!(dt > 0.0)) throw invalid_argument_error("SimulationConfig: dt must be positive");
    if (!(duration > 0.0))
        throw invalid_argument_error("SimulationConfig: duration must be positive");
}

int SpikeRecord::population_index(const std::string& id) const {
    for (size_t i = 0; i < population_ids.size(); ++i)
        if (population_ids[i] == id) return static_cast<int>(i);
    return -1;
}

namespace {

// Adjacency of one projection, grouped by source neuron.
struct ProjectionRuntime {
    int src_pop = 0;
    int dst_pop = 0;
    double decay = 1.0;
    double weight = 0.0;
    bool inhibitory = false;
    std::vector<std::vector<int>> targets;  // per src neuron, local dst indices
    Eigen::ArrayXd current;                 // per dst neuron, unsigned [A]
};

}  // namespace

SpikeRecord simulate(const NetworkSpec& net, const ConnectivityMatrix& conn,
                     const ExternalDrive& drive, const SimulationConfig& cfg) {
    net.validate();
    cfg.validate();
    if (conn.edges.size() != net.projections.size())
        throw invalid_argument_error("connectivity does not match network spec");

    const int n_pops = static_cast<int>(net.populations.size());
    const double dt = cfg.dt;
    const long n_steps = static_cast<long>(std::ceil(cfg.duration / dt));

    std::vector<ProjectionRuntime> projs(net.projections.size());
    for (size_t i = 0; i < net.projections.size(); ++i) {
        const auto& pr = net.projections[i];
        auto& rt = projs[i];
        rt.src_pop = net.population_index(pr.src);
        rt.dst_pop = net.population_index(pr.dst);
        const int n_src = net.populations[rt.src_pop].size;
        const int n_dst = net.populations[rt.dst_pop].size;
        double tau = pr.tau > 0.0 ? pr.tau : default_synapse_tau(pr.kind);
        rt.decay = std::exp(-dt / tau);
        rt.weight = pr.weight;
        rt.inhibitory = is_inhibitory(pr.kind);
        rt.targets.resize(n_src);
        for (const auto& e : conn.edges[i]) {
            if (e.src < 0 || e.src >= n_src || e.dst < 0 || e.dst >= n_dst)
                throw invalid_argument_error("edge outside projection endpoints: " + pr.label);
            rt.targets[e.src].push_back(e.dst);
        }
        rt.current = Eigen::ArrayXd::Zero(n_dst);
    }

    // External input synapse state, one per neuron of each driven population.
    std::vector<Eigen::ArrayXd> ext_syn(n_pops);
    for (int p = 0; p < n_pops; ++p)
        ext_syn[p] = Eigen::ArrayXd::Zero(net.populations[p].size);
    const double ext_decay = std::exp(-dt / drive.input_synapse.tau);
    const double ext_w = is_inhibitory(drive.input_synapse.kind)
                             ? -drive.input_synapse.weight
                             : drive.input_synapse.weight;

    // Bucket external spikes by step.
    std::vector<std::vector<std::pair<int, int>>> ext_by_step(n_steps);
    for (const auto& ev : drive.spikes) {
        if (ev.population < 0 || ev.population >= n_pops ||
            ev.neuron < 0 || ev.neuron >= net.populations[ev.population].size)
            throw invalid_argument_error("external spike targets an unknown neuron");
        if (ev.t < 0.0 || ev.t > cfg.duration)
            throw invalid_argument_error("external spike time outside [0, duration]");
        long step = std::min(static_cast<long>(ev.t / dt), n_steps - 1);
        ext_by_step[step].push_back({ev.population, ev.neuron});
    }
    for (const auto& ch : drive.currents) {
        if (net.population_index(ch.population) < 0)
            throw invalid_argument_error("current drive targets unknown population: " +
                                         ch.population);
        if (!(ch.fs > 0.0))
            throw invalid_argument_error("current drive needs a positive sample rate");
    }

    // Neuron state.
    std::vector<std::vector<NeuronState>> state(n_pops);
    std::vector<bool> monitored(n_pops, cfg.record.empty());
    for (const auto& id : cfg.record) {
        int p = net.population_index(id);
        if (p < 0) throw invalid_argument_error("record set names unknown population: " + id);
        monitored[p] = true;
    }
    for (int p = 0; p < n_pops; ++p) {
        const auto& pop = net.populations[p];
        state[p].assign(pop.size,
                        pop.model == NeuronModel::AdEx ? resting_state(pop.adex)
                                                       : resting_state(pop.lif));
    }

    SpikeRecord rec;
    rec.duration = n_steps * dt;
    rec.counts.assign(n_pops, 0);
    for (const auto& pop : net.populations) {
        rec.population_ids.push_back(pop.id);
        rec.population_sizes.push_back(pop.size);
    }

    std::vector<Eigen::ArrayXd> input(n_pops);
    for (int p = 0; p < n_pops; ++p)
        input[p] = Eigen::ArrayXd::Zero(net.populations[p].size);

    // Spikes emitted at the previous step boundary, per population.
    std::vector<std::vector<int>> prev_spikes(n_pops), cur_spikes(n_pops);

    for (long step = 0; step < n_steps; ++step) {
        const double t = step * dt;

        // 1) Synaptic currents: decay, then deliver last boundary's spikes.
        for (auto& rt : projs) rt.current *= rt.decay;
        for (int p = 0; p < n_pops; ++p) ext_syn[p] *= ext_decay;
        for (auto& rt : projs)
            for (int src : prev_spikes[rt.src_pop])
                for (int d : rt.targets[src]) rt.current[d] += rt.weight;
        for (const auto& [pop, neuron] : ext_by_step[step])
            ext_syn[pop][neuron] += ext_w;

        // 2) Accumulate input currents.
        for (int p = 0; p < n_pops; ++p) {
            input[p].setConstant(net.populations[p].bias_current);
            input[p] += ext_syn[p];
        }
        for (auto& rt : projs) {
            if (rt.inhibitory) input[rt.dst_pop] -= rt.current;
            else input[rt.dst_pop] += rt.current;
        }
        for (const auto& ch : drive.currents) {
            int p = net.population_index(ch.population);
            size_t idx = static_cast<size_t>(t * ch.fs);
            if (idx >= ch.samples.size()) continue;
            double I = ch.samples[idx];
            if (ch.neuron < 0) input[p] += I;
            else input[p][ch.neuron] += I;
        }

        // 3) Advance neurons, collect spikes for the next boundary.
        for (int p = 0; p < n_pops; ++p) {
            cur_spikes[p].clear();
            const auto& pop = net.populations[p];
            for (int n = 0; n < pop.size; ++n) {
                StepOutcome out;
                try {
                    out = pop.model == NeuronModel::AdEx
                              ? adex_step(state[p][n], pop.adex, input[p][n], dt, t)
                              : lif_step(state[p][n], pop.lif, input[p][n], dt, t);
                } catch (const numerical_error& e) {
                    throw numerical_error(std::string(e.what()) + " (neuron " +
                                          pop.id + "[" + std::to_string(n) +
                                          "] at t=" + std::to_string(t) + "s)");
                }
                state[p][n] = out.state;
                if (out.spiked) {
                    cur_spikes[p].push_back(n);
                    if (monitored[p]) {
                        rec.events.push_back({t + dt, p, n});
                        ++rec.counts[p];
                    }
                }
            }
        }
        std::swap(prev_spikes, cur_spikes);
    }
    return rec;
}

}  // namespace nsm
