#include "nsm/analysis.hpp"

#include <cmath>
#include <map>

namespace nsm {

std::vector<double> firing_rate(const SpikeRecord& rec, const std::string& population,
                                double window) {
    if (!(window > 0.0)) throw invalid_argument_error("firing_rate: window must be positive");
    int pop = rec.population_index(population);
    if (pop < 0) throw invalid_argument_error("firing_rate: unknown population " + population);

    size_t n_windows = static_cast<size_t>(std::ceil(rec.duration / window));
    std::vector<double> rates(n_windows, 0.0);
    for (const auto& ev : rec.events) {
        if (ev.population != pop) continue;
        size_t w = std::min(static_cast<size_t>(ev.t / window), n_windows - 1);
        rates[w] += 1.0;
    }
    double denom = window * rec.population_sizes[pop];
    for (double& r : rates) r /= denom;
    return rates;
}

StateTimeline decode_state(const SpikeRecord& rec, const NetworkSpec& net,
                           double window, double active_threshold) {
    if (!(window > 0.0)) throw invalid_argument_error("decode_state: window must be positive");

    // state index -> record population index, lowest first.
    std::map<int, int> states;
    for (size_t p = 0; p < net.populations.size(); ++p) {
        if (net.populations[p].role != PopulationRole::State) continue;
        int rp = rec.population_index(net.populations[p].id);
        if (rp >= 0) states[net.populations[p].state_index] = rp;
    }

    size_t n_windows = static_cast<size_t>(std::ceil(rec.duration / window));
    std::map<int, std::vector<double>> counts;
    for (const auto& [s, rp] : states) counts[s].assign(n_windows, 0.0);
    for (const auto& ev : rec.events) {
        for (const auto& [s, rp] : states) {
            if (ev.population == rp) {
                size_t w = std::min(static_cast<size_t>(ev.t / window), n_windows - 1);
                counts[s][w] += 1.0;
                break;
            }
        }
    }

    StateTimeline tl;
    for (size_t w = 0; w < n_windows; ++w) {
        StateWindow sw;
        sw.t_start = w * window;
        sw.t_end = std::min(rec.duration, (w + 1) * window);
        double best = -1.0;
        for (const auto& [s, rp] : states) {
            double rate = counts[s][w] / (window * rec.population_sizes[rp]);
            if (rate >= active_threshold && rate > best) {
                best = rate;
                sw.state = s;  // map order makes ties resolve to the lowest index
            }
        }
        tl.windows.push_back(sw);
    }
    return tl;
}

std::vector<MonotonicityViolation> check_monotonic(const StateTimeline& t) {
    std::vector<MonotonicityViolation> out;
    int prev = kNoState;
    for (const auto& w : t.windows) {
        if (w.state == kNoState) continue;
        if (prev != kNoState && w.state != prev && w.state < prev && w.state != 0)
            out.push_back({w.t_start, prev, w.state});
        prev = w.state;
    }
    return out;
}

double estimate_power(const SpikeRecord& rec, const NetworkSpec& net,
                      const ConnectivityMatrix& conn, const PowerModel& m) {
    if (!(rec.duration > 0.0))
        throw invalid_argument_error("estimate_power: record has zero duration");
    if (m.energy_per_spike < 0.0 || m.energy_per_route < 0.0 || m.static_power < 0.0)
        throw invalid_argument_error("estimate_power: negative power-model constant");

    // Out-degree per (population, neuron), from the sampled edges.
    std::vector<std::vector<long>> out_degree(net.populations.size());
    for (size_t p = 0; p < net.populations.size(); ++p)
        out_degree[p].assign(net.populations[p].size, 0);
    for (size_t i = 0; i < conn.edges.size() && i < net.projections.size(); ++i) {
        int src = net.population_index(net.projections[i].src);
        for (const auto& e : conn.edges[i]) ++out_degree[src][e.src];
    }

    double energy = 0.0;
    for (const auto& ev : rec.events) {
        energy += m.energy_per_spike;
        if (ev.population < static_cast<int>(out_degree.size()) &&
            ev.neuron < static_cast<int>(out_degree[ev.population].size()))
            energy += m.energy_per_route * out_degree[ev.population][ev.neuron];
    }
    return m.static_power + energy / rec.duration;
}

}  // namespace nsm
