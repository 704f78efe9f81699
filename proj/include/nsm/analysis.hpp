#pragma once

#include <string>
#include <vector>

#include "nsm/engine.hpp"

namespace nsm {

inline constexpr int kNoState = -1;

struct StateWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    int state = kNoState;  // kNoState when no population clears the threshold
};

struct StateTimeline {
    std::vector<StateWindow> windows;
};

struct MonotonicityViolation {
    double t = 0.0;       // start of the offending window
    int from = kNoState;
    int to = kNoState;
};

struct PowerModel {
    double energy_per_spike = 10.2e-9;  // [J]
    double energy_per_route = 0.0;      // [J] per routed synaptic event
    double static_power = 0.0;          // [W]
};

// Windowed population rate: spikes / (window * population size).
std::vector<double> firing_rate(const SpikeRecord& rec, const std::string& population,
                                double window);

// Per window, the STATE population with maximal rate, if it clears the
// threshold; ties break toward the lowest state index.
StateTimeline decode_state(const SpikeRecord& rec, const NetworkSpec& net,
                           double window = 0.1, double active_threshold = 10.0);

// Legal transitions (NONE windows transparent): upward, or to state 0.
std::vector<MonotonicityViolation> check_monotonic(const StateTimeline& t);

// Event-based power estimate: each spike costs E_spike plus E_route per
// outgoing edge of the emitting neuron, over the record duration.
double estimate_power(const SpikeRecord& rec, const NetworkSpec& net,
                      const ConnectivityMatrix& conn, const PowerModel& m);

}  // namespace nsm
