#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsm/network.hpp"

namespace nsm {

struct SimulationConfig {
    double dt = 1e-4;         // [s]
    double duration = 1.0;    // [s]
    std::uint64_t seed = 0;
    std::vector<std::string> record;  // population ids to monitor; empty = all

    void validate() const;
};

struct SpikeEvent {
    double t = 0.0;
    int population = 0;  // index into NetworkSpec::populations
    int neuron = 0;      // index within the population
};

struct SpikeRecord {
    std::vector<SpikeEvent> events;       // ordered by time, then population, neuron
    std::vector<std::string> population_ids;
    std::vector<int> population_sizes;
    std::vector<long> counts;             // per population, monitored only
    double duration = 0.0;

    int population_index(const std::string& id) const;
};

// External stimulation: spike events delivered through a dedicated input
// synapse, and/or sampled current waveforms injected directly.
struct ExternalDrive {
    std::vector<SpikeEvent> spikes;   // population/neuron give the target
    SynapseParams input_synapse{SynapseKind::FastExc, 1200e-12, 5e-3};

    struct CurrentChannel {
        std::string population;
        int neuron = 0;           // -1 targets every neuron in the population
        double fs = 256.0;        // sample rate of the waveform [Hz]
        std::vector<double> samples;  // [A], sample-and-held onto sim steps
    };
    std::vector<CurrentChannel> currents;
};

// Clock-driven loop with a one-step synaptic delay: spikes emitted at a step
// boundary act on the next step. Bit-identical across runs for fixed inputs.
SpikeRecord simulate(const NetworkSpec& net, const ConnectivityMatrix& conn,
                     const ExternalDrive& drive, const SimulationConfig& cfg);

}  // namespace nsm
