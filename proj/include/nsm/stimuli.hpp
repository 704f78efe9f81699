#pragma once

#include <cstdint>
#include <vector>

#include "nsm/dsp.hpp"
#include "nsm/engine.hpp"

namespace nsm {

struct StimulusSegment {
    int channel = 0;      // input channel 0..3
    double rate = 50.0;   // [Hz], per target neuron
    double start = 0.0;   // [s]
    double duration = 0.0;// [s]
};

struct StimulusProgram {
    std::vector<StimulusSegment> segments;
    double total_duration() const;
};

// Piecewise-linear instantaneous heart rate.
struct HRProfile {
    std::vector<std::pair<double, double>> knots;  // (time s, bpm)
    double bpm_at(double t) const;                 // clamped outside the knots
    void validate() const;
};

// Homogeneous Poisson process; deterministic per seed.
std::vector<double> poisson_train(double rate, double duration, std::uint64_t seed);

// Visits every ordered channel pair (i, j), i != j, in lexicographic order:
// one segment on i, one on j, separated by gaps.
StimulusProgram all_transitions_protocol(int n_states, double rate = 50.0,
                                         double segment = 3.0, double gap = 2.0);

// Expand a program into engine spike events: an independent Poisson train per
// neuron of the target STATE population. Channel k maps to population
// "state<k>".
std::vector<SpikeEvent> render_program(const StimulusProgram& prog,
                                       const NetworkSpec& net, std::uint64_t seed);

// Priming burst that ignites the gate attractors at the start of a run.
std::vector<SpikeEvent> gate_priming(const NetworkSpec& net, double duration,
                                     double rate, std::uint64_t seed);

// QRS-like train of narrow Gaussian pulses whose spacing tracks the profile;
// optional additive white noise at the given amplitude (0 disables).
SampledSignal synthetic_ecg(const HRProfile& profile, double fs,
                            std::uint64_t seed, double noise_amplitude = 0.0,
                            double pulse_sigma = 0.010);

}  // namespace nsm
