#include "nsm/stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nsm {

double StimulusProgram::total_duration() const {
    double end = 0.0;
    for (const auto& s : segments) end = std::max(end, s.start + s.duration);
    return end;
}

double HRProfile::bpm_at(double t) const {
    if (knots.empty()) throw invalid_argument_error("HRProfile: no knots");
    if (t <= knots.front().first) return knots.front().second;
    if (t >= knots.back().first) return knots.back().second;
    for (size_t i = 1; i < knots.size(); ++i) {
        if (t <= knots[i].first) {
            auto [t0, b0] = knots[i - 1];
            auto [t1, b1] = knots[i];
            return b0 + (b1 - b0) * (t - t0) / (t1 - t0);
        }
    }
    return knots.back().second;
}

void HRProfile::validate() const {
    if (knots.empty()) throw invalid_argument_error("HRProfile: no knots");
    for (size_t i = 0; i < knots.size(); ++i) {
        if (knots[i].second < 30.0 || knots[i].second > 220.0)
            throw invalid_argument_error("HRProfile: bpm outside [30, 220]");
        if (i > 0 && knots[i].first <= knots[i - 1].first)
            throw invalid_argument_error("HRProfile: knot times must increase");
    }
}

namespace {

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<double> poisson_train(double rate, double duration, std::uint64_t seed) {
    if (rate < 0.0) throw invalid_argument_error("poisson_train: negative rate");
    std::vector<double> spikes;
    if (rate == 0.0 || duration <= 0.0) return spikes;
    std::mt19937_64 rng(seed);
    double t = 0.0;
    for (;;) {
        double u = uniform01(rng);
        t += -std::log1p(-u) / rate;
        if (t >= duration) break;
        spikes.push_back(t);
    }
    return spikes;
}

StimulusProgram all_transitions_protocol(int n_states, double rate,
                                         double segment, double gap) {
    if (n_states < 2)
        throw invalid_argument_error("all_transitions_protocol: need >= 2 states");
    StimulusProgram prog;
    double t = gap;
    for (int i = 0; i < n_states; ++i) {
        for (int j = 0; j < n_states; ++j) {
            if (i == j) continue;
            prog.segments.push_back({i, rate, t, segment});
            t += segment + gap;
            prog.segments.push_back({j, rate, t, segment});
            t += segment + gap;
        }
    }
    return prog;
}

std::vector<SpikeEvent> render_program(const StimulusProgram& prog,
                                       const NetworkSpec& net, std::uint64_t seed) {
    std::vector<SpikeEvent> out;
    for (size_t s = 0; s < prog.segments.size(); ++s) {
        const auto& seg = prog.segments[s];
        std::string id = "state" + std::to_string(seg.channel);
        int pop = net.population_index(id);
        if (pop < 0) throw invalid_argument_error("program targets unknown channel " +
                                                  std::to_string(seg.channel));
        int size = net.populations[pop].size;
        for (int n = 0; n < size; ++n) {
            std::uint64_t sub = seed ^ (0x9e3779b97f4a7c15ULL * (s * 1024 + n + 1));
            for (double t : poisson_train(seg.rate, seg.duration, sub))
                out.push_back({seg.start + t, pop, n});
        }
    }
    std::sort(out.begin(), out.end(), [](const SpikeEvent& a, const SpikeEvent& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.population != b.population) return a.population < b.population;
        return a.neuron < b.neuron;
    });
    return out;
}

std::vector<SpikeEvent> gate_priming(const NetworkSpec& net, double duration,
                                     double rate, std::uint64_t seed) {
    std::vector<SpikeEvent> out;
    for (size_t p = 0; p < net.populations.size(); ++p) {
        const auto& pop = net.populations[p];
        if (pop.role != PopulationRole::Gate) continue;
        for (int n = 0; n < pop.size; ++n) {
            std::uint64_t sub = seed ^ (0xda942042e4dd58b5ULL * (p * 1024 + n + 1));
            for (double t : poisson_train(rate, duration, sub))
                out.push_back({t, static_cast<int>(p), n});
        }
    }
    std::sort(out.begin(), out.end(), [](const SpikeEvent& a, const SpikeEvent& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.population != b.population) return a.population < b.population;
        return a.neuron < b.neuron;
    });
    return out;
}

SampledSignal synthetic_ecg(const HRProfile& profile, double fs,
                            std::uint64_t seed, double noise_amplitude,
                            double pulse_sigma) {
    profile.validate();
    if (fs < 128.0) throw invalid_argument_error("synthetic_ecg: fs must be >= 128 Hz");

    double duration = profile.knots.back().first;
    size_t n = static_cast<size_t>(duration * fs);
    SampledSignal sig;
    sig.fs = fs;
    sig.units = "a.u.";
    sig.samples.assign(n, 0.0);

    // Pulse placement: the next beat follows at the current instantaneous
    // period.
    std::vector<double> beats;
    double t = 0.0;
    while (t < duration) {
        beats.push_back(t);
        t += 60.0 / profile.bpm_at(t);
    }

    const double support = 5.0 * pulse_sigma;
    for (double tb : beats) {
        long i0 = std::max(0L, static_cast<long>((tb - support) * fs));
        long i1 = std::min(static_cast<long>(n) - 1,
                           static_cast<long>((tb + support) * fs));
        for (long i = i0; i <= i1; ++i) {
            double dt = i / fs - tb;
            sig.samples[i] += std::exp(-dt * dt / (2.0 * pulse_sigma * pulse_sigma));
        }
    }

    if (noise_amplitude > 0.0) {
        std::mt19937_64 rng(seed);
        for (double& v : sig.samples)
            v += noise_amplitude * (2.0 * uniform01(rng) - 1.0);
    }
    return sig;
}

}  // namespace nsm
