#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace nsm {

// Raised when an integration step produces non-finite state. Carries enough
// context to identify the offending neuron.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_argument_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive exponential integrate-and-fire parameters (SI units).
// Defaults put the neuron in a regular-spiking tonic regime.
struct AdExParams {
    double C = 200e-12;       // membrane capacitance [F]
    double g_L = 10e-9;       // leak conductance [S]
    double E_L = -70e-3;      // leak reversal [V]
    double V_T = -50e-3;      // exponential threshold [V]
    double Delta_T = 2e-3;    // slope factor [V]; 0 disables the exponential term
    double V_cut = 0.0;       // spike cutoff [V]
    double V_r = -58e-3;      // reset potential [V]
    double a = 2e-9;          // subthreshold adaptation coupling [S]
    double b = 0.0;           // spike-triggered adaptation increment [A]
    double tau_w = 100e-3;    // adaptation time constant [s]
    double t_ref = 2e-3;      // refractory period [s]

    void validate() const;
};

// Leaky integrate-and-fire parameters (SI units).
struct LIFParams {
    double tau_m = 10e-3;     // membrane time constant [s]
    double R = 100e6;         // membrane resistance [Ohm]
    double V_rest = -70e-3;   // resting potential [V]
    double V_th = -50e-3;     // firing threshold [V]
    double V_r = -70e-3;      // reset potential [V]
    double t_ref = 2e-3;      // refractory period [s]

    void validate() const;
};

struct NeuronState {
    double V = 0.0;           // membrane potential [V]
    double w = 0.0;           // adaptation current [A]; unused for LIF
    double refrac = 0.0;      // time remaining in refractory period [s]
    std::optional<double> last_spike;  // [s]
};

NeuronState resting_state(const AdExParams& p);
NeuronState resting_state(const LIFParams& p);

// The four synapse classes of the substrate: fast/slow x excitatory/inhibitory.
enum class SynapseKind {
    FastExc,   // AMPA
    SlowExc,   // NMDA
    FastInh,   // GABA_A
    SlowInh,   // GABA_B
};

bool is_inhibitory(SynapseKind k);
double default_synapse_tau(SynapseKind k);
std::string to_string(SynapseKind k);
SynapseKind synapse_kind_from_string(const std::string& s);

struct SynapseParams {
    SynapseKind kind = SynapseKind::FastExc;
    double weight = 0.0;      // per-spike current increment magnitude [A]
    double tau = 5e-3;        // decay time constant [s]

    void validate() const;
};

struct StepOutcome {
    NeuronState state;
    bool spiked = false;
};

// One forward-Euler step of the AdEx equations. `t` is the time at the start
// of the step; a spike is stamped at t + dt. During the refractory period V
// is clamped at V_r and only w evolves.
StepOutcome adex_step(const NeuronState& s, const AdExParams& p, double I_in,
                      double dt, double t = 0.0);

// One forward-Euler step of the LIF equation.
StepOutcome lif_step(const NeuronState& s, const LIFParams& p, double I_in,
                     double dt, double t = 0.0);

struct SynapseStep {
    double contribution = 0.0;  // signed current seen by the target [A]
    double next_state = 0.0;    // internal (unsigned) current after the step [A]
};

// Exponential current-based synapse: decay, then add incoming spikes.
// The contribution carries the sign of the synapse kind.
SynapseStep synapse_step(double state, const SynapseParams& p,
                         int n_presyn_spikes, double dt);

}  // namespace nsm
