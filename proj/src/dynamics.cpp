#include "nsm/dynamics.hpp"

#include <cmath>

namespace nsm {

void AdExParams::validate() const {
    if (!(C > 0.0) || !(g_L > 0.0) || !(tau_w > 0.0))
        throw invalid_argument_error("AdExParams: C, g_L, tau_w must be positive");
    if (Delta_T < 0.0 || t_ref < 0.0)
        throw invalid_argument_error("AdExParams: Delta_T and t_ref must be nonnegative");
    if (!(V_r < V_cut))
        throw invalid_argument_error("AdExParams: V_r must be below V_cut");
    if (!(E_L <= V_T) || !(V_T < V_cut))
        throw invalid_argument_error("AdExParams: require E_L <= V_T < V_cut");
}

void LIFParams::validate() const {
    if (!(tau_m > 0.0) || !(R > 0.0))
        throw invalid_argument_error("LIFParams: tau_m and R must be positive");
    if (!(V_r < V_th))
        throw invalid_argument_error("LIFParams: V_r must be below V_th");
    if (t_ref < 0.0)
        throw invalid_argument_error("LIFParams: t_ref must be nonnegative");
}

NeuronState resting_state(const AdExParams& p) {
    NeuronState s;
    s.V = p.E_L;
    return s;
}

NeuronState resting_state(const LIFParams& p) {
    NeuronState s;
    s.V = p.V_rest;
    return s;
}

bool is_inhibitory(SynapseKind k) {
    return k == SynapseKind::FastInh || k == SynapseKind::SlowInh;
}

double default_synapse_tau(SynapseKind k) {
    switch (k) {
        case SynapseKind::FastExc: return 5e-3;    // AMPA
        case SynapseKind::SlowExc: return 100e-3;  // NMDA
        case SynapseKind::FastInh: return 10e-3;   // GABA_A
        case SynapseKind::SlowInh: return 100e-3;  // GABA_B
    }
    return 5e-3;
}

std::string to_string(SynapseKind k) {
    switch (k) {
        case SynapseKind::FastExc: return "AMPA";
        case SynapseKind::SlowExc: return "NMDA";
        case SynapseKind::FastInh: return "GABA_A";
        case SynapseKind::SlowInh: return "GABA_B";
    }
    return "?";
}

SynapseKind synapse_kind_from_string(const std::string& s) {
    if (s == "AMPA") return SynapseKind::FastExc;
    if (s == "NMDA") return SynapseKind::SlowExc;
    if (s == "GABA_A") return SynapseKind::FastInh;
    if (s == "GABA_B") return SynapseKind::SlowInh;
    throw invalid_argument_error("unknown synapse kind: " + s);
}

void SynapseParams::validate() const {
    if (weight < 0.0)
        throw invalid_argument_error("SynapseParams: weight must be nonnegative");
    if (!(tau > 0.0))
        throw invalid_argument_error("SynapseParams: tau must be positive");
}

namespace {

void check_finite(double V, double w) {
    if (!std::isfinite(V) || !std::isfinite(w))
        throw numerical_error("non-finite membrane state after update");
}

}  // namespace

StepOutcome adex_step(const NeuronState& s, const AdExParams& p, double I_in,
                      double dt, double t) {
    if (!(dt > 0.0)) throw invalid_argument_error("adex_step: dt must be positive");
    StepOutcome out{s, false};
    NeuronState& n = out.state;

    // Already past cutoff on entry: fire and reset without integrating.
    if (s.refrac <= 0.0 && s.V >= p.V_cut) {
        n.V = p.V_r;
        n.w = s.w + p.b;
        n.refrac = p.t_ref;
        n.last_spike = t + dt;
        out.spiked = true;
        return out;
    }

    if (s.refrac > 0.0) {
        // V clamped at reset; only the adaptation current evolves.
        n.V = p.V_r;
        n.w = s.w + dt * (p.a * (p.V_r - p.E_L) - s.w) / p.tau_w;
        n.refrac = std::max(0.0, s.refrac - dt);
        check_finite(n.V, n.w);
        return out;
    }

    double exp_term = 0.0;
    if (p.Delta_T > 0.0)
        exp_term = p.g_L * p.Delta_T * std::exp((s.V - p.V_T) / p.Delta_T);

    double dV = (-p.g_L * (s.V - p.E_L) + exp_term - s.w + I_in) / p.C;
    double dw = (p.a * (s.V - p.E_L) - s.w) / p.tau_w;
    n.V = s.V + dt * dV;
    n.w = s.w + dt * dw;
    check_finite(n.V, n.w);

    if (n.V >= p.V_cut) {
        n.V = p.V_r;
        n.w += p.b;
        n.refrac = p.t_ref;
        n.last_spike = t + dt;
        out.spiked = true;
    }
    return out;
}

StepOutcome lif_step(const NeuronState& s, const LIFParams& p, double I_in,
                     double dt, double t) {
    if (!(dt > 0.0)) throw invalid_argument_error("lif_step: dt must be positive");
    StepOutcome out{s, false};
    NeuronState& n = out.state;

    if (s.refrac > 0.0) {
        n.V = p.V_r;
        n.refrac = std::max(0.0, s.refrac - dt);
        return out;
    }

    n.V = s.V + dt * (-(s.V - p.V_rest) + p.R * I_in) / p.tau_m;
    check_finite(n.V, 0.0);

    if (n.V >= p.V_th) {
        n.V = p.V_r;
        n.refrac = p.t_ref;
        n.last_spike = t + dt;
        out.spiked = true;
    }
    return out;
}

SynapseStep synapse_step(double state, const SynapseParams& p,
                         int n_presyn_spikes, double dt) {
    if (!(dt > 0.0)) throw invalid_argument_error("synapse_step: dt must be positive");
    if (n_presyn_spikes < 0)
        throw invalid_argument_error("synapse_step: negative spike count");

    double next = state * std::exp(-dt / p.tau) + n_presyn_spikes * p.weight;
    if (!std::isfinite(next)) throw numerical_error("non-finite synaptic current");

    SynapseStep out;
    out.next_state = next;
    out.contribution = is_inhibitory(p.kind) ? -next : next;
    return out;
}

}  // namespace nsm
