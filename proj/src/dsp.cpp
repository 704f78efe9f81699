#include "nsm/dsp.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace nsm {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

Biquad section_from_pole_pair(cd p1, cd p2, double b0, double b1, double b2) {
    Biquad s;
    s.b0 = b0;
    s.b1 = b1;
    s.b2 = b2;
    s.a1 = -(p1 + p2).real();
    s.a2 = (p1 * p2).real();
    return s;
}

cd bilinear(cd s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

// Left-half-plane Butterworth prototype poles, unit cutoff.
std::vector<cd> prototype_poles(int n) {
    std::vector<cd> poles;
    for (int k = 0; k < n; ++k) {
        double theta = pi / 2.0 + pi * (2.0 * k + 1.0) / (2.0 * n);
        poles.emplace_back(std::cos(theta), std::sin(theta));
    }
    return poles;
}

}  // namespace

std::array<BandSpec, 4> default_bands() {
    return {{{0, 60.0, 82.0}, {1, 82.0, 105.0}, {2, 105.0, 128.0}, {3, 128.0, 150.0}}};
}

double BiquadCascade::magnitude(double f_hz, double fs) const {
    cd z = std::exp(cd(0.0, 2.0 * pi * f_hz / fs));
    cd zi = 1.0 / z;
    cd h = gain;
    for (const auto& s : sections)
        h *= (s.b0 + s.b1 * zi + s.b2 * zi * zi) / (1.0 + s.a1 * zi + s.a2 * zi * zi);
    return std::abs(h);
}

bool BiquadCascade::stable(double margin) const {
    for (const auto& s : sections) {
        // Poles of z^2 + a1 z + a2.
        cd disc = cd(s.a1 * s.a1 - 4.0 * s.a2, 0.0);
        cd root = std::sqrt(disc);
        cd p1 = (-s.a1 + root) / 2.0;
        cd p2 = (-s.a1 - root) / 2.0;
        if (std::abs(p1) >= 1.0 - margin || std::abs(p2) >= 1.0 - margin) return false;
    }
    return true;
}

BiquadCascade design_butterworth_bandpass(double low_hz, double high_hz,
                                          double fs, int order) {
    if (!(0.0 < low_hz && low_hz < high_hz))
        throw filter_design_error("bandpass: need 0 < low < high");
    if (high_hz >= fs / 2.0)
        throw filter_design_error("bandpass: band edge at or above Nyquist");
    if (order < 2 || order % 2 != 0)
        throw filter_design_error("bandpass: order must be even and >= 2");

    const int n = order / 2;  // lowpass prototype order
    const double w1 = 2.0 * fs * std::tan(pi * low_hz / fs);
    const double w2 = 2.0 * fs * std::tan(pi * high_hz / fs);
    const double W0 = std::sqrt(w1 * w2);
    const double BW = w2 - w1;

    BiquadCascade out;
    auto add_pair = [&](cd za, cd zb) {
        out.sections.push_back(section_from_pole_pair(za, zb, 1.0, 0.0, -1.0));
    };
    for (const cd& p : prototype_poles(n)) {
        if (p.imag() < 0.0) continue;  // conjugates handled together
        // Lowpass-to-bandpass: s^2 - (BW p) s + W0^2 = 0.
        cd bp = BW * p;
        cd root = std::sqrt(bp * bp - 4.0 * W0 * W0);
        cd s1 = (bp + root) / 2.0;
        cd s2 = (bp - root) / 2.0;
        cd z1 = bilinear(s1, fs);
        cd z2 = bilinear(s2, fs);
        if (p.imag() > 0.0) {
            add_pair(z1, std::conj(z1));
            add_pair(z2, std::conj(z2));
        } else {
            // Real prototype pole: the two bandpass poles pair with each other.
            add_pair(z1, z2);
        }
    }

    double f_center = fs / pi * std::atan(W0 / (2.0 * fs));
    double mag = out.magnitude(f_center, fs);
    if (!(mag > 0.0)) throw filter_design_error("bandpass: degenerate design");
    out.gain = 1.0 / mag;
    if (!out.stable()) throw filter_design_error("bandpass: unstable section produced");
    return out;
}

BiquadCascade design_butterworth_bandpass(const BandSpec& band, double fs, int order) {
    return design_butterworth_bandpass(bpm_to_hz(band.low_bpm),
                                       bpm_to_hz(band.high_bpm), fs, order);
}

BiquadCascade design_butterworth_lowpass(double cutoff_hz, double fs, int order) {
    if (!(cutoff_hz > 0.0) || cutoff_hz >= fs / 2.0)
        throw filter_design_error("lowpass: cutoff must lie in (0, fs/2)");
    if (order < 2 || order % 2 != 0)
        throw filter_design_error("lowpass: order must be even and >= 2");

    const double wc = 2.0 * fs * std::tan(pi * cutoff_hz / fs);
    BiquadCascade out;
    for (const cd& p : prototype_poles(order)) {
        if (p.imag() <= 0.0) continue;
        cd z = bilinear(p * wc, fs);
        out.sections.push_back(section_from_pole_pair(z, std::conj(z), 1.0, 2.0, 1.0));
    }
    double mag = out.magnitude(0.0, fs);
    out.gain = 1.0 / mag;
    if (!out.stable()) throw filter_design_error("lowpass: unstable section produced");
    return out;
}

SampledSignal filter_signal(const SampledSignal& x, const BiquadCascade& f) {
    SampledSignal y = x;
    for (const auto& s : f.sections) {
        double s1 = 0.0, s2 = 0.0;
        for (double& v : y.samples) {
            double in = v;
            double outv = s.b0 * in + s1;
            s1 = s.b1 * in - s.a1 * outv + s2;
            s2 = s.b2 * in - s.a2 * outv;
            v = outv;
        }
    }
    for (double& v : y.samples) v *= f.gain;
    return y;
}

SampledSignal full_wave_rectify(const SampledSignal& x) {
    SampledSignal y = x;
    for (double& v : y.samples) v = std::fabs(v);
    return y;
}

std::vector<double> encode_to_spikes(const SampledSignal& x,
                                     const EncoderParams& e, double dt) {
    if (!(e.gain > 0.0)) throw invalid_argument_error("encoder gain must be positive");
    const double duration = x.samples.size() / x.fs;
    const long n_steps = static_cast<long>(duration / dt);
    NeuronState s = resting_state(e.lif);
    std::vector<double> spikes;
    for (long step = 0; step < n_steps; ++step) {
        double t = step * dt;
        size_t idx = std::min(static_cast<size_t>(t * x.fs), x.samples.size() - 1);
        auto out = lif_step(s, e.lif, e.gain * x.samples[idx], dt, t);
        s = out.state;
        if (out.spiked) spikes.push_back(t + dt);
    }
    return spikes;
}

std::array<SampledSignal, 4> frontend_band_signals(const SampledSignal& ecg,
                                                   const FrontendConfig& cfg) {
    SampledSignal base = ecg;
    for (double& v : base.samples) v *= cfg.input_scale;

    if (cfg.prestage) {
        auto qrs = design_butterworth_bandpass(cfg.qrs_low_hz, cfg.qrs_high_hz,
                                               ecg.fs, cfg.qrs_order);
        auto env = design_butterworth_lowpass(cfg.envelope_cutoff_hz, ecg.fs,
                                              cfg.envelope_order);
        base = filter_signal(full_wave_rectify(filter_signal(base, qrs)), env);
    }

    std::array<SampledSignal, 4> out;
    for (int b = 0; b < 4; ++b) {
        auto bp = design_butterworth_bandpass(cfg.bands[b], ecg.fs, cfg.filter_order);
        out[b] = full_wave_rectify(filter_signal(base, bp));
    }
    return out;
}

std::array<std::vector<double>, 4> frontend_encode(const SampledSignal& ecg,
                                                   const FrontendConfig& cfg,
                                                   double dt) {
    auto bands = frontend_band_signals(ecg, cfg);
    std::array<std::vector<double>, 4> out;
    for (int b = 0; b < 4; ++b) out[b] = encode_to_spikes(bands[b], cfg.encoder, dt);
    return out;
}

}  // namespace nsm
