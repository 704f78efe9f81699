#pragma once

#include <array>
#include <vector>

#include "nsm/dynamics.hpp"

namespace nsm {

struct filter_design_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Heart-rate band in beats per minute.
struct BandSpec {
    int index = 0;
    double low_bpm = 0.0;
    double high_bpm = 0.0;
};

// The four bands of the detector: 60-82, 82-105, 105-128, 128-150 bpm.
std::array<BandSpec, 4> default_bands();

inline double bpm_to_hz(double bpm) { return bpm / 60.0; }

struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;  // numerator
    double a1 = 0.0, a2 = 0.0;            // denominator (a0 = 1)
};

struct BiquadCascade {
    std::vector<Biquad> sections;
    double gain = 1.0;

    // |H(e^{j 2 pi f / fs})| evaluated directly from the coefficients.
    double magnitude(double f_hz, double fs) const;
    bool stable(double margin = 1e-6) const;
};

struct SampledSignal {
    double fs = 256.0;
    std::vector<double> samples;
    std::string units;
};

// Digital Butterworth bandpass via the bilinear transform with pre-warped
// edges; `order` is the total bandpass order (two biquads for order 4).
BiquadCascade design_butterworth_bandpass(double low_hz, double high_hz,
                                          double fs, int order = 4);
BiquadCascade design_butterworth_bandpass(const BandSpec& band, double fs,
                                          int order = 4);
BiquadCascade design_butterworth_lowpass(double cutoff_hz, double fs,
                                         int order = 4);

// Causal cascade filtering (transposed direct form II), fresh state.
SampledSignal filter_signal(const SampledSignal& x, const BiquadCascade& f);

SampledSignal full_wave_rectify(const SampledSignal& x);

struct EncoderParams {
    double gain = 6e-9;   // injected current per input unit [A/unit]
    LIFParams lif;
};

// Sample-and-hold the rectified band output onto simulation steps and run it
// through the encoder LIF. Returns spike times.
std::vector<double> encode_to_spikes(const SampledSignal& x,
                                     const EncoderParams& e, double dt);

// Full signal-to-spike frontend configuration. The pre-stage extracts a
// beat-energy envelope (QRS band, rectify, lowpass) before the bpm filterbank;
// without it the bpm filters act on the raw signal.
struct FrontendConfig {
    std::array<BandSpec, 4> bands = default_bands();
    int filter_order = 4;
    bool prestage = true;
    double qrs_low_hz = 5.0;
    double qrs_high_hz = 40.0;
    int qrs_order = 4;
    double envelope_cutoff_hz = 1.9;
    int envelope_order = 4;
    double input_scale = 1.0;
    EncoderParams encoder;
};

// Per-band rectified drive signals, ready for current injection.
std::array<SampledSignal, 4> frontend_band_signals(const SampledSignal& ecg,
                                                   const FrontendConfig& cfg);

// Frontend all the way to encoder spike trains (standalone, engine-free).
std::array<std::vector<double>, 4> frontend_encode(const SampledSignal& ecg,
                                                   const FrontendConfig& cfg,
                                                   double dt);

}  // namespace nsm
