#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nsm/dsp.hpp"
#include "nsm/stimuli.hpp"

using namespace nsm;

namespace {

constexpr double kFs = 256.0;

double db(double mag) { return 20.0 * std::log10(mag); }

SampledSignal sinusoid(double f, double fs, double duration, double amp = 1.0) {
    SampledSignal s;
    s.fs = fs;
    size_t n = static_cast<size_t>(duration * fs);
    s.samples.resize(n);
    for (size_t i = 0; i < n; ++i)
        s.samples[i] = amp * std::sin(2.0 * std::numbers::pi * f * i / fs);
    return s;
}

double steady_state_amplitude(const SampledSignal& y) {
    // Look at the last quarter, past the transient.
    double peak = 0.0;
    for (size_t i = y.samples.size() * 3 / 4; i < y.samples.size(); ++i)
        peak = std::max(peak, std::fabs(y.samples[i]));
    return peak;
}

}  // namespace

TEST_CASE("bpm to Hz is definitional") {
    CHECK(bpm_to_hz(60.0) == doctest::Approx(1.0));
    CHECK(bpm_to_hz(150.0) == doctest::Approx(2.5));
    CHECK(bpm_to_hz(82.0) == doctest::Approx(1.3667).epsilon(1e-4));
}

TEST_CASE("bandpass edges sit at -3 dB and the center is flat") {
    for (const auto& band : default_bands()) {
        auto f = design_butterworth_bandpass(band, kFs);
        double lo = bpm_to_hz(band.low_bpm), hi = bpm_to_hz(band.high_bpm);
        CHECK(db(f.magnitude(lo, kFs)) == doctest::Approx(-3.0).epsilon(0.17));
        CHECK(db(f.magnitude(hi, kFs)) == doctest::Approx(-3.0).epsilon(0.17));
        double center = std::sqrt(lo * hi);
        CHECK(db(f.magnitude(center, kFs)) >= -0.1);
        CHECK(db(f.magnitude(center, kFs)) <= 0.1);
    }
}

TEST_CASE("bandpass kills DC") {
    for (const auto& band : default_bands()) {
        auto f = design_butterworth_bandpass(band, kFs);
        CHECK(db(f.magnitude(0.0, kFs)) < -40.0);
    }
}

TEST_CASE("all designed filters are stable") {
    for (const auto& band : default_bands()) {
        CHECK(design_butterworth_bandpass(band, kFs, 4).stable());
        CHECK(design_butterworth_bandpass(band, kFs, 8).stable());
    }
    CHECK(design_butterworth_lowpass(1.9, kFs, 4).stable());
    CHECK(design_butterworth_lowpass(5.0, kFs, 2).stable());
}

TEST_CASE("magnitude response is monotone outside the passband") {
    auto f = design_butterworth_bandpass(default_bands()[1], kFs);
    double prev = f.magnitude(bpm_to_hz(82.0), kFs);
    for (double fr = bpm_to_hz(82.0) - 0.05; fr > 0.1; fr -= 0.05) {
        double m = f.magnitude(fr, kFs);
        CHECK(m <= prev + 1e-12);
        prev = m;
    }
    prev = f.magnitude(bpm_to_hz(105.0), kFs);
    for (double fr = bpm_to_hz(105.0) + 0.05; fr < 20.0; fr += 0.05) {
        double m = f.magnitude(fr, kFs);
        CHECK(m <= prev + 1e-12);
        prev = m;
    }
}

TEST_CASE("band edge at or above Nyquist is rejected") {
    CHECK_THROWS_AS(design_butterworth_bandpass(100.0, 128.0, kFs),
                    filter_design_error);
    CHECK_THROWS_AS(design_butterworth_bandpass(2.0, 1.0, kFs), filter_design_error);
}

TEST_CASE("in-band sinusoid passes, out-of-band is rejected") {
    auto f = design_butterworth_bandpass(default_bands()[0], kFs);
    auto in_band = filter_signal(sinusoid(1.15, kFs, 60.0), f);
    CHECK(steady_state_amplitude(in_band) >= 0.9);
    auto out_band = filter_signal(sinusoid(3.0, kFs, 60.0), f);
    CHECK(steady_state_amplitude(out_band) <= 0.1);
}

TEST_CASE("filtering is linear") {
    auto f = design_butterworth_bandpass(default_bands()[2], kFs);
    auto x = sinusoid(1.9, kFs, 10.0);
    auto y1 = filter_signal(x, f);
    SampledSignal xs = x;
    for (double& v : xs.samples) v *= 3.5;
    auto y2 = filter_signal(xs, f);
    for (size_t i = 0; i < y1.samples.size(); ++i)
        CHECK(std::fabs(y2.samples[i] - 3.5 * y1.samples[i]) <=
              1e-9 * std::max(1.0, std::fabs(y1.samples[i])));
    SampledSignal zero = x;
    for (double& v : zero.samples) v = 0.0;
    auto y0 = filter_signal(zero, f);
    for (double v : y0.samples) CHECK(v == 0.0);
}

TEST_CASE("impulse-response energy matches the magnitude-squared integral") {
    auto f = design_butterworth_bandpass(default_bands()[0], kFs);
    SampledSignal imp;
    imp.fs = kFs;
    imp.samples.assign(1 << 17, 0.0);  // long enough for the slow poles to die out
    imp.samples[0] = 1.0;
    auto h = filter_signal(imp, f);
    double energy = 0.0;
    for (double v : h.samples) energy += v * v;

    // Parseval: sum h^2 = (1/fs) * integral of |H(f)|^2 over [0, fs).
    const int nf = 1 << 16;
    double integral = 0.0;
    for (int i = 0; i < nf; ++i) {
        double fr = kFs * (i + 0.5) / nf;
        double m = f.magnitude(fr, kFs);
        integral += m * m;
    }
    integral /= nf;
    CHECK(std::fabs(energy - integral) / integral < 0.01);
}

TEST_CASE("full-wave rectification") {
    SampledSignal x;
    x.samples = {-1.0, 2.0, -3.0};
    auto y = full_wave_rectify(x);
    CHECK(y.samples == std::vector<double>{1.0, 2.0, 3.0});
    auto yy = full_wave_rectify(y);
    CHECK(yy.samples == y.samples);  // idempotent
    for (double v : yy.samples) CHECK(v >= 0.0);
}

TEST_CASE("encoder: zero signal gives an empty train") {
    SampledSignal x;
    x.fs = kFs;
    x.samples.assign(2560, 0.0);
    CHECK(encode_to_spikes(x, EncoderParams{}, 1e-4).empty());
}

TEST_CASE("encoder: constant drive matches the analytic LIF rate within 2%") {
    EncoderParams e;
    e.lif.t_ref = 0.0;
    const double A = 0.05;  // gain * A = 300 pA with default gain 6 nA/unit
    SampledSignal x;
    x.fs = kFs;
    x.samples.assign(static_cast<size_t>(kFs * 10.0), A);
    auto spikes = encode_to_spikes(x, e, 1e-4);
    double drive = e.lif.R * e.gain * A;
    double gap = e.lif.V_th - e.lif.V_rest;
    double expected = 1.0 / (e.lif.tau_m * std::log(drive / (drive - gap)));
    double measured = spikes.size() / 10.0;
    CHECK(std::fabs(measured - expected) / expected < 0.02);
}

TEST_CASE("encoder: monotone in the input") {
    EncoderParams e;
    SampledSignal lo, hi;
    lo.fs = hi.fs = kFs;
    std::mt19937 rng(3);
    for (int i = 0; i < 2560; ++i) {
        double v = (rng() % 1000) / 1000.0 * 0.08;
        lo.samples.push_back(v);
        hi.samples.push_back(v + 0.01);
    }
    CHECK(encode_to_spikes(hi, e, 1e-4).size() >= encode_to_spikes(lo, e, 1e-4).size());
}

TEST_CASE("frontend: band containing the heart rate wins for all four bands") {
    FrontendConfig cfg;
    const double hrs[4] = {70.0, 95.0, 115.0, 140.0};
    for (int b = 0; b < 4; ++b) {
        HRProfile prof{{{0.0, hrs[b]}, {60.0, hrs[b]}}};
        auto ecg = synthetic_ecg(prof, kFs, 11);
        auto trains = frontend_encode(ecg, cfg, 1e-4);
        for (int other = 0; other < 4; ++other) {
            if (other == b) continue;
            CHECK(trains[b].size() > trains[other].size());
        }
        CHECK(trains[b].size() > 60);  // the winning encoder is actually firing
    }
}

TEST_CASE("frontend: 70 bpm drives band 0 at least 5x band 3") {
    FrontendConfig cfg;
    HRProfile prof{{{0.0, 70.0}, {60.0, 70.0}}};
    auto ecg = synthetic_ecg(prof, kFs, 5);
    auto trains = frontend_encode(ecg, cfg, 1e-4);
    CHECK(trains[0].size() >= 5 * std::max<size_t>(1, trains[3].size()));
}

TEST_CASE("frontend: determinism") {
    FrontendConfig cfg;
    HRProfile prof{{{0.0, 95.0}, {30.0, 95.0}}};
    auto ecg = synthetic_ecg(prof, kFs, 2);
    auto a = frontend_encode(ecg, cfg, 1e-4);
    auto b = frontend_encode(ecg, cfg, 1e-4);
    for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("eighth-order reading also meets the edge spec") {
    auto f = design_butterworth_bandpass(default_bands()[0], kFs, 8);
    CHECK(db(f.magnitude(1.0, kFs)) == doctest::Approx(-3.0).epsilon(0.17));
    CHECK(db(f.magnitude(bpm_to_hz(82.0), kFs)) == doctest::Approx(-3.0).epsilon(0.17));
}
