#pragma once

#include <string>
#include <vector>

#include "nsm/analysis.hpp"
#include "nsm/dsp.hpp"

namespace nsm {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EcgRecording {
    double fs = 256.0;
    std::vector<double> samples;  // [mV]
    std::string subject;
    std::string activity;

    SampledSignal signal() const;
};

// Signal CSV format: first line `fs_hz=<rate>`, then a `t,mv` header row,
// then one `t,value` row per sample. `fs_override` supplies the rate when
// the header is missing (0 means "require the header").
EcgRecording read_ecg_csv(const std::string& path, double fs_override = 0.0);
void write_ecg_csv(const std::string& path, const SampledSignal& sig);

// Spike-drive CSV: header `time_s,population,neuron`.
std::vector<SpikeEvent> read_spike_csv(const std::string& path);

void write_raster_csv(const std::string& path, const SpikeRecord& rec);
void write_rates_csv(const std::string& path, const SpikeRecord& rec, double window);
void write_timeline_csv(const std::string& path, const StateTimeline& tl);
void write_power_json(const std::string& path, double watts, const PowerModel& m);
void write_violations_json(const std::string& path,
                           const std::vector<MonotonicityViolation>& v);
void write_rate_summary_json(const std::string& path, const SpikeRecord& rec,
                             double window);
void write_edge_list_csv(const std::string& path, const NetworkSpec& net,
                         const ConnectivityMatrix& conn);
void write_filter_csv(const std::string& path, const BiquadCascade& f);

}  // namespace nsm
