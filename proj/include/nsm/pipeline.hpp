#pragma once

#include "nsm/config.hpp"
#include "nsm/io.hpp"

namespace nsm {

struct PipelineResult {
    NetworkSpec net;
    ConnectivityMatrix conn;
    SpikeRecord record;
    StateTimeline timeline;
    std::vector<MonotonicityViolation> violations;
    double power_watts = 0.0;
};

NetworkSpec build_network(const NetworkConfig& cfg);

// External drive shared by every run mode: gate priming plus the mode's
// own stimulation.
ExternalDrive base_drive(const RunConfig& cfg, const NetworkSpec& net);

// Full pipeline: frontend on the given signal, then engine, then analysis.
PipelineResult run_detect(const RunConfig& cfg, const SampledSignal& ecg);

// Poisson stimulation protocol straight into the state populations.
PipelineResult run_protocol(const RunConfig& cfg, const StimulusProgram& prog);

// Spikes in, spikes out.
PipelineResult run_spikes(const RunConfig& cfg, std::vector<SpikeEvent> spikes,
                          double duration);

// Fixed artifact bundle: raster.csv, rates.csv, timeline.csv, power.json,
// violations.json, edges.csv, manifest.json. Deterministic byte-for-byte.
void write_artifacts(const PipelineResult& r, const RunConfig& cfg,
                     const std::string& out_dir);

}  // namespace nsm
