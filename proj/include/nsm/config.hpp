#pragma once

#include <optional>
#include <string>

#include "nsm/analysis.hpp"
#include "nsm/dsp.hpp"
#include "nsm/stimuli.hpp"

namespace nsm {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimingConfig {
    bool enabled = true;
    double duration = 0.5;  // [s]
    double rate = 100.0;    // [Hz] per gate neuron
};

struct NetworkConfig {
    int n_states = 4;
    int pop_size = 16;
    std::uint64_t seed = 1;
    WeightTable weights;
    TopologyOptions topology;
    PrimingConfig priming;
    double stimulus_weight = WeightTable{}.stimulus;  // external spike drive [A]
};

struct EngineConfig {
    double dt = 1e-4;
    double duration = 0.0;  // 0: derived from the input signal / program
    std::uint64_t seed = 1;
    std::vector<std::string> record;
};

struct AnalysisConfig {
    double window = 0.1;
    double active_threshold = 10.0;
    PowerModel power;
};

struct InputConfig {
    std::string type = "synthetic";  // "synthetic" or "file"
    std::string path;
    HRProfile profile{{{0.0, 60.0}, {120.0, 60.0}}};
    double noise_amplitude = 0.0;
    double fs = 256.0;
};

struct RunConfig {
    NetworkConfig network;
    FrontendConfig frontend;
    EngineConfig engine;
    AnalysisConfig analysis;
    InputConfig input;

    void validate() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& cfg);  // normalized JSON

}  // namespace nsm
