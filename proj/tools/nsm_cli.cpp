#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsm/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

nsm::HRProfile load_profile(const std::string& path, double* noise) {
    std::ifstream in(path);
    if (!in) throw nsm::io_error("cannot open profile file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw nsm::config_error(std::string("profile parse failure: ") + e.what());
    }
    nsm::HRProfile p;
    const json& arr = j.is_array() ? j : j.at("profile");
    for (const auto& k : arr) p.knots.emplace_back(k[0], k[1]);
    if (noise && j.is_object()) *noise = j.value("noise_amplitude", *noise);
    p.validate();
    return p;
}

struct CommonOpts {
    std::string config_path;
    std::string input_path;
    std::string out_dir = "out";
    std::string profile_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double dt = 0.0;
    double fs = 0.0;
};

nsm::RunConfig resolve_config(const CommonOpts& o) {
    nsm::RunConfig cfg;
    if (!o.config_path.empty()) cfg = nsm::load_config(o.config_path);
    if (o.seed_set) {
        cfg.engine.seed = o.seed;
        cfg.network.seed = o.seed;
    }
    if (o.dt > 0.0) cfg.engine.dt = o.dt;
    if (!o.profile_path.empty()) {
        cfg.input.type = "synthetic";
        cfg.input.profile = load_profile(o.profile_path, &cfg.input.noise_amplitude);
    }
    if (!o.input_path.empty()) {
        cfg.input.type = "file";
        cfg.input.path = o.input_path;
    }
    cfg.validate();
    return cfg;
}

nsm::SampledSignal resolve_signal(const nsm::RunConfig& cfg) {
    if (cfg.input.type == "file") {
        if (cfg.input.path.empty())
            throw nsm::config_error("input.type is 'file' but no path given");
        return nsm::read_ecg_csv(cfg.input.path, cfg.input.fs).signal();
    }
    return nsm::synthetic_ecg(cfg.input.profile, cfg.input.fs, cfg.engine.seed,
                              cfg.input.noise_amplitude);
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
    cmd->add_option("--config", o.config_path, "run configuration (JSON)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "RNG seed for topology and stimuli")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--dt", o.dt, "integration step [s]");
    if (with_input) {
        cmd->add_option("--input", o.input_path, "ECG CSV file");
        cmd->add_option("--synthetic", o.profile_path, "HR profile file (JSON)");
        cmd->add_option("--fs", o.fs, "sample rate when the input lacks a header");
    }
}

int report(const nsm::PipelineResult& r, const nsm::RunConfig& cfg,
           const std::string& out_dir) {
    nsm::write_artifacts(r, cfg, out_dir);
    int last = nsm::kNoState;
    for (const auto& w : r.timeline.windows)
        if (w.state != nsm::kNoState) last = w.state;
    std::cout << "spikes: " << r.record.events.size()
              << "  final state: " << (last == nsm::kNoState ? std::string("none")
                                                             : std::to_string(last))
              << "  violations: " << r.violations.size()
              << "  power: " << r.power_watts * 1e6 << " uW\n"
              << "artifacts written to " << out_dir << "\n";
    return r.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotonic heart-rate trend detector (spiking state machine)"};
    app.require_subcommand(1);

    CommonOpts detect_o, sim_o, proto_o, synth_o;
    std::string filters_out = "filters";
    double proto_rate = 50.0, proto_segment = 3.0, proto_gap = 2.0;
    bool wta_only = false;
    double sim_duration = 0.0;
    std::string synth_out = "ecg.csv";

    auto* detect = app.add_subcommand("detect", "full pipeline: signal to alerts");
    add_common(detect, detect_o);

    auto* sim = app.add_subcommand("simulate", "spikes in, spikes out");
    add_common(sim, sim_o);
    sim->add_option("--duration", sim_duration, "simulation length [s]");

    auto* proto = app.add_subcommand("protocol", "all-transitions Poisson protocol");
    add_common(proto, proto_o, false);
    proto->add_flag("--wta-only", wta_only, "disable the gating populations");
    proto->add_option("--rate", proto_rate, "stimulation rate [Hz]");
    proto->add_option("--segment", proto_segment, "segment length [s]");
    proto->add_option("--gap", proto_gap, "gap between segments [s]");

    auto* filters = app.add_subcommand("design-filters", "emit filter coefficients");
    filters->add_option("--out", filters_out, "output directory");
    CommonOpts filters_o;
    filters->add_option("--config", filters_o.config_path, "run configuration (JSON)");

    auto* synth = app.add_subcommand("synth", "generate a synthetic ECG recording");
    add_common(synth, synth_o, true);
    synth->add_option("--out-file", synth_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect) {
            auto cfg = resolve_config(detect_o);
            if (detect_o.fs > 0.0) cfg.input.fs = detect_o.fs;
            auto r = nsm::run_detect(cfg, resolve_signal(cfg));
            return report(r, cfg, detect_o.out_dir);
        }
        if (*sim) {
            auto cfg = resolve_config(sim_o);
            if (sim_o.input_path.empty())
                throw nsm::config_error("simulate requires --input (spike CSV)");
            auto spikes = nsm::read_spike_csv(sim_o.input_path);
            double dur = sim_duration;
            if (dur <= 0.0)
                for (const auto& s : spikes) dur = std::max(dur, s.t + 1.0);
            auto r = nsm::run_spikes(cfg, std::move(spikes), dur);
            return report(r, cfg, sim_o.out_dir);
        }
        if (*proto) {
            auto cfg = resolve_config(proto_o);
            cfg.network.topology.wta_only = cfg.network.topology.wta_only || wta_only;
            auto prog = nsm::all_transitions_protocol(cfg.network.n_states, proto_rate,
                                                      proto_segment, proto_gap);
            auto r = nsm::run_protocol(cfg, prog);
            return report(r, cfg, proto_o.out_dir);
        }
        if (*filters) {
            nsm::RunConfig cfg;
            if (!filters_o.config_path.empty())
                cfg = nsm::load_config(filters_o.config_path);
            fs::create_directories(filters_out);
            for (const auto& band : cfg.frontend.bands) {
                auto f = nsm::design_butterworth_bandpass(band, cfg.input.fs,
                                                          cfg.frontend.filter_order);
                nsm::write_filter_csv((fs::path(filters_out) /
                                       ("band" + std::to_string(band.index) + ".csv"))
                                          .string(),
                                      f);
            }
            std::cout << "filter coefficients written to " << filters_out << "\n";
            return 0;
        }
        if (*synth) {
            auto cfg = resolve_config(synth_o);
            auto sig = nsm::synthetic_ecg(cfg.input.profile, cfg.input.fs,
                                          cfg.engine.seed, cfg.input.noise_amplitude);
            nsm::write_ecg_csv(synth_out, sig);
            std::cout << "synthetic ECG written to " << synth_out << "\n";
            return 0;
        }
    } catch (const nsm::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const nsm::invalid_argument_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const nsm::topology_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const nsm::filter_design_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const nsm::io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const nsm::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
