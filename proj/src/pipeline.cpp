#include "nsm/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace nsm {

namespace fs = std::filesystem;
using nlohmann::json;

NetworkSpec build_network(const NetworkConfig& cfg) {
    NetworkSpec net = build_nsm_topology(cfg.n_states, cfg.pop_size, cfg.weights,
                                         cfg.topology);
    net.seed = cfg.seed;
    return net;
}

ExternalDrive base_drive(const RunConfig& cfg, const NetworkSpec& net) {
    ExternalDrive drive;
    drive.input_synapse.kind = SynapseKind::FastExc;
    drive.input_synapse.weight = cfg.network.stimulus_weight;
    drive.input_synapse.tau = default_synapse_tau(SynapseKind::FastExc);
    if (cfg.network.priming.enabled && !cfg.network.topology.wta_only)
        drive.spikes = gate_priming(net, cfg.network.priming.duration,
                                    cfg.network.priming.rate, cfg.engine.seed + 17);
    return drive;
}

namespace {

PipelineResult finish(const RunConfig& cfg, NetworkSpec net, ConnectivityMatrix conn,
                      const ExternalDrive& drive, double duration) {
    SimulationConfig sim;
    sim.dt = cfg.engine.dt;
    sim.duration = duration;
    sim.seed = cfg.engine.seed;
    sim.record = cfg.engine.record;

    PipelineResult r;
    r.record = simulate(net, conn, drive, sim);
    r.timeline = decode_state(r.record, net, cfg.analysis.window,
                              cfg.analysis.active_threshold);
    r.violations = check_monotonic(r.timeline);
    r.power_watts = estimate_power(r.record, net, conn, cfg.analysis.power);
    r.net = std::move(net);
    r.conn = std::move(conn);
    return r;
}

}  // namespace

PipelineResult run_detect(const RunConfig& cfg, const SampledSignal& ecg) {
    NetworkSpec net = build_network(cfg.network);
    ConnectivityMatrix conn = sample_connectivity(net);
    ExternalDrive drive = base_drive(cfg, net);

    auto bands = frontend_band_signals(ecg, cfg.frontend);
    for (int b = 0; b < 4 && b < cfg.network.n_states; ++b) {
        ExternalDrive::CurrentChannel ch;
        ch.population = "enc" + std::to_string(b);
        ch.neuron = -1;
        ch.fs = bands[b].fs;
        ch.samples = bands[b].samples;
        for (double& v : ch.samples) v *= cfg.frontend.encoder.gain;
        drive.currents.push_back(std::move(ch));
    }

    double duration = cfg.engine.duration > 0.0 ? cfg.engine.duration
                                                : ecg.samples.size() / ecg.fs;
    return finish(cfg, std::move(net), std::move(conn), drive, duration);
}

PipelineResult run_protocol(const RunConfig& cfg, const StimulusProgram& prog) {
    NetworkSpec net = build_network(cfg.network);
    ConnectivityMatrix conn = sample_connectivity(net);
    ExternalDrive drive = base_drive(cfg, net);

    auto spikes = render_program(prog, net, cfg.engine.seed);
    drive.spikes.insert(drive.spikes.end(), spikes.begin(), spikes.end());

    double duration = cfg.engine.duration > 0.0 ? cfg.engine.duration
                                                : prog.total_duration() + 2.0;
    return finish(cfg, std::move(net), std::move(conn), drive, duration);
}

PipelineResult run_spikes(const RunConfig& cfg, std::vector<SpikeEvent> spikes,
                          double duration) {
    NetworkSpec net = build_network(cfg.network);
    ConnectivityMatrix conn = sample_connectivity(net);
    ExternalDrive drive = base_drive(cfg, net);
    drive.spikes.insert(drive.spikes.end(), spikes.begin(), spikes.end());
    return finish(cfg, std::move(net), std::move(conn), drive, duration);
}

void write_artifacts(const PipelineResult& r, const RunConfig& cfg,
                     const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto p = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    write_raster_csv(p("raster.csv"), r.record);
    write_rates_csv(p("rates.csv"), r.record, cfg.analysis.window);
    write_timeline_csv(p("timeline.csv"), r.timeline);
    write_power_json(p("power.json"), r.power_watts, cfg.analysis.power);
    write_violations_json(p("violations.json"), r.violations);
    write_edge_list_csv(p("edges.csv"), r.net, r.conn);
    write_rate_summary_json(p("summary.json"), r.record, cfg.analysis.window);

    json manifest = {
        {"status", r.violations.empty() ? "ok" : "violations"},
        {"files", {"raster.csv", "rates.csv", "timeline.csv", "power.json",
                   "violations.json", "edges.csv", "summary.json"}},
        {"total_spikes", r.record.events.size()},
        {"duration_s", r.record.duration},
        {"fan_in_warnings", fan_in_warnings(r.net, r.conn)},
        {"config", json::parse(serialize_config(cfg))}};
    std::ofstream out(p("manifest.json"));
    if (!out) throw io_error(std::string("cannot write manifest in ") + out_dir);
    out << manifest.dump(2) << "\n";
}

}  // namespace nsm
