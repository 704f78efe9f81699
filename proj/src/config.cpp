#include "nsm/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsm {

using nlohmann::json;

namespace {

json to_json(const AdExParams& p) {
    return {{"C", p.C},           {"g_L", p.g_L},     {"E_L", p.E_L},
            {"V_T", p.V_T},       {"Delta_T", p.Delta_T}, {"V_cut", p.V_cut},
            {"V_r", p.V_r},       {"a", p.a},         {"b", p.b},
            {"tau_w", p.tau_w},   {"t_ref", p.t_ref}};
}

AdExParams adex_from(const json& j, AdExParams d = {}) {
    d.C = j.value("C", d.C);
    d.g_L = j.value("g_L", d.g_L);
    d.E_L = j.value("E_L", d.E_L);
    d.V_T = j.value("V_T", d.V_T);
    d.Delta_T = j.value("Delta_T", d.Delta_T);
    d.V_cut = j.value("V_cut", d.V_cut);
    d.V_r = j.value("V_r", d.V_r);
    d.a = j.value("a", d.a);
    d.b = j.value("b", d.b);
    d.tau_w = j.value("tau_w", d.tau_w);
    d.t_ref = j.value("t_ref", d.t_ref);
    return d;
}

json to_json(const LIFParams& p) {
    return {{"tau_m", p.tau_m},   {"R", p.R},     {"V_rest", p.V_rest},
            {"V_th", p.V_th},     {"V_r", p.V_r}, {"t_ref", p.t_ref}};
}

LIFParams lif_from(const json& j, LIFParams d = {}) {
    d.tau_m = j.value("tau_m", d.tau_m);
    d.R = j.value("R", d.R);
    d.V_rest = j.value("V_rest", d.V_rest);
    d.V_th = j.value("V_th", d.V_th);
    d.V_r = j.value("V_r", d.V_r);
    d.t_ref = j.value("t_ref", d.t_ref);
    return d;
}

json to_json(const WeightTable& w) {
    return {{"state_state", w.state_state},
            {"state_inh", w.state_inh},
            {"inh_state", w.inh_state},
            {"inh_inh", w.inh_inh},
            {"gate_gate", w.gate_gate},
            {"gate_inh", w.gate_inh},
            {"inh_gate", w.inh_gate},
            {"ginh_ginh", w.ginh_ginh},
            {"gate_state", w.gate_state},
            {"state_gate_gaba", w.state_gate_gaba},
            {"state_gate_ampa", w.state_gate_ampa},
            {"encoder_state", w.encoder_state},
            {"stimulus", w.stimulus}};
}

WeightTable weights_from(const json& j, WeightTable d = {}) {
    d.state_state = j.value("state_state", d.state_state);
    d.state_inh = j.value("state_inh", d.state_inh);
    d.inh_state = j.value("inh_state", d.inh_state);
    d.inh_inh = j.value("inh_inh", d.inh_inh);
    d.gate_gate = j.value("gate_gate", d.gate_gate);
    d.gate_inh = j.value("gate_inh", d.gate_inh);
    d.inh_gate = j.value("inh_gate", d.inh_gate);
    d.ginh_ginh = j.value("ginh_ginh", d.ginh_ginh);
    d.gate_state = j.value("gate_state", d.gate_state);
    d.state_gate_gaba = j.value("state_gate_gaba", d.state_gate_gaba);
    d.state_gate_ampa = j.value("state_gate_ampa", d.state_gate_ampa);
    d.encoder_state = j.value("encoder_state", d.encoder_state);
    d.stimulus = j.value("stimulus", d.stimulus);
    return d;
}

}  // namespace

void RunConfig::validate() const {
    if (network.n_states < 2) throw config_error("network.n_states must be >= 2");
    if (network.pop_size < 1) throw config_error("network.pop_size must be >= 1");
    if (!(engine.dt > 0.0)) throw config_error("engine.dt must be positive");
    if (engine.duration < 0.0) throw config_error("engine.duration must be nonnegative");
    if (!(analysis.window > 0.0)) throw config_error("analysis.window must be positive");
    if (input.type != "synthetic" && input.type != "file")
        throw config_error("input.type must be 'synthetic' or 'file'");
    if (input.type == "synthetic") {
        try {
            input.profile.validate();
        } catch (const std::exception& e) {
            throw config_error(std::string("input.profile: ") + e.what());
        }
    }
    network.topology.adex.validate();
    network.topology.encoder_lif.validate();
    frontend.encoder.lif.validate();
    if (!(frontend.encoder.gain > 0.0)) throw config_error("frontend.encoder.gain must be positive");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config parse failure: ") + e.what());
    }
    RunConfig c;
    try {
        if (j.contains("network")) {
            const auto& n = j["network"];
            c.network.n_states = n.value("n_states", c.network.n_states);
            c.network.pop_size = n.value("pop_size", c.network.pop_size);
            c.network.seed = n.value("seed", c.network.seed);
            c.network.stimulus_weight = n.value("stimulus_weight", c.network.stimulus_weight);
            if (n.contains("weights")) c.network.weights = weights_from(n["weights"]);
            c.network.topology.wta_only = n.value("wta_only", false);
            c.network.topology.shared_gate_inhibitor =
                n.value("shared_gate_inhibitor", false);
            c.network.topology.encoder_size = n.value("encoder_size", 1);
            c.network.topology.adex_encoders = n.value("adex_encoders", false);
            if (n.contains("adex")) c.network.topology.adex = adex_from(n["adex"]);
            if (n.contains("encoder_lif"))
                c.network.topology.encoder_lif = lif_from(n["encoder_lif"]);
            if (n.contains("priming")) {
                c.network.priming.enabled = n["priming"].value("enabled", true);
                c.network.priming.duration = n["priming"].value("duration", 0.5);
                c.network.priming.rate = n["priming"].value("rate", 100.0);
            }
        }
        if (j.contains("frontend")) {
            const auto& f = j["frontend"];
            c.frontend.filter_order = f.value("filter_order", 4);
            c.frontend.prestage = f.value("prestage", true);
            c.frontend.qrs_low_hz = f.value("qrs_low_hz", 5.0);
            c.frontend.qrs_high_hz = f.value("qrs_high_hz", 40.0);
            c.frontend.qrs_order = f.value("qrs_order", 4);
            c.frontend.envelope_cutoff_hz = f.value("envelope_cutoff_hz", 1.9);
            c.frontend.envelope_order = f.value("envelope_order", 4);
            c.frontend.input_scale = f.value("input_scale", 1.0);
            if (f.contains("bands")) {
                auto b = f["bands"];
                for (int i = 0; i < 4 && i < static_cast<int>(b.size()); ++i) {
                    c.frontend.bands[i].index = i;
                    c.frontend.bands[i].low_bpm = b[i][0];
                    c.frontend.bands[i].high_bpm = b[i][1];
                }
            }
            if (f.contains("encoder")) {
                c.frontend.encoder.gain = f["encoder"].value("gain", c.frontend.encoder.gain);
                if (f["encoder"].contains("lif"))
                    c.frontend.encoder.lif = lif_from(f["encoder"]["lif"]);
            }
        }
        if (j.contains("engine")) {
            const auto& e = j["engine"];
            c.engine.dt = e.value("dt", 1e-4);
            c.engine.duration = e.value("duration", 0.0);
            c.engine.seed = e.value("seed", 1);
            c.engine.record = e.value("record", std::vector<std::string>{});
        }
        if (j.contains("analysis")) {
            const auto& a = j["analysis"];
            c.analysis.window = a.value("window", 0.1);
            c.analysis.active_threshold = a.value("active_threshold", 10.0);
            if (a.contains("power")) {
                c.analysis.power.energy_per_spike =
                    a["power"].value("energy_per_spike", 10.2e-9);
                c.analysis.power.energy_per_route =
                    a["power"].value("energy_per_route", 0.0);
                c.analysis.power.static_power = a["power"].value("static_power", 0.0);
            }
        }
        if (j.contains("input")) {
            const auto& i = j["input"];
            c.input.type = i.value("type", "synthetic");
            c.input.path = i.value("path", "");
            c.input.noise_amplitude = i.value("noise_amplitude", 0.0);
            c.input.fs = i.value("fs", 256.0);
            if (i.contains("profile")) {
                c.input.profile.knots.clear();
                for (const auto& k : i["profile"])
                    c.input.profile.knots.emplace_back(k[0], k[1]);
            }
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("config field error: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json profile = json::array();
    for (const auto& [t, bpm] : c.input.profile.knots) profile.push_back({t, bpm});
    json bands = json::array();
    for (const auto& b : c.frontend.bands) bands.push_back({b.low_bpm, b.high_bpm});

    json j = {
        {"network",
         {{"n_states", c.network.n_states},
          {"pop_size", c.network.pop_size},
          {"seed", c.network.seed},
          {"stimulus_weight", c.network.stimulus_weight},
          {"weights", to_json(c.network.weights)},
          {"wta_only", c.network.topology.wta_only},
          {"shared_gate_inhibitor", c.network.topology.shared_gate_inhibitor},
          {"encoder_size", c.network.topology.encoder_size},
          {"adex_encoders", c.network.topology.adex_encoders},
          {"adex", to_json(c.network.topology.adex)},
          {"encoder_lif", to_json(c.network.topology.encoder_lif)},
          {"priming",
           {{"enabled", c.network.priming.enabled},
            {"duration", c.network.priming.duration},
            {"rate", c.network.priming.rate}}}}},
        {"frontend",
         {{"filter_order", c.frontend.filter_order},
          {"prestage", c.frontend.prestage},
          {"qrs_low_hz", c.frontend.qrs_low_hz},
          {"qrs_high_hz", c.frontend.qrs_high_hz},
          {"qrs_order", c.frontend.qrs_order},
          {"envelope_cutoff_hz", c.frontend.envelope_cutoff_hz},
          {"envelope_order", c.frontend.envelope_order},
          {"input_scale", c.frontend.input_scale},
          {"bands", bands},
          {"encoder",
           {{"gain", c.frontend.encoder.gain}, {"lif", to_json(c.frontend.encoder.lif)}}}}},
        {"engine",
         {{"dt", c.engine.dt},
          {"duration", c.engine.duration},
          {"seed", c.engine.seed},
          {"record", c.engine.record}}},
        {"analysis",
         {{"window", c.analysis.window},
          {"active_threshold", c.analysis.active_threshold},
          {"power",
           {{"energy_per_spike", c.analysis.power.energy_per_spike},
            {"energy_per_route", c.analysis.power.energy_per_route},
            {"static_power", c.analysis.power.static_power}}}}},
        {"input",
         {{"type", c.input.type},
          {"path", c.input.path},
          {"noise_amplitude", c.input.noise_amplitude},
          {"fs", c.input.fs},
          {"profile", profile}}}};
    return j.dump(2) + "\n";
}

}  // namespace nsm
