#include "nsm/io.hpp"

#include "nsm/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsm {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    return out;
}

// Locale-independent, round-trippable formatting.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

SampledSignal EcgRecording::signal() const {
    SampledSignal s;
    s.fs = fs;
    s.samples = samples;
    s.units = "mV";
    return s;
}

EcgRecording read_ecg_csv(const std::string& path, double fs_override) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);

    EcgRecording rec;
    rec.fs = 0.0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (line.rfind("fs_hz=", 0) == 0) {
            rec.fs = std::stod(line.substr(6));
            continue;
        }
        if (line.rfind("t,", 0) == 0) continue;  // column header
        std::stringstream ss(line);
        std::string tcol, vcol;
        if (!std::getline(ss, tcol, ',') || !std::getline(ss, vcol, ','))
            throw io_error("malformed row at line " + std::to_string(lineno) +
                           " of " + path);
        double v;
        try {
            size_t pos = 0;
            v = std::stod(vcol, &pos);
        } catch (const std::exception&) {
            throw io_error("unparseable sample at line " + std::to_string(lineno) +
                           " of " + path);
        }
        if (!std::isfinite(v))
            throw io_error("non-finite sample at line " + std::to_string(lineno) +
                           " of " + path);
        rec.samples.push_back(v);
    }
    if (rec.fs <= 0.0) rec.fs = fs_override;
    if (rec.fs <= 0.0)
        throw config_error("missing sample rate: no fs_hz header in " + path +
                           " and no rate supplied");
    return rec;
}

void write_ecg_csv(const std::string& path, const SampledSignal& sig) {
    auto out = open_out(path);
    out << "fs_hz=" << fmt(sig.fs) << "\n";
    out << "t,mv\n";
    for (size_t i = 0; i < sig.samples.size(); ++i)
        out << fmt(i / sig.fs) << "," << fmt(sig.samples[i]) << "\n";
}

std::vector<SpikeEvent> read_spike_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::vector<SpikeEvent> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("time_s", 0) == 0) continue;
        std::stringstream ss(line);
        std::string t, p, n;
        if (!std::getline(ss, t, ',') || !std::getline(ss, p, ',') ||
            !std::getline(ss, n, ','))
            throw io_error("malformed spike row at line " + std::to_string(lineno));
        out.push_back({std::stod(t), std::stoi(p), std::stoi(n)});
    }
    return out;
}

void write_raster_csv(const std::string& path, const SpikeRecord& rec) {
    auto out = open_out(path);
    out << "time_s,population,neuron\n";
    for (const auto& ev : rec.events)
        out << fmt(ev.t) << "," << rec.population_ids[ev.population] << ","
            << ev.neuron << "\n";
}

void write_rates_csv(const std::string& path, const SpikeRecord& rec, double window) {
    auto out = open_out(path);
    out << "t_start";
    for (const auto& id : rec.population_ids) out << "," << id;
    out << "\n";
    std::vector<std::vector<double>> rates;
    for (const auto& id : rec.population_ids)
        rates.push_back(firing_rate(rec, id, window));
    size_t n = rates.empty() ? 0 : rates[0].size();
    for (size_t w = 0; w < n; ++w) {
        out << fmt(w * window);
        for (const auto& r : rates) out << "," << fmt(r[w]);
        out << "\n";
    }
}

void write_timeline_csv(const std::string& path, const StateTimeline& tl) {
    auto out = open_out(path);
    out << "t_start,t_end,state\n";
    for (const auto& w : tl.windows) {
        out << fmt(w.t_start) << "," << fmt(w.t_end) << ",";
        if (w.state == kNoState) out << "none";
        else out << w.state;
        out << "\n";
    }
}

void write_power_json(const std::string& path, double watts, const PowerModel& m) {
    json j = {{"power_watts", watts},
              {"model",
               {{"energy_per_spike", m.energy_per_spike},
                {"energy_per_route", m.energy_per_route},
                {"static_power", m.static_power}}}};
    open_out(path) << j.dump(2) << "\n";
}

void write_violations_json(const std::string& path,
                           const std::vector<MonotonicityViolation>& v) {
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back({{"t", x.t}, {"from", x.from}, {"to", x.to}});
    json j = {{"count", v.size()}, {"violations", arr}};
    open_out(path) << j.dump(2) << "\n";
}

void write_rate_summary_json(const std::string& path, const SpikeRecord& rec,
                             double window) {
    json pops = json::object();
    for (size_t p = 0; p < rec.population_ids.size(); ++p) {
        auto rates = firing_rate(rec, rec.population_ids[p], window);
        pops[rec.population_ids[p]] = {{"spikes", rec.counts[p]},
                                       {"windowed_rates_hz", rates}};
    }
    json j = {{"duration_s", rec.duration}, {"window_s", window},
              {"populations", pops}};
    open_out(path) << j.dump(2) << "\n";
}

void write_edge_list_csv(const std::string& path, const NetworkSpec& net,
                         const ConnectivityMatrix& conn) {
    auto out = open_out(path);
    out << "src,dst,kind,weight\n";
    for (size_t i = 0; i < net.projections.size(); ++i) {
        const auto& pr = net.projections[i];
        for (const auto& e : conn.edges[i])
            out << pr.src << "[" << e.src << "]," << pr.dst << "[" << e.dst << "],"
                << to_string(pr.kind) << "," << fmt(pr.weight) << "\n";
    }
}

void write_filter_csv(const std::string& path, const BiquadCascade& f) {
    auto out = open_out(path);
    out << "section,b0,b1,b2,a1,a2\n";
    for (size_t i = 0; i < f.sections.size(); ++i) {
        const auto& s = f.sections[i];
        // Fold the overall gain into the first section.
        double g = i == 0 ? f.gain : 1.0;
        out << i << "," << fmt(s.b0 * g) << "," << fmt(s.b1 * g) << ","
            << fmt(s.b2 * g) << "," << fmt(s.a1) << "," << fmt(s.a2) << "\n";
    }
}

}  // namespace nsm
