#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "nsm/network.hpp"

using namespace nsm;

namespace {

// Table of connection classes the built topology must realize, one projection
// family each: {label, kind, probability}.
struct TableRow {
    const char* label;
    SynapseKind kind;
    double p;
};
constexpr TableRow kConnectionTable[] = {
    {"wta.state_inh", SynapseKind::SlowExc, 0.60},
    {"wta.inh_state", SynapseKind::SlowInh, 0.60},
    {"wta.state_state", SynapseKind::SlowExc, 0.83},
    {"wta.inh_inh", SynapseKind::SlowInh, 0.20},
    {"gating.gate_inh", SynapseKind::SlowExc, 0.30},
    {"gating.inh_gate", SynapseKind::SlowInh, 0.30},
    {"gating.gate_gate", SynapseKind::SlowExc, 0.50},
    {"gating.inh_inh", SynapseKind::SlowInh, 0.50},
    {"monotonic.gate_state", SynapseKind::SlowInh, 1.0},
    {"monotonic.state_gate_gaba", SynapseKind::SlowInh, 1.0},
    {"monotonic.state_gate_ampa", SynapseKind::FastExc, 1.0},
    {"input.lif_state", SynapseKind::FastExc, 1.0},
};

NetworkSpec standard() { return build_nsm_topology(4, 16); }

}  // namespace

TEST_CASE("four states at size 16 give 176 core neurons plus 4 encoders") {
    auto net = standard();
    int core = 0, encoders = 0, n_pops = 0;
    for (const auto& p : net.populations) {
        if (p.role == PopulationRole::InputEncoder) encoders += p.size;
        else {
            core += p.size;
            ++n_pops;
        }
    }
    CHECK(core == 176);
    CHECK(n_pops == 11);  // 4 state + 1 wta inh + 3 gate + 3 gate inh
    CHECK(encoders == 4);
}

TEST_CASE("recurrent state projection is NMDA at 0.83") {
    auto net = standard();
    bool found = false;
    for (const auto& pr : net.projections) {
        if (pr.label == "wta.state_state") {
            CHECK(pr.kind == SynapseKind::SlowExc);
            CHECK(pr.probability == doctest::Approx(0.83));
            CHECK(pr.src == pr.dst);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("two states give exactly one gate pair, state 0 gateless") {
    auto net = build_nsm_topology(2, 16);
    int gates = 0, gate_inhs = 0;
    for (const auto& p : net.populations) {
        if (p.role == PopulationRole::Gate) {
            ++gates;
            CHECK(p.state_index == 1);
        }
        if (p.role == PopulationRole::GateInh) ++gate_inhs;
    }
    CHECK(gates == 1);
    CHECK(gate_inhs == 1);
    for (const auto& pr : net.projections)
        if (pr.label == "monotonic.gate_state") CHECK(pr.dst == "state1");
}

TEST_CASE("fewer than two states is rejected") {
    CHECK_THROWS_AS(build_nsm_topology(1, 16), topology_error);
}

TEST_CASE("reset state receives GABA_B from the shared inhibitor only") {
    auto net = standard();
    for (const auto& pr : net.projections) {
        if (pr.dst != "state0" || !is_inhibitory(pr.kind)) continue;
        CHECK(pr.src == "wta_inh");
    }
}

TEST_CASE("each gate is dis-inhibited by exactly its predecessor state") {
    auto net = standard();
    for (int k = 1; k < 4; ++k) {
        std::set<std::string> gaba_sources;
        for (const auto& pr : net.projections)
            if (pr.dst == "gate" + std::to_string(k) && pr.kind == SynapseKind::SlowInh &&
                net.population(pr.src).role == PopulationRole::State)
                gaba_sources.insert(pr.src);
        CHECK(gaba_sources == std::set<std::string>{"state" + std::to_string(k - 1)});
    }
}

TEST_CASE("re-arm AMPA skips the active state's own gate and the next") {
    auto net = standard();
    std::map<std::string, std::set<std::string>> ampa;  // state -> gates
    for (const auto& pr : net.projections)
        if (pr.label == "monotonic.state_gate_ampa") ampa[pr.src].insert(pr.dst);
    CHECK(ampa["state0"] == std::set<std::string>{"gate2", "gate3"});
    CHECK(ampa["state1"] == std::set<std::string>{"gate3"});
    CHECK(ampa["state2"] == std::set<std::string>{"gate1"});
    CHECK(ampa["state3"] == std::set<std::string>{"gate1", "gate2"});
}

TEST_CASE("every connection class appears as exactly one projection family") {
    auto net = standard();
    for (const auto& row : kConnectionTable) {
        std::set<std::pair<SynapseKind, double>> variants;
        int count = 0;
        for (const auto& pr : net.projections) {
            if (pr.label != row.label) continue;
            ++count;
            variants.insert({pr.kind, pr.probability});
        }
        INFO(row.label);
        CHECK(count > 0);
        CHECK(variants.size() == 1);
        CHECK(variants.begin()->first == row.kind);
        CHECK(variants.begin()->second == doctest::Approx(row.p));
    }
    // And nothing beyond the table.
    std::set<std::string> known;
    for (const auto& row : kConnectionTable) known.insert(row.label);
    for (const auto& pr : net.projections) CHECK(known.count(pr.label) == 1);
}

TEST_CASE("wta-only variant has no gates and no monotonic wiring") {
    TopologyOptions opt;
    opt.wta_only = true;
    auto net = build_nsm_topology(4, 16, {}, opt);
    for (const auto& p : net.populations)
        CHECK(p.role != PopulationRole::Gate);
    for (const auto& pr : net.projections)
        CHECK(pr.label.rfind("monotonic.", 0) != 0);
}

TEST_CASE("shared gate inhibitor variant keeps one GateInh population") {
    TopologyOptions opt;
    opt.shared_gate_inhibitor = true;
    auto net = build_nsm_topology(4, 16, {}, opt);
    int gate_inhs = 0;
    for (const auto& p : net.populations)
        if (p.role == PopulationRole::GateInh) ++gate_inhs;
    CHECK(gate_inhs == 1);
}

TEST_CASE("sampling: p=1 inter-population gives full connectivity") {
    auto net = standard();
    auto conn = sample_connectivity(net);
    for (size_t i = 0; i < net.projections.size(); ++i) {
        const auto& pr = net.projections[i];
        if (pr.probability != 1.0 || pr.src == pr.dst) continue;
        size_t expected = static_cast<size_t>(net.population(pr.src).size) *
                          net.population(pr.dst).size;
        CHECK(conn.edges[i].size() == expected);
    }
}

TEST_CASE("sampling: p=0 gives no edges") {
    auto net = standard();
    for (auto& pr : net.projections) pr.probability = 0.0;
    auto conn = sample_connectivity(net);
    for (const auto& e : conn.edges) CHECK(e.empty());
}

TEST_CASE("sampling: no autapses in recurrent projections") {
    auto net = standard();
    auto conn = sample_connectivity(net);
    for (size_t i = 0; i < net.projections.size(); ++i) {
        if (net.projections[i].src != net.projections[i].dst) continue;
        for (const auto& e : conn.edges[i]) CHECK(e.src != e.dst);
    }
}

TEST_CASE("sampling: deterministic for a fixed seed, different across seeds") {
    auto net = standard();
    net.seed = 42;
    auto a = sample_connectivity(net);
    auto b = sample_connectivity(net);
    REQUIRE(a.edges.size() == b.edges.size());
    for (size_t i = 0; i < a.edges.size(); ++i) {
        REQUIRE(a.edges[i].size() == b.edges[i].size());
        for (size_t j = 0; j < a.edges[i].size(); ++j) {
            CHECK(a.edges[i][j].src == b.edges[i][j].src);
            CHECK(a.edges[i][j].dst == b.edges[i][j].dst);
        }
    }
    net.seed = 43;
    auto c = sample_connectivity(net);
    size_t na = 0, nc = 0;
    for (size_t i = 0; i < a.edges.size(); ++i) na += a.edges[i].size();
    for (size_t i = 0; i < c.edges.size(); ++i) nc += c.edges[i].size();
    CHECK(na != nc);  // overwhelmingly likely
}

TEST_CASE("sampling: binomial statistics at p=0.6 over many seeds") {
    // One 16x16 inter-population projection at p=0.6: n=256 Bernoulli draws.
    NetworkSpec net;
    PopulationSpec a, b;
    a.id = "a";
    a.size = 16;
    b.id = "b";
    b.size = 16;
    net.populations = {a, b};
    ProjectionSpec pr;
    pr.label = "test";
    pr.src = "a";
    pr.dst = "b";
    pr.probability = 0.6;
    net.projections = {pr};

    const int n_seeds = 10000;
    double total = 0.0;
    for (int s = 0; s < n_seeds; ++s) {
        net.seed = s;
        total += sample_connectivity(net).edges[0].size();
    }
    double mean = total / n_seeds;
    double expected = 256 * 0.6;                       // 153.6
    double se = std::sqrt(256 * 0.6 * 0.4 / n_seeds);  // standard error of the mean
    CHECK(std::fabs(mean - expected) < 3.0 * se);
}

TEST_CASE("edges respect their projection endpoints") {
    auto net = standard();
    auto conn = sample_connectivity(net);
    for (size_t i = 0; i < net.projections.size(); ++i) {
        const auto& pr = net.projections[i];
        int n_src = net.population(pr.src).size;
        int n_dst = net.population(pr.dst).size;
        for (const auto& e : conn.edges[i]) {
            CHECK(e.src >= 0);
            CHECK(e.src < n_src);
            CHECK(e.dst >= 0);
            CHECK(e.dst < n_dst);
        }
    }
}

TEST_CASE("fan-in warning triggers above the cap") {
    auto net = standard();
    auto conn = sample_connectivity(net);
    auto warn64 = fan_in_warnings(net, conn, 64);
    auto warn_huge = fan_in_warnings(net, conn, 100000);
    CHECK(warn_huge.empty());
    // State populations aggregate >64 presynaptic partners in this topology.
    CHECK(!warn64.empty());
}

TEST_CASE("invalid specs are rejected") {
    auto net = standard();
    net.populations[0].id = net.populations[1].id;
    CHECK_THROWS_AS(net.validate(), topology_error);

    net = standard();
    net.projections[0].probability = 1.5;
    CHECK_THROWS_AS(net.validate(), topology_error);

    net = standard();
    net.projections[0].src = "nope";
    CHECK_THROWS_AS(net.validate(), topology_error);
}
