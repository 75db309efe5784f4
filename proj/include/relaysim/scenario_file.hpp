#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaysim/planner.hpp"
#include "relaysim/simcore.hpp"
#include "relaysim/topo.hpp"

// Declarative scenario documents. The format is line oriented: `[section]`
// headers, `key = value` lines in keyed sections and whitespace-separated rows
// in table sections. `#` starts a comment. Dimensional values carry explicit
// units (see units.hpp) and are stored here in SI: meters, seconds, m/s.
// Orbital radii and system separations are stored as light-travel seconds.

namespace relaysim::scenario {

enum class TopologyKind { ExplicitGraph, Satellite, Concentric, SeparateSystems, Lattice };

const char* to_string(TopologyKind kind);

struct TopologySpec {
    TopologyKind kind = TopologyKind::ExplicitGraph;
    std::vector<double> radii;                  // light-seconds: satellite 1, separate 2, concentric >= 2
    double alpha = 0.0;                         // separate: center separation (ls); lattice: edge delay (s)
    std::vector<std::optional<double>> periods;  // per body; nullopt = stationary
    std::vector<double> phases;                  // per body, radians
    int lattice_l = 0;
    int lattice_w = 0;
    int lattice_h = 0;

    friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

struct NodeRow {
    std::string id;
    double hashpower = 1.0;
    std::string region;
    double velocity = 0.0;  // m/s

    friend bool operator==(const NodeRow&, const NodeRow&) = default;
};

struct EdgeRow {
    std::string a;
    std::string b;
    double weight = 0.0;  // seconds

    friend bool operator==(const EdgeRow&, const EdgeRow&) = default;
};

struct SimulationSpec {
    double blocktime = 600.0;
    double duration = 600000.0;
    std::uint64_t seed = 1;
    simcore::MiningModel mining = simcore::MiningModel::Poisson;
    unsigned hash_bits = 8;

    friend bool operator==(const SimulationSpec&, const SimulationSpec&) = default;
};

struct WorkloadRow {
    double created = 0.0;
    std::string origin;
    std::string destination;

    friend bool operator==(const WorkloadRow&, const WorkloadRow&) = default;
};

struct CensorRow {
    std::string node;
    std::vector<std::string> regions;

    friend bool operator==(const CensorRow&, const CensorRow&) = default;
};

inline constexpr double kDefaultMaxConfirmation = 3600.0;

struct PlannerSpec {
    double max_confirmation = kDefaultMaxConfirmation;
    std::optional<double> window;

    friend bool operator==(const PlannerSpec&, const PlannerSpec&) = default;
};

struct ScenarioFile {
    TopologySpec topology;
    std::vector<NodeRow> nodes;
    std::vector<EdgeRow> edges;
    SimulationSpec simulation;
    std::vector<WorkloadRow> workload;
    std::vector<CensorRow> censorship;
    PlannerSpec planner;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Throws ParseError whose message starts with "<source>:<line>:".
ScenarioFile parse_scenario(std::string_view text, std::string_view source = "<scenario>");
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(serialize_scenario(f)) == f.
std::string serialize_scenario(const ScenarioFile& file);

/// Node ids generated by a topology kind ("planet"/"satellite", "p1".., lattice ids).
std::vector<std::string> generated_node_ids(const TopologySpec& topology);

topo::LatencyGraph build_graph(const ScenarioFile& file);
simcore::Scenario build_scenario(const ScenarioFile& file);

struct PlanResult {
    planner::BlocktimeBound bound;
    planner::FeasibilityVerdict feasibility;
    double sampled_diameter = 0.0;  // max graph diameter over the sampled epochs, seconds
};

PlanResult plan(const ScenarioFile& file);

}  // namespace relaysim::scenario
