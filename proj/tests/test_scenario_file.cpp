#include <filesystem>

#include "doctest.h"
#include "relaysim/errors.hpp"
#include "relaysim/scenario_file.hpp"
#include "relaysim/units.hpp"

using namespace relaysim;
using namespace relaysim::scenario;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios{RELAYSIM_SCENARIO_DIR};

std::string error_of(std::string_view text) {
    try {
        (void)build_scenario(parse_scenario(text, "t.scn"));
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

constexpr std::string_view kSatellite = R"(
[topology]
kind = satellite
r1 = 10ls
period = 1d

[simulation]
blocktime = 20s
)";

}  // namespace

TEST_CASE("bundled scenarios parse and round-trip") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".scn") continue;
        ++count;
        CAPTURE(entry.path().filename().string());
        const auto file = load_scenario(entry.path());
        const auto text = serialize_scenario(file);
        CHECK(parse_scenario(text) == file);
        CHECK(serialize_scenario(parse_scenario(text)) == text);
        CHECK_NOTHROW(build_scenario(file).validate());
        CHECK_NOTHROW(plan(file));
    }
    CHECK(count >= 7);
}

TEST_CASE("earth_mars contents") {
    const auto file = load_scenario(kScenarios / "earth_mars.scn");
    CHECK(file.topology.kind == TopologyKind::ExplicitGraph);
    REQUIRE(file.nodes.size() == 2);
    REQUIRE(file.edges.size() == 1);
    CHECK(file.edges[0].weight == doctest::Approx(451.98).epsilon(1e-12));
    CHECK(file.simulation.blocktime == 600.0);
    CHECK(file.simulation.duration == 30 * 86400.0);
    CHECK(file.simulation.seed == 7);
    CHECK(file.workload.size() == 3);
    CHECK(file.planner.max_confirmation == 3600.0);

    const auto s = build_scenario(file);
    CHECK(s.graph.size() == 2);
    CHECK(s.tx_workload[0].created == 3600.0);
    CHECK(s.tx_workload[2].origin == s.graph.index_of("mars"));

    const auto p = plan(file);
    CHECK(p.bound.rule == planner::BoundRule::Diameter);
    CHECK(p.bound.b_min == doctest::Approx(225.99).epsilon(1e-12));
    CHECK(p.feasibility.verdict == planner::Verdict::SingleCurrency);
}

TEST_CASE("generated topologies") {
    auto file = parse_scenario(kSatellite);
    CHECK(generated_node_ids(file.topology) == std::vector<std::string>{"planet", "satellite"});
    const auto s = build_scenario(file);
    CHECK(s.graph.size() == 2);
    CHECK(s.graph.node(0).region == "planet");
    CHECK(s.graph.node(1).hashpower == 1.0);
    const auto p = plan(file);
    CHECK(p.bound.rule == planner::BoundRule::Satellite);
    CHECK(p.bound.b_min == 5.0);
    CHECK(p.sampled_diameter == doctest::Approx(10.0).epsilon(1e-9));

    const auto lattice = parse_scenario("[topology]\nkind = lattice\nsize = 4 4 4\nalpha = 100s\n");
    CHECK(generated_node_ids(lattice.topology).size() == 64);
    CHECK(plan(lattice).bound.b_min == 450.0);
    CHECK(plan(lattice).bound.rule == planner::BoundRule::Diameter);

    const auto conc = parse_scenario("[topology]\nkind = concentric\nradii = 4ls 6ls\nperiods = 1d 2d\n");
    CHECK(generated_node_ids(conc.topology) == std::vector<std::string>{"p1", "p2"});
    CHECK(plan(conc).bound.b_min == 5.0);

    const auto sep = parse_scenario(
        "[topology]\nkind = separate-systems\nr1 = 2ls\nalpha = 10ls\nr2 = 3ls\nperiods = - 1d\n");
    CHECK(plan(sep).bound.b_min == 7.5);
    CHECK_FALSE(sep.topology.periods[0].has_value());
}

TEST_CASE("node rows override generated defaults") {
    const auto file = parse_scenario(std::string(kSatellite) + "\n[nodes]\nsatellite 0.25 moon 0.5c\n");
    const auto s = build_scenario(file);
    CHECK(s.graph.node(s.graph.index_of("satellite")).region == "moon");
    CHECK(s.velocity(s.graph.index_of("satellite")) == 0.5 * relkin::kSpeedOfLight);
}

TEST_CASE("diagnostics carry the line number") {
    CHECK(error_of("[topology]\nkind = satellite\nr1 = 10ls\ncolour = red\n").starts_with("t.scn:4:"));
    CHECK(error_of("[topology]\nkind = warp\n").starts_with("t.scn:2:"));
    CHECK(error_of("[topology]\nkind = explicit-graph\n[bogus]\n").starts_with("t.scn:3:"));
    CHECK(error_of("[topology]\nkind = explicit-graph\n[nodes]\na 1 x\nb 1 y\n[edges]\na b 5parsecs\n")
              .starts_with("t.scn:7:"));
    CHECK(error_of("[topology]\nkind = satellite\nr1 = 10ls\n[simulation]\nblocktime = 10\n")
              .starts_with("t.scn:5:"));
    CHECK(error_of("[topology]\nkind = satellite\nr1 = 10ls\nr1 = 11ls\n").starts_with("t.scn:4:"));
    CHECK(error_of("kind = satellite\n").starts_with("t.scn:1:"));
    CHECK(error_of("[topology]\nkind = satellite\nr1 = 10ls\n[workload]\n1h satellite pluto\n")
              .starts_with("t.scn:5:"));
}

TEST_CASE("graph errors are not parse errors") {
    const auto file = parse_scenario("[topology]\nkind = explicit-graph\n[nodes]\na 1 x\nb 1 y\n");
    CHECK_THROWS_AS(plan(file), GraphError);
}

TEST_CASE("units") {
    using namespace relaysim::units;
    CHECK(parse_time("7.533min") == doctest::Approx(451.98).epsilon(1e-12));
    CHECK(parse_time("2h") == 7200.0);
    CHECK(parse_time("1y") == 365.25 * 86400.0);
    CHECK(parse_time("250ms") == 0.25);
    CHECK(parse_time("0") == 0.0);
    CHECK_THROWS_AS(parse_time("12"), ParseError);
    CHECK(parse_time("12", true) == 12.0);
    CHECK_THROWS_AS(parse_time("3 fortnights"), ParseError);

    CHECK(parse_length("1ls") == relkin::kSpeedOfLight);
    CHECK(parse_length("2km") == 2000.0);
    CHECK(parse_length("1AU") == 149597870700.0);
    CHECK(parse_light_time("1lmin") == 60.0);
    CHECK(parse_light_time("299792458m") == 1.0);

    CHECK(parse_velocity("0.98c") == 0.98 * relkin::kSpeedOfLight);
    CHECK(parse_velocity("3km/s") == 3000.0);
    CHECK(parse_angle("180deg") == doctest::Approx(3.141592653589793));
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(451.98) == "451.98");
    CHECK(parse_number(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
