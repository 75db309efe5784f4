#include "relaysim/scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "relaysim/errors.hpp"
#include "relaysim/units.hpp"

namespace relaysim::scenario {

namespace {

using units::format_number;

struct KeyLine {
    std::string key;
    std::string value;
    int line = 0;
};

struct RowLine {
    std::vector<std::string> cells;
    int line = 0;
};

struct RawSection {
    int line = 0;
    std::vector<KeyLine> keys;
    std::vector<RowLine> rows;
};

const std::set<std::string, std::less<>> kKeyedSections{"topology", "simulation", "planner"};
const std::set<std::string, std::less<>> kTableSections{"nodes", "edges", "workload", "censorship"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view source) : source_(source) {}

    [[noreturn]] void fail(int line, const std::string& message) const {
        throw ParseError(fmt::format("{}:{}: {}", source_, line, message), line);
    }

    // Runs `fn` and re-throws any value error with the line attached.
    template <typename Fn>
    auto at(int line, std::string_view field, Fn&& fn) const {
        try {
            return fn();
        } catch (const ParseError& e) {
            fail(line, fmt::format("{}: {}", field, e.what()));
        } catch (const ArgumentError& e) {
            fail(line, fmt::format("{}: {}", field, e.what()));
        }
    }

    std::map<std::string, RawSection, std::less<>> split_sections(std::string_view text) const {
        std::map<std::string, RawSection, std::less<>> sections;
        RawSection* current = nullptr;
        std::string current_name;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) {
                if (eol == text.size()) break;
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "section header must end with ']'");
                std::string name(trim(line.substr(1, line.size() - 2)));
                if (!kKeyedSections.contains(name) && !kTableSections.contains(name)) {
                    fail(line_no, fmt::format("unknown section [{}]", name));
                }
                if (sections.contains(name)) fail(line_no, fmt::format("duplicate section [{}]", name));
                current = &sections[name];
                current->line = line_no;
                current_name = name;
            } else if (current == nullptr) {
                fail(line_no, "content before the first section header");
            } else if (kKeyedSections.contains(current_name)) {
                const auto eq = line.find('=');
                if (eq == std::string_view::npos) {
                    fail(line_no, fmt::format("expected 'key = value' in [{}]", current_name));
                }
                std::string key(trim(line.substr(0, eq)));
                std::string value(trim(line.substr(eq + 1)));
                if (key.empty()) fail(line_no, "empty key");
                for (const auto& k : current->keys) {
                    if (k.key == key) fail(line_no, fmt::format("duplicate key '{}'", key));
                }
                current->keys.push_back({key, value, line_no});
            } else {
                current->rows.push_back({split_ws(line), line_no});
            }
            if (eol == text.size()) break;
        }
        return sections;
    }

    void check_keys(const RawSection& section, std::string_view name,
                    std::initializer_list<std::string_view> allowed) const {
        for (const auto& k : section.keys) {
            if (std::find(allowed.begin(), allowed.end(), k.key) == allowed.end()) {
                fail(k.line, fmt::format("unknown key '{}' in [{}]", k.key, name));
            }
        }
    }

    static const KeyLine* find(const RawSection& section, std::string_view key) {
        for (const auto& k : section.keys) {
            if (k.key == key) return &k;
        }
        return nullptr;
    }

    const KeyLine& require(const RawSection& section, std::string_view name,
                           std::string_view key) const {
        if (const auto* k = find(section, key)) return *k;
        fail(section.line, fmt::format("[{}] is missing required key '{}'", name, key));
    }

    int parse_count(const KeyLine& k, std::string_view text) const {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            fail(k.line, fmt::format("{}: expected an integer, got '{}'", k.key, text));
        }
        return value;
    }

    TopologySpec parse_topology(const RawSection& s) const {
        TopologySpec t;
        const auto& kind = require(s, "topology", "kind");
        if (kind.value == "explicit-graph") {
            t.kind = TopologyKind::ExplicitGraph;
            check_keys(s, "topology", {"kind"});
            return t;
        }
        if (kind.value == "lattice") {
            t.kind = TopologyKind::Lattice;
            check_keys(s, "topology", {"kind", "size", "alpha"});
            const auto& size = require(s, "topology", "size");
            const auto dims = split_ws(size.value);
            if (dims.size() != 3) fail(size.line, "size: expected three counts 'l w h'");
            t.lattice_l = parse_count(size, dims[0]);
            t.lattice_w = parse_count(size, dims[1]);
            t.lattice_h = parse_count(size, dims[2]);
            if (t.lattice_l < 1 || t.lattice_w < 1 || t.lattice_h < 1) {
                fail(size.line, "size: every lattice dimension must be >= 1");
            }
            const auto& alpha = require(s, "topology", "alpha");
            t.alpha = at(alpha.line, "alpha", [&] { return units::parse_time(alpha.value); });
            if (!(t.alpha > 0.0)) fail(alpha.line, "alpha: lattice edge delay must be positive");
            return t;
        }

        std::size_t bodies = 0;
        if (kind.value == "satellite") {
            t.kind = TopologyKind::Satellite;
            check_keys(s, "topology", {"kind", "r1", "period", "phase"});
            t.radii.push_back(light_time(require(s, "topology", "r1")));
            bodies = 1;
        } else if (kind.value == "concentric") {
            t.kind = TopologyKind::Concentric;
            check_keys(s, "topology", {"kind", "radii", "periods", "phases"});
            const auto& radii = require(s, "topology", "radii");
            for (const auto& cell : split_ws(radii.value)) {
                t.radii.push_back(at(radii.line, "radii", [&] { return units::parse_light_time(cell); }));
            }
            if (t.radii.size() < 2) fail(radii.line, "radii: concentric orbits need at least 2 radii");
            bodies = t.radii.size();
        } else if (kind.value == "separate-systems") {
            t.kind = TopologyKind::SeparateSystems;
            check_keys(s, "topology", {"kind", "r1", "alpha", "r2", "periods", "phases"});
            t.radii.push_back(light_time(require(s, "topology", "r1")));
            t.radii.push_back(light_time(require(s, "topology", "r2")));
            t.alpha = light_time(require(s, "topology", "alpha"));
            bodies = 2;
        } else {
            fail(kind.line, fmt::format("kind: unknown topology '{}' (expected explicit-graph, "
                                        "satellite, concentric, separate-systems or lattice)",
                                        kind.value));
        }

        const char* period_key = t.kind == TopologyKind::Satellite ? "period" : "periods";
        const char* phase_key = t.kind == TopologyKind::Satellite ? "phase" : "phases";
        t.periods.assign(bodies, std::nullopt);
        t.phases.assign(bodies, 0.0);
        if (const auto* p = find(s, period_key)) {
            const auto cells = split_ws(p->value);
            if (cells.size() != bodies) {
                fail(p->line, fmt::format("{}: expected {} entries, got {}", p->key, bodies, cells.size()));
            }
            for (std::size_t i = 0; i < bodies; ++i) {
                if (cells[i] == "-") continue;
                const double period = at(p->line, p->key, [&] { return units::parse_time(cells[i]); });
                if (!(period > 0.0)) fail(p->line, fmt::format("{}: periods must be positive", p->key));
                t.periods[i] = period;
            }
        }
        if (const auto* p = find(s, phase_key)) {
            const auto cells = split_ws(p->value);
            if (cells.size() != bodies) {
                fail(p->line, fmt::format("{}: expected {} entries, got {}", p->key, bodies, cells.size()));
            }
            for (std::size_t i = 0; i < bodies; ++i) {
                t.phases[i] = at(p->line, p->key, [&] { return units::parse_angle(cells[i]); });
            }
        }
        return t;
    }

    double light_time(const KeyLine& k) const {
        const double v = at(k.line, k.key, [&] { return units::parse_light_time(k.value); });
        if (v < 0.0) fail(k.line, fmt::format("{}: must be nonnegative", k.key));
        return v;
    }

    SimulationSpec parse_simulation(const RawSection& s) const {
        SimulationSpec sim;
        check_keys(s, "simulation", {"blocktime", "duration", "seed", "mining", "hash_bits"});
        if (const auto* k = find(s, "blocktime")) {
            sim.blocktime = at(k->line, "blocktime", [&] { return units::parse_time(k->value); });
            if (!(sim.blocktime > 0.0)) fail(k->line, "blocktime: must be positive");
        }
        if (const auto* k = find(s, "duration")) {
            sim.duration = at(k->line, "duration", [&] { return units::parse_time(k->value); });
            if (!(sim.duration > 0.0)) fail(k->line, "duration: must be positive");
        }
        if (const auto* k = find(s, "seed")) {
            auto [ptr, ec] = std::from_chars(k->value.data(), k->value.data() + k->value.size(), sim.seed);
            if (ec != std::errc() || ptr != k->value.data() + k->value.size()) {
                fail(k->line, fmt::format("seed: expected an unsigned integer, got '{}'", k->value));
            }
        }
        if (const auto* k = find(s, "mining")) {
            if (k->value == "poisson") sim.mining = simcore::MiningModel::Poisson;
            else if (k->value == "hash") sim.mining = simcore::MiningModel::HashGrind;
            else if (k->value == "disabled") sim.mining = simcore::MiningModel::Disabled;
            else fail(k->line, fmt::format("mining: expected poisson, hash or disabled, got '{}'", k->value));
        }
        if (const auto* k = find(s, "hash_bits")) {
            const int bits = parse_count(*k, k->value);
            if (bits < 1 || bits > 24) fail(k->line, "hash_bits: must be in 1..24");
            sim.hash_bits = static_cast<unsigned>(bits);
        }
        return sim;
    }

    PlannerSpec parse_planner(const RawSection& s) const {
        PlannerSpec p;
        check_keys(s, "planner", {"max_confirmation", "window"});
        if (const auto* k = find(s, "max_confirmation")) {
            p.max_confirmation = at(k->line, k->key, [&] { return units::parse_time(k->value); });
            if (!(p.max_confirmation > 0.0)) fail(k->line, "max_confirmation: must be positive");
        }
        if (const auto* k = find(s, "window")) {
            p.window = at(k->line, k->key, [&] { return units::parse_time(k->value); });
            if (!(*p.window > 0.0)) fail(k->line, "window: must be positive");
        }
        return p;
    }

    ScenarioFile parse(std::string_view text) const {
        auto sections = split_sections(text);
        ScenarioFile file;
        auto topo_it = sections.find("topology");
        if (topo_it == sections.end()) fail(1, "missing [topology] section");
        file.topology = parse_topology(topo_it->second);
        if (auto it = sections.find("simulation"); it != sections.end()) {
            file.simulation = parse_simulation(it->second);
        }
        if (auto it = sections.find("planner"); it != sections.end()) {
            file.planner = parse_planner(it->second);
        }

        const bool explicit_graph = file.topology.kind == TopologyKind::ExplicitGraph;
        std::set<std::string, std::less<>> known;
        if (!explicit_graph) {
            for (auto& id : generated_node_ids(file.topology)) known.insert(std::move(id));
        }

        std::map<std::string, int, std::less<>> node_lines;
        if (auto it = sections.find("nodes"); it != sections.end()) {
            for (const auto& row : it->second.rows) {
                if (row.cells.size() < 3 || row.cells.size() > 4) {
                    fail(row.line, "nodes: expected 'id hashpower region [velocity]'");
                }
                NodeRow node;
                node.id = row.cells[0];
                node.hashpower = at(row.line, "hashpower", [&] { return units::parse_number(row.cells[1]); });
                if (!(node.hashpower >= 0.0)) fail(row.line, "hashpower: must be nonnegative");
                node.region = row.cells[2];
                if (row.cells.size() == 4) {
                    node.velocity = at(row.line, "velocity", [&] { return units::parse_velocity(row.cells[3]); });
                    if (std::abs(node.velocity) >= relkin::kSpeedOfLight) {
                        fail(row.line, "velocity: must be below c");
                    }
                }
                if (!node_lines.emplace(node.id, row.line).second) {
                    fail(row.line, fmt::format("nodes: duplicate node '{}'", node.id));
                }
                if (explicit_graph) {
                    known.insert(node.id);
                } else if (!known.contains(node.id)) {
                    fail(row.line, fmt::format("nodes: '{}' is not a node of the {} topology", node.id,
                                               to_string(file.topology.kind)));
                }
                file.nodes.push_back(std::move(node));
            }
        }
        if (explicit_graph && file.nodes.empty()) {
            fail(topo_it->second.line, "explicit-graph topology needs a [nodes] section with at least one node");
        }

        auto require_node = [&](int line, std::string_view field, const std::string& id) {
            if (!known.contains(id)) fail(line, fmt::format("{}: unknown node '{}'", field, id));
        };

        if (auto it = sections.find("edges"); it != sections.end()) {
            if (!explicit_graph) {
                fail(it->second.line, "[edges] is only valid for the explicit-graph topology");
            }
            for (const auto& row : it->second.rows) {
                if (row.cells.size() != 3) fail(row.line, "edges: expected 'a b delay'");
                EdgeRow edge{row.cells[0], row.cells[1], 0.0};
                require_node(row.line, "edges", edge.a);
                require_node(row.line, "edges", edge.b);
                if (edge.a == edge.b) fail(row.line, "edges: self-loops are not allowed");
                edge.weight = at(row.line, "delay", [&] { return units::parse_time(row.cells[2]); });
                if (!(edge.weight >= 0.0)) fail(row.line, "delay: must be nonnegative");
                file.edges.push_back(std::move(edge));
            }
        }
        if (auto it = sections.find("workload"); it != sections.end()) {
            for (const auto& row : it->second.rows) {
                if (row.cells.size() != 3) fail(row.line, "workload: expected 'created origin destination'");
                WorkloadRow tx;
                tx.created = at(row.line, "created", [&] { return units::parse_time(row.cells[0]); });
                if (!(tx.created >= 0.0)) fail(row.line, "created: must be nonnegative");
                tx.origin = row.cells[1];
                tx.destination = row.cells[2];
                require_node(row.line, "workload", tx.origin);
                require_node(row.line, "workload", tx.destination);
                file.workload.push_back(std::move(tx));
            }
        }
        if (auto it = sections.find("censorship"); it != sections.end()) {
            std::set<std::string, std::less<>> seen;
            for (const auto& row : it->second.rows) {
                if (row.cells.size() < 2) fail(row.line, "censorship: expected 'node region...'");
                CensorRow censor{row.cells[0], {row.cells.begin() + 1, row.cells.end()}};
                require_node(row.line, "censorship", censor.node);
                if (!seen.insert(censor.node).second) {
                    fail(row.line, fmt::format("censorship: duplicate node '{}'", censor.node));
                }
                file.censorship.push_back(std::move(censor));
            }
        }
        return file;
    }

private:
    std::string source_;
};

std::string time_text(double seconds) { return format_number(seconds) + "s"; }
std::string light_text(double seconds) { return format_number(seconds) + "ls"; }

}  // namespace

const char* to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::ExplicitGraph: return "explicit-graph";
        case TopologyKind::Satellite: return "satellite";
        case TopologyKind::Concentric: return "concentric";
        case TopologyKind::SeparateSystems: return "separate-systems";
        case TopologyKind::Lattice: return "lattice";
    }
    return "?";
}

ScenarioFile parse_scenario(std::string_view text, std::string_view source) {
    return Parser(source).parse(text);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("{}: cannot open scenario file", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

std::string serialize_scenario(const ScenarioFile& file) {
    std::string out;
    auto line = [&out](const std::string& s) { out += s; out += '\n'; };
    const auto& t = file.topology;

    line("[topology]");
    line(fmt::format("kind = {}", to_string(t.kind)));
    auto join = [](const auto& items, auto&& fmt_one) {
        std::string s;
        for (const auto& item : items) {
            if (!s.empty()) s += ' ';
            s += fmt_one(item);
        }
        return s;
    };
    auto period_text = [](const std::optional<double>& p) { return p ? time_text(*p) : std::string("-"); };
    switch (t.kind) {
        case TopologyKind::ExplicitGraph:
            break;
        case TopologyKind::Lattice:
            line(fmt::format("size = {} {} {}", t.lattice_l, t.lattice_w, t.lattice_h));
            line(fmt::format("alpha = {}", time_text(t.alpha)));
            break;
        case TopologyKind::Satellite:
            line(fmt::format("r1 = {}", light_text(t.radii.at(0))));
            line(fmt::format("period = {}", period_text(t.periods.at(0))));
            line(fmt::format("phase = {}", format_number(t.phases.at(0))));
            break;
        case TopologyKind::Concentric:
            line(fmt::format("radii = {}", join(t.radii, light_text)));
            line(fmt::format("periods = {}", join(t.periods, period_text)));
            line(fmt::format("phases = {}", join(t.phases, format_number)));
            break;
        case TopologyKind::SeparateSystems:
            line(fmt::format("r1 = {}", light_text(t.radii.at(0))));
            line(fmt::format("alpha = {}", light_text(t.alpha)));
            line(fmt::format("r2 = {}", light_text(t.radii.at(1))));
            line(fmt::format("periods = {}", join(t.periods, period_text)));
            line(fmt::format("phases = {}", join(t.phases, format_number)));
            break;
    }

    if (!file.nodes.empty()) {
        line("");
        line("[nodes]");
        for (const auto& n : file.nodes) {
            line(fmt::format("{} {} {} {}m/s", n.id, format_number(n.hashpower), n.region,
                             format_number(n.velocity)));
        }
    }
    if (!file.edges.empty()) {
        line("");
        line("[edges]");
        for (const auto& e : file.edges) line(fmt::format("{} {} {}", e.a, e.b, time_text(e.weight)));
    }

    const auto& sim = file.simulation;
    line("");
    line("[simulation]");
    line(fmt::format("blocktime = {}", time_text(sim.blocktime)));
    line(fmt::format("duration = {}", time_text(sim.duration)));
    line(fmt::format("seed = {}", sim.seed));
    const char* mining = sim.mining == simcore::MiningModel::Poisson     ? "poisson"
                         : sim.mining == simcore::MiningModel::HashGrind ? "hash"
                                                                         : "disabled";
    line(fmt::format("mining = {}", mining));
    line(fmt::format("hash_bits = {}", sim.hash_bits));

    if (!file.workload.empty()) {
        line("");
        line("[workload]");
        for (const auto& w : file.workload) {
            line(fmt::format("{} {} {}", time_text(w.created), w.origin, w.destination));
        }
    }
    if (!file.censorship.empty()) {
        line("");
        line("[censorship]");
        for (const auto& c : file.censorship) line(fmt::format("{} {}", c.node, fmt::join(c.regions, " ")));
    }

    line("");
    line("[planner]");
    line(fmt::format("max_confirmation = {}", time_text(file.planner.max_confirmation)));
    if (file.planner.window) line(fmt::format("window = {}", time_text(*file.planner.window)));
    return out;
}

std::vector<std::string> generated_node_ids(const TopologySpec& t) {
    std::vector<std::string> ids;
    switch (t.kind) {
        case TopologyKind::ExplicitGraph:
            break;
        case TopologyKind::Satellite:
            ids = {"planet", "satellite"};
            break;
        case TopologyKind::Concentric:
            for (std::size_t i = 0; i < t.radii.size(); ++i) ids.push_back(fmt::format("p{}", i + 1));
            break;
        case TopologyKind::SeparateSystems:
            ids = {"p1", "p2"};
            break;
        case TopologyKind::Lattice:
            for (int i = 0; i < t.lattice_l; ++i)
                for (int j = 0; j < t.lattice_w; ++j)
                    for (int k = 0; k < t.lattice_h; ++k) ids.push_back(topo::lattice_node_id(i, j, k));
            break;
    }
    return ids;
}

namespace {

topo::CircularOrbit orbit_for(const TopologySpec& t, std::size_t body, topo::Vec3 center) {
    constexpr double c = relkin::kSpeedOfLight;
    const double omega = t.periods.at(body) ? 2.0 * std::numbers::pi / *t.periods[body] : 0.0;
    return topo::CircularOrbit::make(center, t.radii.at(body) * c, omega, t.phases.at(body));
}

void apply_rows(std::vector<topo::NodeSpec>& nodes, const std::vector<NodeRow>& rows) {
    for (const auto& row : rows) {
        for (auto& node : nodes) {
            if (node.id == row.id) {
                node.hashpower = row.hashpower;
                node.region = row.region;
            }
        }
    }
}

}  // namespace

topo::LatencyGraph build_graph(const ScenarioFile& file) {
    const auto& t = file.topology;
    constexpr double c = relkin::kSpeedOfLight;
    switch (t.kind) {
        case TopologyKind::ExplicitGraph: {
            std::vector<topo::NodeSpec> nodes;
            for (const auto& row : file.nodes) {
                nodes.push_back({row.id, topo::StaticPoint{}, row.hashpower, row.region});
            }
            std::vector<topo::ExplicitEdge> edges;
            for (const auto& e : file.edges) edges.push_back({e.a, e.b, e.weight});
            return topo::LatencyGraph::with_explicit_edges(std::move(nodes), edges);
        }
        case TopologyKind::Lattice: {
            auto lattice = topo::build_lattice(t.lattice_l, t.lattice_w, t.lattice_h, t.alpha);
            std::vector<topo::NodeSpec> nodes(lattice.nodes().begin(), lattice.nodes().end());
            apply_rows(nodes, file.nodes);
            return lattice.with_nodes(std::move(nodes));
        }
        case TopologyKind::Satellite: {
            std::vector<topo::NodeSpec> nodes{
                {"planet", topo::StaticPoint{}, 1.0, "planet"},
                {"satellite", orbit_for(t, 0, {}), 1.0, "satellite"},
            };
            apply_rows(nodes, file.nodes);
            return topo::LatencyGraph::geometric(std::move(nodes));
        }
        case TopologyKind::Concentric: {
            std::vector<topo::NodeSpec> nodes;
            const auto ids = generated_node_ids(t);
            for (std::size_t i = 0; i < ids.size(); ++i) {
                nodes.push_back({ids[i], orbit_for(t, i, {}), 1.0, ids[i]});
            }
            apply_rows(nodes, file.nodes);
            return topo::LatencyGraph::geometric(std::move(nodes));
        }
        case TopologyKind::SeparateSystems: {
            std::vector<topo::NodeSpec> nodes{
                {"p1", orbit_for(t, 0, {}), 1.0, "p1"},
                {"p2", orbit_for(t, 1, {t.alpha * c, 0.0, 0.0}), 1.0, "p2"},
            };
            apply_rows(nodes, file.nodes);
            return topo::LatencyGraph::geometric(std::move(nodes));
        }
    }
    throw std::logic_error("unhandled topology kind");
}

simcore::Scenario build_scenario(const ScenarioFile& file) {
    auto graph = build_graph(file);
    simcore::Scenario s{std::move(graph)};
    s.blocktime = file.simulation.blocktime;
    s.duration = file.simulation.duration;
    s.seed = file.simulation.seed;
    s.mining = file.simulation.mining;
    s.hash_difficulty_bits = file.simulation.hash_bits;

    const std::size_t n = s.graph.size();
    if (std::any_of(file.nodes.begin(), file.nodes.end(), [](const NodeRow& r) { return r.velocity != 0.0; })) {
        s.node_velocities.assign(n, 0.0);
        for (const auto& row : file.nodes) s.node_velocities[s.graph.index_of(row.id)] = row.velocity;
    }
    for (const auto& w : file.workload) {
        s.tx_workload.push_back({w.created, s.graph.index_of(w.origin), s.graph.index_of(w.destination)});
    }
    if (!file.censorship.empty()) {
        s.censorship.assign(n, {});
        for (const auto& row : file.censorship) {
            s.censorship[s.graph.index_of(row.node)].insert(row.regions.begin(), row.regions.end());
        }
    }
    return s;
}

PlanResult plan(const ScenarioFile& file) {
    const auto graph = build_graph(file);
    const auto& t = file.topology;
    PlanResult result;
    switch (t.kind) {
        case TopologyKind::Satellite:
            result.bound = planner::bound_satellite(t.radii.at(0));
            break;
        case TopologyKind::Concentric:
            result.bound = planner::bound_concentric(t.radii);
            break;
        case TopologyKind::SeparateSystems:
            result.bound = planner::bound_separate(t.radii.at(0), t.alpha, t.radii.at(1));
            break;
        case TopologyKind::ExplicitGraph:
        case TopologyKind::Lattice:
            result.bound = planner::bound_diameter(graph, file.planner.window);
            break;
    }
    result.sampled_diameter = topo::max_diameter(graph, file.planner.window);
    result.feasibility = planner::feasibility(graph, file.planner.max_confirmation, file.planner.window);
    return result;
}

}  // namespace relaysim::scenario
