#include "relaysim/topo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "relaysim/errors.hpp"

namespace relaysim::topo {

Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
double norm(Vec3 a) { return std::hypot(a.x, a.y, a.z); }

CircularOrbit CircularOrbit::make(Vec3 center, double radius, double angular_velocity,
                                  double phase, OrbitalPlane plane, double c) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw ArgumentError(fmt::format("orbit radius must be finite and nonnegative, got {}", radius));
    }
    if (!std::isfinite(angular_velocity) || !std::isfinite(phase)) {
        throw ArgumentError("orbit angular velocity and phase must be finite");
    }
    CircularOrbit orbit{center, radius, angular_velocity, phase, plane};
    if (orbit.tangential_speed() >= c) {
        throw DomainError(fmt::format("orbit tangential speed {} m/s is not below c",
                                      orbit.tangential_speed()));
    }
    return orbit;
}

std::optional<double> CircularOrbit::period() const {
    if (angular_velocity == 0.0 || radius == 0.0) return std::nullopt;
    return 2.0 * std::numbers::pi / std::abs(angular_velocity);
}

double CircularOrbit::tangential_speed() const { return std::abs(angular_velocity * radius); }

Vec3 position(const NodeSpec& node, double t) {
    struct Visitor {
        double t;
        Vec3 operator()(const StaticPoint& p) const { return p.position; }
        Vec3 operator()(const CircularOrbit& o) const {
            const double angle = o.angular_velocity * t + o.phase;
            return o.center + (o.radius * std::cos(angle)) * o.plane.u +
                   (o.radius * std::sin(angle)) * o.plane.w;
        }
        Vec3 operator()(const LatticeSite& s) const {
            return {static_cast<double>(s.i), static_cast<double>(s.j), static_cast<double>(s.k)};
        }
    };
    return std::visit(Visitor{t}, node.motion);
}

double light_delay(const NodeSpec& a, const NodeSpec& b, double t, double c) {
    return norm(position(a, t) - position(b, t)) / c;
}

LatencyGraph::LatencyGraph(std::vector<NodeSpec> nodes, EdgeMode mode, double c)
    : nodes_(std::move(nodes)), adjacency_(nodes_.size()), mode_(mode), c_(c) {
    if (!(c_ > 0.0)) throw ArgumentError("speed of light must be positive");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id.empty()) throw GraphError("node id must not be empty");
        if (!(nodes_[i].hashpower >= 0.0) || !std::isfinite(nodes_[i].hashpower)) {
            throw GraphError(fmt::format("node '{}' has invalid hashpower", nodes_[i].id));
        }
        if (!index_.emplace(nodes_[i].id, i).second) {
            throw GraphError(fmt::format("duplicate node id '{}'", nodes_[i].id));
        }
    }
}

void LatencyGraph::add_link(NodeIndex a, NodeIndex b, double weight) {
    if (a == b) throw GraphError(fmt::format("self-loop on node '{}'", nodes_[a].id));
    for (const auto& link : adjacency_[a]) {
        if (link.to == b) {
            throw GraphError(fmt::format("duplicate edge '{}' - '{}'", nodes_[a].id, nodes_[b].id));
        }
    }
    adjacency_[a].push_back({b, weight});
    adjacency_[b].push_back({a, weight});
}

LatencyGraph LatencyGraph::with_explicit_edges(std::vector<NodeSpec> nodes,
                                               const std::vector<ExplicitEdge>& edges) {
    LatencyGraph g(std::move(nodes), EdgeMode::Explicit, relkin::kSpeedOfLight);
    for (const auto& e : edges) {
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw GraphError(fmt::format("edge '{}' - '{}' has invalid weight {}", e.a, e.b, e.weight));
        }
        g.add_link(g.index_of(e.a), g.index_of(e.b), e.weight);
    }
    return g;
}

LatencyGraph LatencyGraph::geometric(std::vector<NodeSpec> nodes,
                                     const std::vector<std::pair<std::string, std::string>>& links,
                                     double c) {
    LatencyGraph g(std::move(nodes), EdgeMode::Geometric, c);
    for (const auto& node : g.nodes_) {
        if (const auto* orbit = std::get_if<CircularOrbit>(&node.motion);
            orbit && orbit->tangential_speed() >= c) {
            throw DomainError(fmt::format("node '{}' orbits at or above c", node.id));
        }
    }
    if (links.empty()) {
        for (NodeIndex a = 0; a < g.size(); ++a) {
            for (NodeIndex b = a + 1; b < g.size(); ++b) g.add_link(a, b, 0.0);
        }
    } else {
        for (const auto& [a, b] : links) g.add_link(g.index_of(a), g.index_of(b), 0.0);
    }
    return g;
}

LatencyGraph LatencyGraph::with_nodes(std::vector<NodeSpec> nodes) const {
    if (nodes.size() != nodes_.size()) throw GraphError("replacement node list has a different size");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != nodes_[i].id) {
            throw GraphError(fmt::format("replacement node '{}' does not match '{}'", nodes[i].id,
                                         nodes_[i].id));
        }
        if (!(nodes[i].hashpower >= 0.0) || !std::isfinite(nodes[i].hashpower)) {
            throw GraphError(fmt::format("node '{}' has invalid hashpower", nodes[i].id));
        }
    }
    LatencyGraph copy = *this;
    copy.nodes_ = std::move(nodes);
    if (copy.mode_ == EdgeMode::Geometric) {
        for (const auto& node : copy.nodes_) {
            if (const auto* orbit = std::get_if<CircularOrbit>(&node.motion);
                orbit && orbit->tangential_speed() >= copy.c_) {
                throw DomainError(fmt::format("node '{}' orbits at or above c", node.id));
            }
        }
    }
    return copy;
}

std::size_t LatencyGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& links : adjacency_) twice += links.size();
    return twice / 2;
}

std::optional<NodeIndex> LatencyGraph::find(std::string_view id) const {
    if (auto it = index_.find(id); it != index_.end()) return it->second;
    return std::nullopt;
}

NodeIndex LatencyGraph::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw GraphError(fmt::format("unknown node '{}'", id));
}

double LatencyGraph::delay(NodeIndex from, const Link& link, double t) const {
    if (mode_ == EdgeMode::Explicit) return link.weight;
    return light_delay(nodes_[from], nodes_[link.to], t, c_);
}

bool LatencyGraph::is_time_varying() const {
    return mode_ == EdgeMode::Geometric && !orbital_periods().empty();
}

std::vector<double> LatencyGraph::orbital_periods() const {
    std::vector<double> periods;
    for (const auto& node : nodes_) {
        if (const auto* orbit = std::get_if<CircularOrbit>(&node.motion)) {
            if (auto p = orbit->period()) periods.push_back(*p);
        }
    }
    return periods;
}

std::vector<double> shortest_delays(const LatencyGraph& g, NodeIndex source, double t) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.size(), kInf);
    using Entry = std::pair<double, NodeIndex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist.at(source) = 0.0;
    frontier.push({0.0, source});
    while (!frontier.empty()) {
        auto [d, u] = frontier.top();
        frontier.pop();
        if (d > dist[u]) continue;
        for (const auto& link : g.neighbors(u)) {
            const double nd = d + g.delay(u, link, t);
            if (nd < dist[link.to]) {
                dist[link.to] = nd;
                frontier.push({nd, link.to});
            }
        }
    }
    return dist;
}

void require_connected(const LatencyGraph& g) {
    if (g.size() == 0) throw GraphError("graph has no nodes");
    std::vector<bool> seen(g.size(), false);
    std::vector<NodeIndex> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const NodeIndex u = stack.back();
        stack.pop_back();
        for (const auto& link : g.neighbors(u)) {
            if (!seen[link.to]) {
                seen[link.to] = true;
                stack.push_back(link.to);
            }
        }
    }
    for (NodeIndex i = 0; i < g.size(); ++i) {
        if (!seen[i]) {
            throw GraphError(fmt::format("graph is disconnected: no path between '{}' and '{}'",
                                         g.node(0).id, g.node(i).id));
        }
    }
}

double diameter(const LatencyGraph& g, double t) {
    require_connected(g);
    double longest = 0.0;
    for (NodeIndex s = 0; s < g.size(); ++s) {
        const auto dist = shortest_delays(g, s, t);
        longest = std::max(longest, *std::max_element(dist.begin(), dist.end()));
    }
    return longest;
}

namespace {

// Best rational approximation p/q of x with q <= max_den, by continued fractions.
std::optional<std::pair<long long, long long>> rationalize(double x, long long max_den,
                                                           double rel_tol) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(rest);
        if (a > 1e12) break;
        const auto ai = static_cast<long long>(a);
        const long long p2 = ai * p1 + p0;
        const long long q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= rel_tol * x) {
            return std::pair{p1, q1};
        }
        const double frac = rest - a;
        if (frac <= 0.0) break;
        rest = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

std::optional<double> common_orbital_period(const LatencyGraph& g) {
    const auto periods = g.orbital_periods();
    if (periods.empty()) return std::nullopt;

    // Express each period as base * p/q, then take lcm of the numerators
    // over a common denominator.
    const double base = periods.front();
    constexpr long long kMaxDen = 1000;
    long long common_den = 1;
    std::vector<std::pair<long long, long long>> ratios;
    bool commensurate = true;
    for (double p : periods) {
        auto r = rationalize(p / base, kMaxDen, 1e-9);
        if (!r) {
            commensurate = false;
            break;
        }
        ratios.push_back(*r);
        common_den = std::lcm(common_den, r->second);
        if (common_den > kMaxDen * kMaxDen) {
            commensurate = false;
            break;
        }
    }
    if (commensurate) {
        long long numer_lcm = 1;
        for (auto [p, q] : ratios) {
            numer_lcm = std::lcm(numer_lcm, p * (common_den / q));
            if (numer_lcm > kMaxDen * kMaxDen) {
                commensurate = false;
                break;
            }
        }
        if (commensurate) {
            return base * static_cast<double>(numer_lcm) / static_cast<double>(common_den);
        }
    }

    double window = *std::max_element(periods.begin(), periods.end());
    for (std::size_t a = 0; a < periods.size(); ++a) {
        for (std::size_t b = a + 1; b < periods.size(); ++b) {
            const double relative = std::abs(1.0 / periods[a] - 1.0 / periods[b]);
            if (relative > 0.0) window = std::max(window, 1.0 / relative);
        }
    }
    return window;
}

double max_diameter(const LatencyGraph& g, std::optional<double> window, std::size_t samples) {
    if (!g.is_time_varying()) return diameter(g, 0.0);
    if (samples == 0) throw ArgumentError("epoch sample count must be positive");
    const double span = window ? *window : *common_orbital_period(g);
    if (!(span > 0.0)) throw ArgumentError("sampling window must be positive");
    double longest = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = span * static_cast<double>(k) / static_cast<double>(samples);
        longest = std::max(longest, diameter(g, t));
    }
    return longest;
}

std::string lattice_node_id(int i, int j, int k) { return fmt::format("n{}_{}_{}", i, j, k); }

LatencyGraph build_lattice(int l, int w, int h, double alpha) {
    if (l < 1 || w < 1 || h < 1) {
        throw ArgumentError(fmt::format("lattice dimensions must be >= 1, got {}x{}x{}", l, w, h));
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ArgumentError(fmt::format("lattice edge delay must be positive, got {}", alpha));
    }
    std::vector<NodeSpec> nodes;
    nodes.reserve(static_cast<std::size_t>(l) * w * h);
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < w; ++j) {
            for (int k = 0; k < h; ++k) {
                nodes.push_back({lattice_node_id(i, j, k), LatticeSite{i, j, k}, 1.0, "lattice"});
            }
        }
    }
    std::vector<ExplicitEdge> edges;
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < w; ++j) {
            for (int k = 0; k < h; ++k) {
                const auto here = lattice_node_id(i, j, k);
                if (i + 1 < l) edges.push_back({here, lattice_node_id(i + 1, j, k), alpha});
                if (j + 1 < w) edges.push_back({here, lattice_node_id(i, j + 1, k), alpha});
                if (k + 1 < h) edges.push_back({here, lattice_node_id(i, j, k + 1), alpha});
            }
        }
    }
    return LatencyGraph::with_explicit_edges(std::move(nodes), edges);
}

}  // namespace relaysim::topo
