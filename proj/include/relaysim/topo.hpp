#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "relaysim/relkin.hpp"

namespace relaysim::topo {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

Vec3 operator+(Vec3 a, Vec3 b);
Vec3 operator-(Vec3 a, Vec3 b);
Vec3 operator*(double s, Vec3 a);
double norm(Vec3 a);

struct StaticPoint {
    Vec3 position;

    friend bool operator==(const StaticPoint&, const StaticPoint&) = default;
};

/// Orthonormal basis of an orbital plane. Default is the x-y plane.
struct OrbitalPlane {
    Vec3 u{1.0, 0.0, 0.0};
    Vec3 w{0.0, 1.0, 0.0};

    friend bool operator==(const OrbitalPlane&, const OrbitalPlane&) = default;
};

struct CircularOrbit {
    Vec3 center;
    double radius = 0.0;            // meters
    double angular_velocity = 0.0;  // rad/s
    double phase = 0.0;             // rad
    OrbitalPlane plane;

    /// Validated constructor: radius >= 0, finite angular velocity and a
    /// tangential speed strictly below c. Throws DomainError / ArgumentError.
    static CircularOrbit make(Vec3 center, double radius, double angular_velocity, double phase,
                              OrbitalPlane plane = {}, double c = relkin::kSpeedOfLight);

    /// 2 pi / |omega|, or nullopt for a stationary body.
    std::optional<double> period() const;
    double tangential_speed() const;

    friend bool operator==(const CircularOrbit&, const CircularOrbit&) = default;
};

/// Grid site of a lattice. Delays come from edge weights; position() places
/// the site at (i, j, k) meters only so that every motion has a position.
struct LatticeSite {
    int i = 0;
    int j = 0;
    int k = 0;

    friend bool operator==(const LatticeSite&, const LatticeSite&) = default;
};

using MotionSpec = std::variant<StaticPoint, CircularOrbit, LatticeSite>;

struct NodeSpec {
    std::string id;
    MotionSpec motion = StaticPoint{};
    double hashpower = 0.0;
    std::string region;

    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

Vec3 position(const NodeSpec& node, double t);

/// Straight-line distance over c, both positions taken at the same instant t.
double light_delay(const NodeSpec& a, const NodeSpec& b, double t,
                   double c = relkin::kSpeedOfLight);

using NodeIndex = std::size_t;

struct ExplicitEdge {
    std::string a;
    std::string b;
    double weight = 0.0;  // seconds

    friend bool operator==(const ExplicitEdge&, const ExplicitEdge&) = default;
};

enum class EdgeMode { Explicit, Geometric };

/// Simple undirected graph whose edge weights are light delays. Immutable
/// after construction. Edges are either all explicit constants or all
/// derived from node positions, never a mix.
class LatencyGraph {
public:
    struct Link {
        NodeIndex to = 0;
        double weight = 0.0;  // explicit weight; unused for geometric graphs
    };

    static LatencyGraph with_explicit_edges(std::vector<NodeSpec> nodes,
                                            const std::vector<ExplicitEdge>& edges);

    /// Geometric graph. An empty `links` list means every pair is connected.
    static LatencyGraph geometric(std::vector<NodeSpec> nodes,
                                  const std::vector<std::pair<std::string, std::string>>& links = {},
                                  double c = relkin::kSpeedOfLight);

    std::size_t size() const { return nodes_.size(); }
    std::size_t edge_count() const;
    const NodeSpec& node(NodeIndex i) const { return nodes_.at(i); }
    std::span<const NodeSpec> nodes() const { return nodes_; }
    std::optional<NodeIndex> find(std::string_view id) const;
    /// Throws GraphError for an unknown id.
    NodeIndex index_of(std::string_view id) const;
    std::span<const Link> neighbors(NodeIndex i) const { return adjacency_.at(i); }

    /// Delay of the link from `from` at emission time t.
    double delay(NodeIndex from, const Link& link, double t) const;

    EdgeMode mode() const { return mode_; }
    bool is_time_varying() const;
    double c() const { return c_; }

    /// Same edges, node attributes replaced. `nodes` must list the same ids in
    /// the same order.
    LatencyGraph with_nodes(std::vector<NodeSpec> nodes) const;

    /// Orbital periods of every moving node, in seconds.
    std::vector<double> orbital_periods() const;

private:
    LatencyGraph(std::vector<NodeSpec> nodes, EdgeMode mode, double c);
    void add_link(NodeIndex a, NodeIndex b, double weight);

    std::vector<NodeSpec> nodes_;
    std::vector<std::vector<Link>> adjacency_;
    std::map<std::string, NodeIndex, std::less<>> index_;
    EdgeMode mode_;
    double c_;
};

/// Single-source shortest delays with edges frozen at time t (Dijkstra).
/// Unreachable nodes get +inf.
std::vector<double> shortest_delays(const LatencyGraph& g, NodeIndex source, double t);

/// Throws GraphError naming one unreachable pair when g is disconnected.
void require_connected(const LatencyGraph& g);

/// Longest shortest-path delay at time t. Throws GraphError when disconnected.
double diameter(const LatencyGraph& g, double t = 0.0);

/// Smallest window after which every orbit returns to its starting
/// configuration, when the periods are commensurate; otherwise the longest of
/// the individual and pairwise synodic periods. nullopt for a static graph.
std::optional<double> common_orbital_period(const LatencyGraph& g);

inline constexpr std::size_t kDefaultEpochSamples = 1024;

/// Maximum diameter over `samples` evenly spaced epochs in [0, window). A
/// static graph is evaluated once. With no window the common orbital period
/// is used.
double max_diameter(const LatencyGraph& g, std::optional<double> window = std::nullopt,
                    std::size_t samples = kDefaultEpochSamples);

std::string lattice_node_id(int i, int j, int k);

/// l x w x h grid of unit-hashpower nodes with nearest-neighbor edges of weight alpha.
LatencyGraph build_lattice(int l, int w, int h, double alpha);

}  // namespace relaysim::topo
