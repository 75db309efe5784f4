#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relaysim/relkin.hpp"
#include "relaysim/topo.hpp"

namespace relaysim::planner {

enum class BoundRule { Satellite, Concentric, SeparateSystems, Diameter };

const char* to_string(BoundRule rule);

/// Strict lower bound on the blocktime: a usable blocktime B satisfies B > b_min.
struct BlocktimeBound {
    double b_min = 0.0;  // seconds
    BoundRule rule = BoundRule::Diameter;
    std::vector<double> inputs;  // echoed arguments, seconds

    bool admits(double blocktime) const { return blocktime > b_min; }
};

enum class Verdict { SingleCurrency, SeparateCurrencies };

const char* to_string(Verdict verdict);

struct FeasibilityVerdict {
    Verdict verdict = Verdict::SingleCurrency;
    double governing_latency = 0.0;  // seconds
    double threshold = 0.0;          // seconds
};

/// Meters to light-travel seconds.
double light_seconds(double meters, double c = relkin::kSpeedOfLight);

// Radii and separations below are light-travel times in seconds.

/// Planet and satellite at orbital radius r1: b > r1 / 2.
BlocktimeBound bound_satellite(double r1);

/// Bodies on concentric orbits: b > (min radius + max radius) / 2.
BlocktimeBound bound_concentric(std::span<const double> radii);

/// Two bodies orbiting centers separated by alpha: b > (r1 + alpha + r2) / 2.
BlocktimeBound bound_separate(double r1, double alpha, double r2);

/// Half the largest graph diameter over the sampled epochs (a single
/// evaluation for static graphs).
BlocktimeBound bound_diameter(const topo::LatencyGraph& g,
                              std::optional<double> window = std::nullopt);

/// SeparateCurrencies iff the worst-case confirmation round trip exceeds
/// `max_confirmation`.
FeasibilityVerdict feasibility(const topo::LatencyGraph& g, double max_confirmation,
                               std::optional<double> window = std::nullopt);

}  // namespace relaysim::planner
