#include "relaysim/planner.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "relaysim/errors.hpp"
#include "relaysim/simcore.hpp"

namespace relaysim::planner {

namespace {

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ArgumentError(fmt::format("{} must be finite and nonnegative, got {}", name, value));
    }
}

}  // namespace

const char* to_string(BoundRule rule) {
    switch (rule) {
        case BoundRule::Satellite: return "satellite";
        case BoundRule::Concentric: return "concentric";
        case BoundRule::SeparateSystems: return "separate-systems";
        case BoundRule::Diameter: return "diameter";
    }
    return "?";
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::SingleCurrency: return "single-currency";
        case Verdict::SeparateCurrencies: return "separate-currencies";
    }
    return "?";
}

double light_seconds(double meters, double c) { return meters / c; }

BlocktimeBound bound_satellite(double r1) {
    require_nonnegative(r1, "r1");
    return {r1 / 2.0, BoundRule::Satellite, {r1}};
}

BlocktimeBound bound_concentric(std::span<const double> radii) {
    if (radii.size() < 2) {
        throw ArgumentError(fmt::format("concentric bound needs at least 2 radii, got {}", radii.size()));
    }
    for (double r : radii) require_nonnegative(r, "radius");
    const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
    return {(*lo + *hi) / 2.0, BoundRule::Concentric, {radii.begin(), radii.end()}};
}

BlocktimeBound bound_separate(double r1, double alpha, double r2) {
    require_nonnegative(r1, "r1");
    require_nonnegative(alpha, "alpha");
    require_nonnegative(r2, "r2");
    return {(r1 + alpha + r2) / 2.0, BoundRule::SeparateSystems, {r1, alpha, r2}};
}

BlocktimeBound bound_diameter(const topo::LatencyGraph& g, std::optional<double> window) {
    const double d = topo::max_diameter(g, window);
    return {d / 2.0, BoundRule::Diameter, {d}};
}

FeasibilityVerdict feasibility(const topo::LatencyGraph& g, double max_confirmation,
                               std::optional<double> window) {
    if (!(max_confirmation > 0.0)) {
        throw ArgumentError(fmt::format("max confirmation must be positive, got {}", max_confirmation));
    }
    FeasibilityVerdict out;
    out.governing_latency = simcore::worst_case_confirmation(g, window);
    out.threshold = max_confirmation;
    out.verdict = out.governing_latency > max_confirmation ? Verdict::SeparateCurrencies
                                                           : Verdict::SingleCurrency;
    return out;
}

}  // namespace relaysim::planner
