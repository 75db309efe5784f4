#include "relaysim/relkin.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "relaysim/errors.hpp"

namespace relaysim::relkin {

namespace {

void require_subluminal(Velocity v, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ArgumentError(fmt::format("speed of light must be positive and finite, got {}", c));
    }
    if (!std::isfinite(v.v) || std::abs(v.v) >= c) {
        throw DomainError(fmt::format("superluminal frame: |v| = {} m/s is not below c = {} m/s",
                                      std::abs(v.v), c));
    }
}

}  // namespace

const char* to_string(CausalKind kind) {
    switch (kind) {
        case CausalKind::Timelike: return "Timelike";
        case CausalKind::Lightlike: return "Lightlike";
        case CausalKind::Spacelike: return "Spacelike";
    }
    return "?";
}

double gamma(Velocity v, double c) {
    require_subluminal(v, c);
    const double beta = v.v / c;
    return 1.0 / std::sqrt(1.0 - beta * beta);
}

SpacetimeEvent boost(SpacetimeEvent e, Velocity v, double c) {
    const double g = gamma(v, c);
    return {g * (e.t - v.v * e.x / (c * c)), g * (e.x - v.v * e.t)};
}

double proper_elapsed(double coordinate_dt, Velocity v, double c) {
    if (coordinate_dt < 0.0) {
        throw ArgumentError(fmt::format("duration must be nonnegative, got {}", coordinate_dt));
    }
    return coordinate_dt / gamma(v, c);
}

double contracted_length(double proper_length, Velocity v, double c) {
    if (proper_length < 0.0) {
        throw ArgumentError(fmt::format("length must be nonnegative, got {}", proper_length));
    }
    return proper_length / gamma(v, c);
}

CausalClass classify(double delta_t, double delta_x, double c) {
    const double dt = std::abs(delta_t);
    const double dx = std::abs(delta_x);
    CausalClass out;
    if (dx == 0.0) {
        out.v_info = 0.0;
    } else if (dt == 0.0) {
        out.v_info = std::numeric_limits<double>::infinity();
    } else {
        out.v_info = dx / dt;
    }

    // Compare |dx| against c|dt| rather than v_info against c so the test is
    // symmetric and survives dt == 0.
    const double light_reach = c * dt;
    if (std::abs(dx - light_reach) <= kLightlikeTolerance * std::max(dx, light_reach) && dx > 0.0) {
        out.kind = CausalKind::Lightlike;
    } else if (dx < light_reach || (dx == 0.0 && dt == 0.0)) {
        out.kind = CausalKind::Timelike;
    } else {
        out.kind = CausalKind::Spacelike;
    }
    return out;
}

double kinetic_energy(double mass, Velocity v, double c) {
    if (mass < 0.0) {
        throw ArgumentError(fmt::format("mass must be nonnegative, got {}", mass));
    }
    // gamma - 1 loses precision at small beta; rewrite as beta^2 g^2 / (1 + g)
    // which is algebraically equal and stays accurate.
    const double g = gamma(v, c);
    const double beta = v.v / c;
    return mass * c * c * (beta * beta * g * g / (1.0 + g));
}

}  // namespace relaysim::relkin
