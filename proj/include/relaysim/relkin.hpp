#pragma once

// Special-relativity kernel in 1+1 dimensions. Every function is pure; the
// speed of light is a parameter so that the classical limit can be probed.

namespace relaysim::relkin {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

/// A coordinate event: time in seconds, position along the boost axis in meters.
struct SpacetimeEvent {
    double t = 0.0;
    double x = 0.0;

    friend bool operator==(const SpacetimeEvent&, const SpacetimeEvent&) = default;
};

/// Signed speed along the boost axis, in m/s. Any value is representable;
/// operations that need a frame reject |v| >= c.
struct Velocity {
    double v = 0.0;

    static Velocity fraction_of_c(double beta, double c = kSpeedOfLight) { return {beta * c}; }
};

enum class CausalKind { Timelike, Lightlike, Spacelike };

struct CausalClass {
    CausalKind kind = CausalKind::Timelike;
    double v_info = 0.0;  // m/s; +inf for simultaneous, separated events
};

const char* to_string(CausalKind kind);

/// Relative tolerance used to call an event pair lightlike.
inline constexpr double kLightlikeTolerance = 1e-12;

/// Lorentz factor 1/sqrt(1 - (v/c)^2). Throws DomainError for |v| >= c.
double gamma(Velocity v, double c = kSpeedOfLight);

/// Coordinates of `e` seen from a frame moving at `v`. Linear, so it applies
/// equally to event differences.
SpacetimeEvent boost(SpacetimeEvent e, Velocity v, double c = kSpeedOfLight);

/// Time that elapses on a clock moving at `v` while `coordinate_dt` passes in the
/// rest frame.
double proper_elapsed(double coordinate_dt, Velocity v, double c = kSpeedOfLight);

/// Length measured for a rod of rest length `proper_length` moving at `v`.
double contracted_length(double proper_length, Velocity v, double c = kSpeedOfLight);

CausalClass classify(double delta_t, double delta_x, double c = kSpeedOfLight);

/// Relativistic kinetic energy (gamma - 1) m c^2, in joules.
double kinetic_energy(double mass, Velocity v, double c = kSpeedOfLight);

}  // namespace relaysim::relkin
