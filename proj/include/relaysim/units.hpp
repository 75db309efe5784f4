#pragma once

#include <string>
#include <string_view>

// Unit-suffixed quantities, normalized to SI. A bare number is only accepted
// where noted (zero is always accepted, being unit independent).
//
//   time      s ms min h d y      (y is the Julian year)
//   length    m km AU ls lmin ly
//   velocity  m/s km/s c          ("0.98c" is a fraction of light speed)
//   angle     rad deg             (bare number means radians)

namespace relaysim::units {

double parse_number(std::string_view text);

/// Seconds. `allow_bare` accepts a unitless number as seconds.
double parse_time(std::string_view text, bool allow_bare = false);

/// Meters. Light units use `c`.
double parse_length(std::string_view text, bool allow_bare = false, double c = 299792458.0);

/// Light-travel seconds from either a time or a length.
double parse_light_time(std::string_view text, double c = 299792458.0);

/// m/s; "c" suffix is a fraction of `c`.
double parse_velocity(std::string_view text, bool allow_bare = false, double c = 299792458.0);

/// Radians.
double parse_angle(std::string_view text);

/// Shortest text that round-trips the double exactly.
std::string format_number(double value);

}  // namespace relaysim::units
