#include "relaysim/units.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include <fmt/format.h>

#include "relaysim/errors.hpp"

namespace relaysim::units {

namespace {

struct Split {
    double value;
    std::string_view unit;
};

Split split(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) {
        throw ParseError(fmt::format("expected a number, got '{}'", text));
    }
    std::string_view unit(ptr, static_cast<std::size_t>(end - ptr));
    while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);
    if (!std::isfinite(value)) throw ParseError(fmt::format("number '{}' is not finite", text));
    return {value, unit};
}

std::optional<double> scale_of(std::string_view unit,
                               std::initializer_list<std::pair<std::string_view, double>> table) {
    for (const auto& [name, factor] : table) {
        if (unit == name) return factor;
    }
    return std::nullopt;
}

constexpr double kAstronomicalUnit = 149597870700.0;
constexpr double kJulianYear = 365.25 * 86400.0;

[[noreturn]] void bad_unit(std::string_view text, std::string_view kind) {
    throw ParseError(fmt::format("'{}' needs a {} unit", text, kind));
}

}  // namespace

double parse_number(std::string_view text) {
    auto [value, unit] = split(text);
    if (!unit.empty()) throw ParseError(fmt::format("expected a plain number, got '{}'", text));
    return value;
}

double parse_time(std::string_view text, bool allow_bare) {
    auto [value, unit] = split(text);
    if (unit.empty() && (allow_bare || value == 0.0)) return value;
    if (auto f = scale_of(unit, {{"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}, {"h", 3600.0},
                                 {"d", 86400.0}, {"y", kJulianYear}})) {
        return value * *f;
    }
    bad_unit(text, "time (s, ms, min, h, d, y)");
}

double parse_length(std::string_view text, bool allow_bare, double c) {
    auto [value, unit] = split(text);
    if (unit.empty() && (allow_bare || value == 0.0)) return value;
    if (auto f = scale_of(unit, {{"m", 1.0}, {"km", 1e3}, {"AU", kAstronomicalUnit},
                                 {"ls", c}, {"lmin", 60.0 * c},
                                 {"ly", kJulianYear * c}})) {
        return value * *f;
    }
    bad_unit(text, "length (m, km, AU, ls, lmin, ly)");
}

double parse_light_time(std::string_view text, double c) {
    auto [value, unit] = split(text);
    if (unit.empty() && value == 0.0) return 0.0;
    if (auto f = scale_of(unit, {{"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}, {"h", 3600.0},
                                 {"d", 86400.0}, {"y", kJulianYear}, {"ls", 1.0},
                                 {"lmin", 60.0}, {"ly", kJulianYear}})) {
        return value * *f;
    }
    if (auto f = scale_of(unit, {{"m", 1.0}, {"km", 1e3}, {"AU", kAstronomicalUnit}})) {
        return value * *f / c;
    }
    bad_unit(text, "light-time (s, min, y, ls, lmin, ly) or length (m, km, AU)");
}

double parse_velocity(std::string_view text, bool allow_bare, double c) {
    auto [value, unit] = split(text);
    if (unit.empty() && (allow_bare || value == 0.0)) return value;
    if (unit == "c") return value * c;
    if (auto f = scale_of(unit, {{"m/s", 1.0}, {"km/s", 1e3}})) return value * *f;
    bad_unit(text, "velocity (m/s, km/s, c)");
}

double parse_angle(std::string_view text) {
    auto [value, unit] = split(text);
    if (unit.empty() || unit == "rad") return value;
    if (unit == "deg") return value * std::numbers::pi / 180.0;
    bad_unit(text, "angle (rad, deg)");
}

std::string format_number(double value) { return fmt::format("{}", value); }

}  // namespace relaysim::units
