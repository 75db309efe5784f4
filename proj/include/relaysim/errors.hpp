#pragma once

#include <stdexcept>
#include <string>

namespace relaysim {

/// A physical or numeric domain was violated (superluminal frame, 256-bit overflow).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A caller supplied an invalid argument (negative duration, zero lattice dimension).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The latency graph cannot be used as requested (disconnected, bad edge).
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario document failed to parse. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace relaysim
