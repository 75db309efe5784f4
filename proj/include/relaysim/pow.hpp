#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relaysim::pow {

using Uint256 = boost::multiprecision::uint256_t;
using Digest = std::array<std::uint8_t, 32>;

/// Bitcoin-style compact difficulty: high byte is the exponent, low three
/// bytes the coefficient.
struct CompactBits {
    std::uint32_t raw = 0;

    std::uint32_t exponent() const { return raw >> 24; }
    std::uint32_t coefficient() const { return raw & 0x00ffffffu; }
};

/// Parse exactly eight hex digits (an optional 0x prefix is allowed).
/// Throws ParseError otherwise.
CompactBits parse_compact_hex(const std::string& text);

struct Target {
    Uint256 value;

    static Target max() { return {~Uint256(0)}; }
    /// 2^bits; bits must be below 256.
    static Target power_of_two(unsigned bits);

    std::string to_decimal() const;
    /// 64 lowercase hex digits, zero padded.
    std::string to_hex() const;

    friend bool operator==(const Target&, const Target&) = default;
};

/// coefficient * 2^(8 (exponent - 3)); right shift when exponent < 3.
/// Throws DomainError when the result does not fit in 256 bits.
Target decode_compact(CompactBits bits);

Digest sha256(std::span<const std::uint8_t> data);

/// Digest read as a big-endian unsigned integer.
Uint256 digest_value(const Digest& digest);

/// True iff SHA-256(header) < target.
bool check_pow(std::span<const std::uint8_t> header, const Target& target);

/// Smallest nonce in [0, max_nonce) whose template || be32(nonce) meets the
/// target, or nullopt when none does. max_nonce is capped at 2^32.
std::optional<std::uint32_t> mine(std::span<const std::uint8_t> header_template,
                                  const Target& target, std::uint64_t max_nonce);

/// template || be32(nonce)
std::vector<std::uint8_t> with_nonce(std::span<const std::uint8_t> header_template,
                                     std::uint32_t nonce);

struct SubsidySchedule {
    std::uint64_t initial_subsidy = 50ull * 100'000'000ull;
    std::uint64_t halving_interval = 210'000;
    std::uint64_t atomic_units_per_coin = 100'000'000;
};

std::uint64_t block_subsidy(std::uint64_t height, const SubsidySchedule& schedule = {});

/// Exact sum of block_subsidy over every height.
std::uint64_t total_supply(const SubsidySchedule& schedule = {});

}  // namespace relaysim::pow
