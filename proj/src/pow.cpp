#include "relaysim/pow.hpp"

#include <cctype>
#include <memory>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "relaysim/errors.hpp"

namespace relaysim::pow {

namespace mp = boost::multiprecision;

CompactBits parse_compact_hex(const std::string& text) {
    std::string digits = text;
    if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        digits = digits.substr(2);
    }
    if (digits.size() != 8) {
        throw ParseError(fmt::format("compact bits must be 8 hex digits, got '{}'", text));
    }
    std::uint32_t raw = 0;
    for (char ch : digits) {
        if (!std::isxdigit(static_cast<unsigned char>(ch))) {
            throw ParseError(fmt::format("compact bits must be 8 hex digits, got '{}'", text));
        }
        const int nibble = std::isdigit(static_cast<unsigned char>(ch))
                               ? ch - '0'
                               : std::tolower(static_cast<unsigned char>(ch)) - 'a' + 10;
        raw = (raw << 4) | static_cast<std::uint32_t>(nibble);
    }
    return {raw};
}

Target Target::power_of_two(unsigned bits) {
    if (bits >= 256) {
        throw DomainError(fmt::format("2^{} does not fit in 256 bits", bits));
    }
    return {Uint256(1) << bits};
}

std::string Target::to_decimal() const { return value.str(); }

std::string Target::to_hex() const {
    std::string hex = value.str(0, std::ios_base::hex);
    for (auto& ch : hex) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (hex.size() < 64) hex.insert(0, 64 - hex.size(), '0');
    return hex;
}

Target decode_compact(CompactBits bits) {
    const std::uint32_t exponent = bits.exponent();
    const mp::cpp_int coefficient = bits.coefficient();
    mp::cpp_int result;
    if (exponent < 3) {
        result = coefficient >> (8 * (3 - exponent));
    } else {
        result = coefficient << (8 * (exponent - 3));
    }
    if (mp::msb(result | 1) >= 256) {
        throw DomainError(fmt::format("compact bits 0x{:08x} overflow 256 bits", bits.raw));
    }
    return {result.convert_to<Uint256>()};
}

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &length, EVP_sha256(), nullptr) != 1 ||
        length != out.size()) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    return out;
}

Uint256 digest_value(const Digest& digest) {
    Uint256 value;
    mp::import_bits(value, digest.begin(), digest.end(), 8, true);
    return value;
}

bool check_pow(std::span<const std::uint8_t> header, const Target& target) {
    return digest_value(sha256(header)) < target.value;
}

std::vector<std::uint8_t> with_nonce(std::span<const std::uint8_t> header_template,
                                     std::uint32_t nonce) {
    std::vector<std::uint8_t> header(header_template.begin(), header_template.end());
    header.push_back(static_cast<std::uint8_t>(nonce >> 24));
    header.push_back(static_cast<std::uint8_t>(nonce >> 16));
    header.push_back(static_cast<std::uint8_t>(nonce >> 8));
    header.push_back(static_cast<std::uint8_t>(nonce));
    return header;
}

std::optional<std::uint32_t> mine(std::span<const std::uint8_t> header_template,
                                  const Target& target, std::uint64_t max_nonce) {
    if (max_nonce == 0) {
        throw ArgumentError("max_nonce must be at least 1");
    }
    constexpr std::uint64_t kNonceSpace = std::uint64_t{1} << 32;
    const std::uint64_t limit = std::min(max_nonce, kNonceSpace);

    std::vector<std::uint8_t> header = with_nonce(header_template, 0);
    const std::size_t tail = header.size() - 4;
    for (std::uint64_t n = 0; n < limit; ++n) {
        header[tail] = static_cast<std::uint8_t>(n >> 24);
        header[tail + 1] = static_cast<std::uint8_t>(n >> 16);
        header[tail + 2] = static_cast<std::uint8_t>(n >> 8);
        header[tail + 3] = static_cast<std::uint8_t>(n);
        if (check_pow(header, target)) return static_cast<std::uint32_t>(n);
    }
    return std::nullopt;
}

std::uint64_t block_subsidy(std::uint64_t height, const SubsidySchedule& schedule) {
    if (schedule.halving_interval == 0) {
        throw ArgumentError("halving interval must be positive");
    }
    const std::uint64_t halvings = height / schedule.halving_interval;
    if (halvings >= 64) return 0;
    return schedule.initial_subsidy >> halvings;
}

std::uint64_t total_supply(const SubsidySchedule& schedule) {
    if (schedule.halving_interval == 0) {
        throw ArgumentError("halving interval must be positive");
    }
    mp::cpp_int total = 0;
    for (std::uint64_t era = 0; era < 64; ++era) {
        const std::uint64_t subsidy = schedule.initial_subsidy >> era;
        if (subsidy == 0) break;
        total += mp::cpp_int(subsidy) * schedule.halving_interval;
    }
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw DomainError("total supply exceeds 64 bits");
    }
    return total.convert_to<std::uint64_t>();
}

}  // namespace relaysim::pow
