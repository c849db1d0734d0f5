#pragma once

// Binary key container, little-endian throughout:
//
//   "DPFK" | version u8 = 1 | scheme u8 | party u16 | p u16 | m u16 | lambda u16
//   | N u64 | R u32 | V u32 | factor count u8 | factors u64 each
//   | PRG tag u8 | PRG lambda u16 | PRG output_len u32
//   | scheme payload
//
// Field elements are encoded per prime factor, ceil(ceil(lg q_i)/8) bytes each.
// Payloads:
//   1 honest-majority: R rows x binom(p-1,m) tuples of (seed, share), then W (V elements)
//   2 Boyle'15:         R rows of { count u32, count x (column u32, seed, share) }, then W
//   3 trivial:          N table elements
//   4 comparison:       as 1, followed by the R row shares B

#include "mpdpf/baselines.hpp"
#include "mpdpf/dcf.hpp"
#include "mpdpf/dpf.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace mpdpf {

enum class SchemeTag : std::uint8_t {
    kHonestMajority = 1,
    kBoyle = 2,
    kTrivial = 3,
    kComparison = 4,
};

inline constexpr std::uint8_t kKeyFormatVersion = 1;

using AnyKey = std::variant<DpfKey, BoyleKey, TrivialKey, DcfKey>;

SchemeTag scheme_tag(const AnyKey &key);
const SchemeParams &key_params(const AnyKey &key);
unsigned key_party(const AnyKey &key);

/// Fixed header length: 38 + 8 * factor count bytes.
std::size_t header_size(std::size_t factor_count);

std::vector<std::uint8_t> serialize(const DpfKey &key);
std::vector<std::uint8_t> serialize(const BoyleKey &key);
std::vector<std::uint8_t> serialize(const TrivialKey &key);
std::vector<std::uint8_t> serialize(const DcfKey &key);
std::vector<std::uint8_t> serialize(const AnyKey &key);

/// Throws FormatError on anything malformed, including trailing bytes.
AnyKey parse_key(std::span<const std::uint8_t> bytes);

/// Evaluates any scheme's key at x.
FieldElement eval_any(const AnyKey &key, std::uint64_t x);
/// Evaluates any scheme's key on the whole domain.
FieldVector eval_all_any(const AnyKey &key);

std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

} // namespace mpdpf
