#pragma once

#include "mpdpf/algebra.hpp"
#include "mpdpf/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpdpf {

/// One-byte algorithm tag recorded in every key header.
enum class PrgAlgorithm : std::uint8_t {
    kAesCtr = 0,    ///< AES-256-CTR keyed by SHA-256 of the seed.
    kTestLcg = 255, ///< Linear-congruential byte stream. Tests only, not secure.
};

bool is_known_prg_algorithm(std::uint8_t tag);

/// A lambda-bit PRG seed. The all-zero value is reserved and never sampled.
class Seed {
public:
    Seed() = default;
    explicit Seed(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::size_t size() const { return bytes_.size(); }
    bool is_zero() const;

    friend bool operator==(const Seed &, const Seed &) = default;
    friend auto operator<=>(const Seed &, const Seed &) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

/// Identifies an expansion G : {0,1}^lambda -> Z_q^output_len bit-exactly.
struct PrgSpec {
    PrgAlgorithm algorithm = PrgAlgorithm::kAesCtr;
    unsigned lambda = 128;
    std::uint32_t output_len = 0;
    Modulus modulus = Modulus::prime(2);

    friend bool operator==(const PrgSpec &, const PrgSpec &) = default;
};

/**
 * Expands `seed` into `spec.output_len` field elements.
 *
 * Each prime factor q_i gets its own keyed byte stream (domain-separated by
 * the factor index). Samples are ceil(ceil(lg q_i)/8) little-endian bytes
 * masked to ceil(lg q_i) bits and rejected when >= q_i.
 */
FieldVector expand(const Seed &seed, const PrgSpec &spec);

/// The first `count` elements of expand(seed, spec).
FieldVector expand_prefix(const Seed &seed, const PrgSpec &spec, std::size_t count);

/// Uniform non-zero seed of `lambda` bits.
Seed sample_seed(RandomSource &rng, unsigned lambda);

/// Number of expand/expand_prefix calls since the last reset (process-wide).
std::uint64_t prg_expansion_count();
void reset_prg_expansion_count();

/// Rejection loop cap per element.
inline constexpr std::uint32_t kMaxRejectionsPerElement = 1u << 20;

} // namespace mpdpf
