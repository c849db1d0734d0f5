#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpdpf {

// Prime factors are < 2^31 so residue products fit in 64 bits.
inline constexpr std::uint64_t kMaxPrimeFactor = (std::uint64_t{1} << 31) - 1;
// Largest primorial whose value stays below 2^63.
inline constexpr unsigned kMaxPrimorialIndex = 15;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// ceil(lg q): number of bits needed for values in [0, q).
inline unsigned bit_length_of_range(std::uint64_t q) {
    unsigned bits = 0;
    for (std::uint64_t v = q - 1; v != 0; v >>= 1) ++bits;
    return bits == 0 ? 1 : bits;
}

/// Bytes used to encode one residue mod q.
inline unsigned byte_length_of_range(std::uint64_t q) { return (bit_length_of_range(q) + 7) / 8; }

/**
 * A square-free modulus q_1 * ... * q_l stored as its strictly increasing
 * prime factors. A prime modulus has a single factor. Cheap to copy.
 */
class Modulus {
public:
    /// Validates primality, ordering and the factor/product width caps.
    explicit Modulus(std::vector<std::uint64_t> factors);

    static Modulus prime(std::uint64_t q) { return Modulus({q}); }
    /// Factors `value` by trial division.
    static Modulus from_value(std::uint64_t value);
    /// Accepts "15", "2147483647" or an explicit factor list "2*3*5*7".
    static Modulus parse(std::string_view text);

    std::span<const std::uint64_t> factors() const { return *factors_; }
    std::size_t factor_count() const { return factors_->size(); }
    std::uint64_t factor(std::size_t i) const { return (*factors_)[i]; }
    std::uint64_t value() const { return value_; }
    bool is_prime() const { return factors_->size() == 1; }

    /// Sum over factors of ceil(lg q_i).
    unsigned element_bits() const;
    /// Sum over factors of ceil(ceil(lg q_i) / 8).
    unsigned element_bytes() const;

    std::string to_string() const;

    friend bool operator==(const Modulus &a, const Modulus &b) {
        return a.factors_ == b.factors_ || *a.factors_ == *b.factors_;
    }

private:
    std::shared_ptr<const std::vector<std::uint64_t>> factors_;
    std::uint64_t value_ = 1;
};

/// Product of the first n primes.
Modulus primorial(unsigned n);

/// An element of Z_q for square-free q held as one residue per prime factor.
class FieldElement {
public:
    FieldElement(Modulus modulus, std::vector<std::uint64_t> residues);

    static FieldElement zero(const Modulus &modulus);
    static FieldElement one(const Modulus &modulus);
    /// Reduces an integer into every residue.
    static FieldElement from_integer(const Modulus &modulus, std::uint64_t value);

    const Modulus &modulus() const { return modulus_; }
    std::span<const std::uint64_t> residues() const { return residues_; }
    std::uint64_t residue(std::size_t i) const { return residues_[i]; }
    bool is_zero() const;

    /// The unique v in [0, modulus.value()) congruent to every residue.
    std::uint64_t lift() const;

    FieldElement operator+(const FieldElement &rhs) const;
    FieldElement operator-(const FieldElement &rhs) const;
    FieldElement operator*(const FieldElement &rhs) const;
    FieldElement operator-() const;
    FieldElement &operator+=(const FieldElement &rhs) { return *this = *this + rhs; }
    FieldElement &operator-=(const FieldElement &rhs) { return *this = *this - rhs; }

    friend bool operator==(const FieldElement &a, const FieldElement &b) {
        return a.modulus_ == b.modulus_ && a.residues_ == b.residues_;
    }

private:
    void require_same_modulus(const FieldElement &rhs) const;

    Modulus modulus_;
    std::vector<std::uint64_t> residues_;
};

inline FieldElement field_add(const FieldElement &a, const FieldElement &b) { return a + b; }
inline FieldElement field_mul(const FieldElement &a, const FieldElement &b) { return a * b; }
inline FieldElement field_neg(const FieldElement &a) { return -a; }
inline std::uint64_t crt_lift(const FieldElement &e) { return e.lift(); }

/**
 * Dense vector of field elements, one contiguous residue plane per prime
 * factor. This is the layout used for PRG outputs, correction words and
 * full-domain evaluations.
 */
class FieldVector {
public:
    FieldVector(Modulus modulus, std::size_t size);

    const Modulus &modulus() const { return modulus_; }
    std::size_t size() const { return size_; }

    std::span<std::uint32_t> plane(std::size_t factor) { return planes_[factor]; }
    std::span<const std::uint32_t> plane(std::size_t factor) const { return planes_[factor]; }

    FieldElement at(std::size_t i) const;
    void set(std::size_t i, const FieldElement &e);

    /// this[k] += coeff * other[k] for every k.
    void add_scaled(const FieldElement &coeff, const FieldVector &other);

    friend bool operator==(const FieldVector &a, const FieldVector &b) {
        return a.modulus_ == b.modulus_ && a.planes_ == b.planes_;
    }

private:
    Modulus modulus_;
    std::size_t size_;
    std::vector<std::vector<std::uint32_t>> planes_;
};

/// Sum of the elements; all must share one modulus. Throws on empty input.
FieldElement sum_elements(std::span<const FieldElement> elements);

// ---- combinations ----------------------------------------------------------

/// n choose k, throwing ParameterError if the result exceeds 64 bits.
std::uint64_t binom(std::uint64_t n, std::uint64_t k);

/// A k-subset of {0..p-1} with its rank in lexicographic order.
struct CombinationIndex {
    unsigned p = 0;
    unsigned k = 0;
    std::uint64_t rank = 0;
    std::vector<unsigned> members;
};

CombinationIndex combination_rank(std::span<const unsigned> members, unsigned p);
CombinationIndex combination_unrank(std::uint64_t rank, unsigned p, unsigned k);

/// Ranks of every k-subset of {0..p-1} that contains `party`, increasing.
std::vector<std::uint64_t> combinations_containing(unsigned p, unsigned k, unsigned party);

} // namespace mpdpf
