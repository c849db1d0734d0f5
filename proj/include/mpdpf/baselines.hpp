#pragma once

// Reference schemes used for comparison.
//
// Boyle'15 dishonest-majority DPF: every grid row carries one seed per
// p-vector of shares summing to the row coefficient, q^(p-1) of them, in a
// random per-row order. A party holds the seeds of the columns where its
// share is non-zero. Exponential in p and q, so guarded to q^(p-1) <= 2^20.
//
// Trivial scheme: an additive sharing of the full truth table.

#include "mpdpf/dpf.hpp"

#include <cstdint>
#include <vector>

namespace mpdpf {

inline constexpr std::uint64_t kMaxBoyleColumns = std::uint64_t{1} << 20;

/// q^(p-1), throwing GuardError if it exceeds kMaxBoyleColumns.
std::uint64_t boyle_columns(unsigned parties, std::uint64_t q);

/// For every row, the number of columns where a fixed party's share is non-zero: (q-1) q^(p-2).
std::uint64_t boyle_nonzero_columns(unsigned parties, std::uint64_t q);

/// Parameters for the Boyle'15 baseline. Prime modulus, 1 <= m < p.
SchemeParams make_boyle_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                               std::uint64_t domain_size, GridMode mode = GridMode::kAuto,
                               PrgAlgorithm prg = PrgAlgorithm::kAesCtr);
void validate_boyle(const SchemeParams &params);

struct BoyleEntry {
    std::uint32_t column = 0;
    Seed seed;
    FieldElement share;

    friend bool operator==(const BoyleEntry &, const BoyleEntry &) = default;
};

struct BoyleKey {
    unsigned party = 0;
    SchemeParams params;
    std::vector<std::vector<BoyleEntry>> rows; ///< per row, entries by increasing column
    FieldVector correction{Modulus::prime(2), 0};

    friend bool operator==(const BoyleKey &, const BoyleKey &) = default;
};

std::vector<BoyleKey> boyle_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng);
FieldElement boyle_eval(const BoyleKey &key, std::uint64_t x);
void check_key(const BoyleKey &key);

/// Parameters for the trivial scheme: R = 1, V = N.
SchemeParams make_trivial_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                                 std::uint64_t domain_size);

struct TrivialKey {
    unsigned party = 0;
    SchemeParams params;
    FieldVector table{Modulus::prime(2), 0};

    friend bool operator==(const TrivialKey &, const TrivialKey &) = default;
};

std::vector<TrivialKey> trivial_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng);
FieldElement trivial_eval(const TrivialKey &key, std::uint64_t x);
void check_key(const TrivialKey &key);

} // namespace mpdpf
