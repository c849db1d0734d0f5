#pragma once

// Honest-majority multi-party DPF.
//
// The domain [0, N) is laid out as an R x V grid, x = (x / V, x % V). Every
// row owns C = binom(p, m+1) seeds, one per (m+1)-subset S_j of the parties,
// and a p x C share matrix whose column j additively shares the row
// coefficient (1 on the target row, 0 elsewhere) among the members of S_j.
// A single correction word W of length V unmasks e_delta * beta on the target
// row. Party i holds, for every row, the (seed, share) pairs of the columns
// it belongs to, plus W.

#include "mpdpf/algebra.hpp"
#include "mpdpf/prg.hpp"
#include "mpdpf/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mpdpf {

enum class GridMode { kAuto, kSquare };

struct GridShape {
    std::uint64_t rows = 1;
    std::uint64_t cols = 1;
    friend bool operator==(const GridShape &, const GridShape &) = default;
};

/// Public parameters shared by every scheme in this library.
struct SchemeParams {
    unsigned parties = 0;    ///< p
    unsigned corruption = 0; ///< m
    unsigned lambda = 128;
    Modulus modulus = Modulus::prime(2);
    std::uint64_t domain_size = 1; ///< N
    std::uint64_t rows = 1;        ///< R
    std::uint64_t cols = 1;        ///< V
    PrgSpec prg;

    unsigned subset_size() const { return corruption + 1; }
    /// C = binom(p, m+1).
    std::uint64_t combinations() const { return binom(parties, corruption + 1); }
    /// binom(p-1, m): columns containing any fixed party.
    std::uint64_t tuples_per_row() const { return binom(parties - 1, corruption); }
    GridShape grid() const { return {rows, cols}; }

    friend bool operator==(const SchemeParams &, const SchemeParams &) = default;
};

/// Checks everything except the corruption bound (shared by all schemes).
void validate_common(const SchemeParams &params);
/// validate_common plus 1 <= m < p/2.
void validate_honest_majority(const SchemeParams &params);

/// Builds validated honest-majority parameters, choosing the grid with choose_grid.
SchemeParams make_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                         std::uint64_t domain_size, GridMode mode = GridMode::kAuto,
                         PrgAlgorithm prg = PrgAlgorithm::kAesCtr);

/// The (R, V) with R*V >= N minimizing R*row_bits + V*col_bits; ties go to smaller R.
GridShape choose_grid(std::uint64_t domain_size, double row_bits, double col_bits);
/// R = V = ceil(sqrt(N)).
GridShape square_grid(std::uint64_t domain_size);
/// Grid for our scheme: row cost binom(p-1,m)*(lambda + L), column cost L where L = sum ceil(lg q_i).
GridShape choose_grid(std::uint64_t domain_size, unsigned parties, unsigned corruption, unsigned lambda,
                      const Modulus &modulus, GridMode mode);

struct PointDescription {
    std::uint64_t alpha = 0;
    FieldElement beta;
};

/// p x C matrix; cells outside S_j are structural zeros (std::nullopt).
struct ShareMatrix {
    unsigned parties = 0;
    std::uint64_t columns = 0;
    FieldElement secret;
    std::vector<std::optional<FieldElement>> cells; // row-major, parties x columns

    const std::optional<FieldElement> &cell(unsigned party, std::uint64_t column) const {
        return cells[party * columns + column];
    }
};

ShareMatrix matrix_of_shares(const FieldElement &secret, const SchemeParams &params, RandomSource &rng);

/// One party's key.
struct DpfKey {
    unsigned party = 0;
    SchemeParams params;
    /// rows * tuples_per_row entries, row-major; tuple t of a row belongs to the
    /// t-th column (increasing rank) containing `party`.
    std::vector<Seed> seeds;
    FieldVector shares{Modulus::prime(2), 0};
    FieldVector correction{Modulus::prime(2), 0};

    const Seed &seed(std::uint64_t row, std::uint64_t t) const { return seeds[row * params.tuples_per_row() + t]; }
    FieldElement share(std::uint64_t row, std::uint64_t t) const { return shares.at(row * params.tuples_per_row() + t); }

    friend bool operator==(const DpfKey &, const DpfKey &) = default;
};

std::vector<DpfKey> gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng);
FieldElement eval(const DpfKey &key, std::uint64_t x);
/// All N outputs; each seed in the key is expanded exactly once.
FieldVector eval_all(const DpfKey &key);

/// Additive reconstruction. Requires exactly `parties` shares over one modulus.
FieldElement decode(std::span<const FieldElement> shares, unsigned parties);

/// Checks the structural invariants of a key against its params (format errors).
void check_key(const DpfKey &key);

struct CoalitionView {
    std::vector<unsigned> coalition;
    std::vector<DpfKey> keys;
};

/// Keys of `coalition` drawn independently of any point function.
CoalitionView simulate_coalition_view(const SchemeParams &params, std::span<const unsigned> coalition,
                                      RandomSource &rng);

/// True iff some (subset_size)-subset of {0..p-1} is disjoint from `coalition`,
/// i.e. the coalition misses at least one seed on every row.
bool check_seed_coverage(unsigned parties, unsigned subset_size, std::span<const unsigned> coalition);
inline bool check_seed_coverage(const SchemeParams &params, std::span<const unsigned> coalition) {
    return check_seed_coverage(params.parties, params.subset_size(), coalition);
}

} // namespace mpdpf
