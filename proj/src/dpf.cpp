#include "mpdpf/dpf.hpp"

#include "dpf_internal.hpp"

#include "mpdpf/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <string>

namespace mpdpf {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

std::uint64_t ceil_sqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

FieldElement row_coefficient_zero_share(const DpfKey &key, std::uint64_t row) {
    // Column 0 is {0..m}; when present it is the party's first tuple.
    if (key.party <= key.params.corruption) return key.share(row, 0);
    return FieldElement::zero(key.params.modulus);
}

} // namespace

void validate_common(const SchemeParams &params) {
    if (params.parties < 2 || params.parties > 64) throw ParameterError("party count p must be in [2, 64]");
    if (params.corruption < 1 || params.corruption >= params.parties) {
        throw ParameterError("corruption bound m must satisfy 1 <= m < p");
    }
    if (params.lambda < 64 || params.lambda > 2048 || params.lambda % 8 != 0) {
        throw ParameterError("lambda must be a multiple of 8 in [64, 2048]");
    }
    if (params.domain_size < 1) throw ParameterError("domain size N must be at least 1");
    if (params.rows < 1 || params.cols < 1 || params.rows > UINT32_MAX || params.cols > UINT32_MAX) {
        throw ParameterError("grid dimensions must be in [1, 2^32)");
    }
    if (params.rows * params.cols < params.domain_size) throw ParameterError("grid R*V does not cover the domain");
    if ((params.rows - 1) * params.cols >= params.domain_size) throw ParameterError("grid has an empty row");
    if (params.prg.lambda != params.lambda || params.prg.output_len != params.cols ||
        !(params.prg.modulus == params.modulus)) {
        throw ParameterError("PRG parameters do not match the scheme parameters");
    }
}

void validate_honest_majority(const SchemeParams &params) {
    validate_common(params);
    if (2 * params.corruption >= params.parties) {
        throw HonestMajorityError("m must satisfy m < p/2 (got m=" + std::to_string(params.corruption) +
                                  ", p=" + std::to_string(params.parties) + ")");
    }
}

GridShape square_grid(std::uint64_t domain_size) {
    if (domain_size < 1) throw ParameterError("domain size N must be at least 1");
    const std::uint64_t cols = ceil_sqrt(domain_size);
    return {ceil_div(domain_size, cols), cols};
}

GridShape choose_grid(std::uint64_t domain_size, double row_bits, double col_bits) {
    if (domain_size < 1) throw ParameterError("domain size N must be at least 1");
    // Only R = ceil(N/V) can be optimal for its V, and ceil(N/R) takes O(sqrt N) values.
    const std::uint64_t s = ceil_sqrt(domain_size);
    GridShape best{};
    double best_cost = INFINITY;
    auto consider = [&](std::uint64_t rows) {
        const std::uint64_t cols = ceil_div(domain_size, rows);
        const double cost = static_cast<double>(rows) * row_bits + static_cast<double>(cols) * col_bits;
        if (cost < best_cost || (cost == best_cost && rows < best.rows)) {
            best_cost = cost;
            best = {rows, cols};
        }
    };
    for (std::uint64_t r = 1; r <= std::min(s, domain_size); ++r) consider(r);
    for (std::uint64_t v = 1; v <= s; ++v) consider(ceil_div(domain_size, v));
    // ceil(N/R) for the chosen R can leave an empty final row only when a
    // smaller R has the same V, which is cheaper and would have won.
    return best;
}

GridShape choose_grid(std::uint64_t domain_size, unsigned parties, unsigned corruption, unsigned lambda,
                      const Modulus &modulus, GridMode mode) {
    if (mode == GridMode::kSquare) return square_grid(domain_size);
    const double l = modulus.element_bits();
    const double row_bits = static_cast<double>(binom(parties - 1, corruption)) * (lambda + l);
    return choose_grid(domain_size, row_bits, l);
}

SchemeParams make_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                         std::uint64_t domain_size, GridMode mode, PrgAlgorithm prg) {
    if (parties < 2 || corruption >= parties) throw ParameterError("corruption bound m must satisfy m < p");
    if (2 * corruption >= parties) {
        throw HonestMajorityError("m must satisfy m < p/2 (got m=" + std::to_string(corruption) +
                                  ", p=" + std::to_string(parties) + ")");
    }
    const GridShape grid = choose_grid(domain_size, parties, corruption, lambda, modulus, mode);
    SchemeParams params{parties, corruption, lambda, modulus, domain_size, grid.rows, grid.cols,
                        PrgSpec{prg, lambda, static_cast<std::uint32_t>(grid.cols), modulus}};
    validate_honest_majority(params);
    return params;
}

ShareMatrix matrix_of_shares(const FieldElement &secret, const SchemeParams &params, RandomSource &rng) {
    const unsigned p = params.parties;
    const unsigned k = params.subset_size();
    const std::uint64_t columns = params.combinations();
    ShareMatrix out{p, columns, secret, std::vector<std::optional<FieldElement>>(p * columns)};
    for (std::uint64_t j = 0; j < columns; ++j) {
        const auto subset = combination_unrank(j, p, k);
        FieldElement partial = FieldElement::zero(params.modulus);
        for (unsigned idx = 0; idx + 1 < k; ++idx) {
            FieldElement share = rng.uniform_element(params.modulus);
            partial += share;
            out.cells[subset.members[idx] * columns + j] = std::move(share);
        }
        out.cells[subset.members[k - 1] * columns + j] = secret - partial;
#ifndef NDEBUG
        FieldElement sum = FieldElement::zero(params.modulus);
        for (unsigned member : subset.members) sum += *out.cells[member * columns + j];
        assert(sum == secret);
#endif
    }
    return out;
}

namespace detail {

std::vector<DpfKey> gen_with_target(const SchemeParams &params, std::uint64_t target_row, const FieldVector &target,
                                    RandomSource &rng) {
    const unsigned p = params.parties;
    const std::uint64_t columns = params.combinations();
    const std::uint64_t tuples = params.tuples_per_row();
    const FieldElement zero = FieldElement::zero(params.modulus);
    const FieldElement one = FieldElement::one(params.modulus);
    const FieldElement minus_one = -one;

    std::vector<std::vector<std::uint64_t>> party_columns(p);
    for (unsigned i = 0; i < p; ++i) party_columns[i] = combinations_containing(p, params.subset_size(), i);

    std::vector<DpfKey> keys;
    keys.reserve(p);
    for (unsigned i = 0; i < p; ++i) {
        DpfKey key{i, params, {}, FieldVector(params.modulus, params.rows * tuples),
                   FieldVector(params.modulus, params.cols)};
        key.seeds.reserve(params.rows * tuples);
        keys.push_back(std::move(key));
    }

    // W + sum_j G(s_{target_row, j}) = target
    FieldVector correction = target;

    std::set<Seed> used;
    std::vector<Seed> row_seeds(columns);
    for (std::uint64_t row = 0; row < params.rows; ++row) {
        const ShareMatrix matrix = matrix_of_shares(row == target_row ? one : zero, params, rng);
        for (auto &seed : row_seeds) {
            do {
                seed = sample_seed(rng, params.lambda);
            } while (!used.insert(seed).second);
        }
        if (row == target_row) {
            for (const auto &seed : row_seeds) correction.add_scaled(minus_one, expand(seed, params.prg));
        }
        for (unsigned i = 0; i < p; ++i) {
            for (std::uint64_t t = 0; t < tuples; ++t) {
                const std::uint64_t j = party_columns[i][t];
                keys[i].seeds.push_back(row_seeds[j]);
                keys[i].shares.set(row * tuples + t, *matrix.cell(i, j));
            }
        }
    }
    for (auto &key : keys) key.correction = correction;
    return keys;
}

} // namespace detail

std::vector<DpfKey> gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng) {
    validate_honest_majority(params);
    if (point.alpha >= params.domain_size) throw ParameterError("alpha must be below the domain size N");
    if (!(point.beta.modulus() == params.modulus)) throw ParameterError("beta is not over the scheme modulus");
    FieldVector target(params.modulus, params.cols);
    target.set(point.alpha % params.cols, point.beta);
    return detail::gen_with_target(params, point.alpha / params.cols, target, rng);
}

void check_key(const DpfKey &key) {
    try {
        validate_honest_majority(key.params);
    } catch (const ParameterError &e) {
        throw FormatError(std::string("key parameters invalid: ") + e.what());
    }
    const auto &params = key.params;
    const std::uint64_t expected = params.rows * params.tuples_per_row();
    if (key.party >= params.parties) throw FormatError("key party index out of range");
    if (key.seeds.size() != expected || key.shares.size() != expected) throw FormatError("key tuple count mismatch");
    if (key.correction.size() != params.cols) throw FormatError("correction word length mismatch");
    if (!(key.shares.modulus() == params.modulus) || !(key.correction.modulus() == params.modulus)) {
        throw FormatError("key modulus mismatch");
    }
    for (const auto &seed : key.seeds) {
        if (seed.size() != params.lambda / 8 || seed.is_zero()) throw FormatError("malformed seed in key");
    }
}

FieldElement eval(const DpfKey &key, std::uint64_t x) {
    check_key(key);
    const auto &params = key.params;
    if (x >= params.domain_size) throw ParameterError("input x must be below the domain size N");
    const std::uint64_t row = x / params.cols;
    const std::uint64_t col = x % params.cols;

    FieldElement acc = row_coefficient_zero_share(key, row) * key.correction.at(col);
    for (std::uint64_t t = 0; t < params.tuples_per_row(); ++t) {
        const FieldVector g = expand_prefix(key.seed(row, t), params.prg, col + 1);
        acc += key.share(row, t) * g.at(col);
    }
    return acc;
}

FieldVector eval_all(const DpfKey &key) {
    check_key(key);
    const auto &params = key.params;
    const std::size_t factors = params.modulus.factor_count();
    FieldVector out(params.modulus, params.domain_size);
    for (std::uint64_t row = 0; row < params.rows; ++row) {
        FieldVector y(params.modulus, params.cols);
        y.add_scaled(row_coefficient_zero_share(key, row), key.correction);
        for (std::uint64_t t = 0; t < params.tuples_per_row(); ++t) {
            y.add_scaled(key.share(row, t), expand(key.seed(row, t), params.prg));
        }
        const std::uint64_t begin = row * params.cols;
        const std::uint64_t count = std::min(params.cols, params.domain_size - begin);
        for (std::size_t f = 0; f < factors; ++f) {
            std::copy_n(y.plane(f).begin(), count, out.plane(f).begin() + static_cast<std::ptrdiff_t>(begin));
        }
    }
    return out;
}

FieldElement decode(std::span<const FieldElement> shares, unsigned parties) {
    if (shares.size() != parties) {
        throw ParameterError("decode expects " + std::to_string(parties) + " shares, got " +
                             std::to_string(shares.size()));
    }
    return sum_elements(shares);
}

CoalitionView simulate_coalition_view(const SchemeParams &params, std::span<const unsigned> coalition,
                                      RandomSource &rng) {
    validate_honest_majority(params);
    if (coalition.size() > params.corruption) throw ParameterError("coalition larger than the corruption bound m");
    std::vector<unsigned> members(coalition.begin(), coalition.end());
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw ParameterError("coalition members must be distinct");
    }
    for (unsigned i : members) {
        if (i >= params.parties) throw ParameterError("coalition member out of range");
    }

    const std::uint64_t columns = params.combinations();
    const std::uint64_t tuples = params.tuples_per_row();
    FieldVector correction(params.modulus, params.cols);
    for (std::uint64_t k = 0; k < params.cols; ++k) correction.set(k, rng.uniform_element(params.modulus));

    std::vector<std::vector<std::uint64_t>> party_columns;
    CoalitionView view{members, {}};
    for (unsigned i : members) {
        party_columns.push_back(combinations_containing(params.parties, params.subset_size(), i));
        DpfKey key{i, params, {}, FieldVector(params.modulus, params.rows * tuples), correction};
        key.seeds.reserve(params.rows * tuples);
        view.keys.push_back(std::move(key));
    }

    std::vector<std::optional<Seed>> row_seeds(columns);
    for (std::uint64_t row = 0; row < params.rows; ++row) {
        std::fill(row_seeds.begin(), row_seeds.end(), std::nullopt);
        for (std::size_t c = 0; c < members.size(); ++c) {
            for (std::uint64_t t = 0; t < tuples; ++t) {
                auto &seed = row_seeds[party_columns[c][t]];
                if (!seed) seed = sample_seed(rng, params.lambda);
                view.keys[c].seeds.push_back(*seed);
                view.keys[c].shares.set(row * tuples + t, rng.uniform_element(params.modulus));
            }
        }
    }
    return view;
}

bool check_seed_coverage(unsigned parties, unsigned subset_size, std::span<const unsigned> coalition) {
    const std::uint64_t total = binom(parties, subset_size);
    for (std::uint64_t j = 0; j < total; ++j) {
        const auto subset = combination_unrank(j, parties, subset_size);
        const bool disjoint = std::none_of(subset.members.begin(), subset.members.end(), [&](unsigned member) {
            return std::find(coalition.begin(), coalition.end(), member) != coalition.end();
        });
        if (disjoint) return true;
    }
    return false;
}

} // namespace mpdpf
