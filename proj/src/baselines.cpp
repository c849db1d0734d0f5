#include "mpdpf/baselines.hpp"

#include "mpdpf/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace mpdpf {

namespace {

const BoyleEntry *find_column(const std::vector<BoyleEntry> &row, std::uint32_t column) {
    auto it = std::lower_bound(row.begin(), row.end(), column,
                               [](const BoyleEntry &e, std::uint32_t c) { return e.column < c; });
    return it != row.end() && it->column == column ? &*it : nullptr;
}

} // namespace

std::uint64_t boyle_columns(unsigned parties, std::uint64_t q) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i + 1 < parties; ++i) {
        if (count > kMaxBoyleColumns / q) {
            throw GuardError("exponential blow-up: q^(p-1) = " + std::to_string(q) + "^" +
                             std::to_string(parties - 1) + " columns per row exceeds 2^20");
        }
        count *= q;
    }
    return count;
}

std::uint64_t boyle_nonzero_columns(unsigned parties, std::uint64_t q) {
    return boyle_columns(parties, q) / q * (q - 1);
}

void validate_boyle(const SchemeParams &params) {
    validate_common(params);
    if (!params.modulus.is_prime()) throw ParameterError("the Boyle'15 baseline supports prime moduli only");
    boyle_columns(params.parties, params.modulus.value());
}

SchemeParams make_boyle_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                               std::uint64_t domain_size, GridMode mode, PrgAlgorithm prg) {
    if (!modulus.is_prime()) throw ParameterError("the Boyle'15 baseline supports prime moduli only");
    if (parties < 2) throw ParameterError("party count p must be at least 2");
    const std::uint64_t q = modulus.value();
    const double l = modulus.element_bits();
    GridShape grid = square_grid(domain_size);
    if (mode == GridMode::kAuto) {
        const double nonzero = static_cast<double>(boyle_nonzero_columns(parties, q));
        grid = choose_grid(domain_size, nonzero * (32.0 + lambda + l) + 32.0, l);
    }
    SchemeParams params{parties, corruption, lambda, modulus, domain_size, grid.rows, grid.cols,
                        PrgSpec{prg, lambda, static_cast<std::uint32_t>(grid.cols), modulus}};
    validate_boyle(params);
    return params;
}

std::vector<BoyleKey> boyle_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng) {
    validate_boyle(params);
    if (point.alpha >= params.domain_size) throw ParameterError("alpha must be below the domain size N");
    if (!(point.beta.modulus() == params.modulus)) throw ParameterError("beta is not over the scheme modulus");

    const unsigned p = params.parties;
    const std::uint64_t q = params.modulus.value();
    const std::uint64_t columns = boyle_columns(p, q);
    const std::uint64_t target_row = point.alpha / params.cols;
    const FieldElement minus_one = -FieldElement::one(params.modulus);

    std::vector<BoyleKey> keys(p);
    for (unsigned i = 0; i < p; ++i) {
        keys[i].party = i;
        keys[i].params = params;
        keys[i].rows.resize(params.rows);
    }

    FieldVector correction(params.modulus, params.cols);
    correction.set(point.alpha % params.cols, point.beta);

    std::set<Seed> used;
    std::vector<std::uint32_t> order(columns);
    std::vector<std::uint64_t> shares(p);
    for (std::uint64_t row = 0; row < params.rows; ++row) {
        const std::uint64_t coefficient = row == target_row ? 1 : 0;
        std::iota(order.begin(), order.end(), 0u);
        for (std::uint64_t j = columns - 1; j > 0; --j) std::swap(order[j], order[rng.uniform_below(j + 1)]);

        for (std::uint64_t j = 0; j < columns; ++j) {
            Seed seed;
            do {
                seed = sample_seed(rng, params.lambda);
            } while (!used.insert(seed).second);

            // Share vector number order[j]: base-q digits for parties 0..p-2, the last one completes the sum.
            std::uint64_t digits = order[j];
            std::uint64_t sum = 0;
            for (unsigned i = 0; i + 1 < p; ++i) {
                shares[i] = digits % q;
                digits /= q;
                sum = (sum + shares[i]) % q;
            }
            shares[p - 1] = (coefficient + q - sum) % q;

            if (row == target_row) correction.add_scaled(minus_one, expand(seed, params.prg));
            for (unsigned i = 0; i < p; ++i) {
                if (shares[i] == 0) continue;
                keys[i].rows[row].push_back(BoyleEntry{static_cast<std::uint32_t>(j), seed,
                                                       FieldElement(params.modulus, {shares[i]})});
            }
        }
    }
    for (auto &key : keys) key.correction = correction;
    return keys;
}

void check_key(const BoyleKey &key) {
    try {
        validate_boyle(key.params);
    } catch (const ParameterError &e) {
        throw FormatError(std::string("key parameters invalid: ") + e.what());
    }
    const auto &params = key.params;
    const std::uint64_t columns = boyle_columns(params.parties, params.modulus.value());
    if (key.party >= params.parties) throw FormatError("key party index out of range");
    if (key.rows.size() != params.rows) throw FormatError("key row count mismatch");
    if (key.correction.size() != params.cols) throw FormatError("correction word length mismatch");
    for (const auto &row : key.rows) {
        for (std::size_t e = 0; e < row.size(); ++e) {
            if (row[e].column >= columns || (e > 0 && row[e].column <= row[e - 1].column)) {
                throw FormatError("Boyle key columns must be increasing and in range");
            }
            if (row[e].seed.size() != params.lambda / 8 || row[e].seed.is_zero()) {
                throw FormatError("malformed seed in key");
            }
        }
    }
}

FieldElement boyle_eval(const BoyleKey &key, std::uint64_t x) {
    check_key(key);
    const auto &params = key.params;
    if (x >= params.domain_size) throw ParameterError("input x must be below the domain size N");
    const std::uint64_t row = x / params.cols;
    const std::uint64_t col = x % params.cols;

    FieldElement acc = FieldElement::zero(params.modulus);
    if (const auto *first = find_column(key.rows[row], 0)) acc = first->share * key.correction.at(col);
    for (const auto &entry : key.rows[row]) {
        acc += entry.share * expand_prefix(entry.seed, params.prg, col + 1).at(col);
    }
    return acc;
}

SchemeParams make_trivial_params(unsigned parties, unsigned corruption, unsigned lambda, const Modulus &modulus,
                                 std::uint64_t domain_size) {
    if (domain_size < 1 || domain_size > UINT32_MAX) throw ParameterError("trivial scheme needs 1 <= N < 2^32");
    SchemeParams params{parties, corruption, lambda, modulus, domain_size, 1, domain_size,
                        PrgSpec{PrgAlgorithm::kAesCtr, lambda, static_cast<std::uint32_t>(domain_size), modulus}};
    validate_common(params);
    return params;
}

std::vector<TrivialKey> trivial_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng) {
    validate_common(params);
    if (params.rows != 1 || params.cols != params.domain_size) throw ParameterError("trivial scheme uses R=1, V=N");
    if (point.alpha >= params.domain_size) throw ParameterError("alpha must be below the domain size N");
    if (!(point.beta.modulus() == params.modulus)) throw ParameterError("beta is not over the scheme modulus");

    const unsigned p = params.parties;
    FieldVector last(params.modulus, params.domain_size);
    last.set(point.alpha, point.beta);
    const FieldElement minus_one = -FieldElement::one(params.modulus);

    std::vector<TrivialKey> keys;
    for (unsigned i = 0; i + 1 < p; ++i) {
        FieldVector table(params.modulus, params.domain_size);
        for (std::uint64_t x = 0; x < params.domain_size; ++x) table.set(x, rng.uniform_element(params.modulus));
        last.add_scaled(minus_one, table);
        keys.push_back(TrivialKey{i, params, std::move(table)});
    }
    keys.push_back(TrivialKey{p - 1, params, std::move(last)});
    return keys;
}

void check_key(const TrivialKey &key) {
    try {
        validate_common(key.params);
    } catch (const ParameterError &e) {
        throw FormatError(std::string("key parameters invalid: ") + e.what());
    }
    if (key.party >= key.params.parties) throw FormatError("key party index out of range");
    if (key.params.rows != 1 || key.params.cols != key.params.domain_size) {
        throw FormatError("trivial key must use R=1, V=N");
    }
    if (key.table.size() != key.params.domain_size || !(key.table.modulus() == key.params.modulus)) {
        throw FormatError("trivial key table mismatch");
    }
}

FieldElement trivial_eval(const TrivialKey &key, std::uint64_t x) {
    check_key(key);
    if (x >= key.params.domain_size) throw ParameterError("input x must be below the domain size N");
    return key.table.at(x);
}

} // namespace mpdpf
