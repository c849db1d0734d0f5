#pragma once

// Shared test oracles and generators. Everything here is deliberately naive:
// direct loops over the truth table, brute-force sums and a plain chi-square.

#include "mpdpf/algebra.hpp"
#include "mpdpf/random.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace testing {

using mpdpf::FieldElement;
using mpdpf::Modulus;

/// f(x) = beta * [x == alpha], as a lifted integer.
inline std::uint64_t point_truth(std::uint64_t alpha, std::uint64_t beta, std::uint64_t x) {
    return x == alpha ? beta : 0;
}

/// f(x) = beta * [x <= alpha].
inline std::uint64_t comparison_truth(std::uint64_t alpha, std::uint64_t beta, std::uint64_t x) {
    return x <= alpha ? beta : 0;
}

/// Sums lifted integers modulo the modulus value, independent of FieldElement.
inline std::uint64_t sum_mod(const std::vector<std::uint64_t> &values, std::uint64_t q) {
    unsigned __int128 acc = 0;
    for (auto v : values) acc += v;
    return static_cast<std::uint64_t>(acc % q);
}

template <class Keys, class EvalFn>
std::uint64_t decode_at(const Keys &keys, std::uint64_t x, std::uint64_t q, EvalFn eval_fn) {
    std::vector<std::uint64_t> lifted;
    for (const auto &k : keys) lifted.push_back(eval_fn(k, x).lift());
    return sum_mod(lifted, q);
}

/// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_); }
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }
    FieldElement element(const Modulus &mod) { return FieldElement::from_integer(mod, below(mod.value())); }
    FieldElement nonzero(const Modulus &mod) { return FieldElement::from_integer(mod, range(1, mod.value() - 1)); }
    std::mt19937_64 &engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::uint64_t> &counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0;
    for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    return stat;
}

/// Two-sample homogeneity statistic over a shared set of categories.
inline double chi_square_two_sample(const std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b) {
    double na = 0, nb = 0;
    for (auto v : a) na += static_cast<double>(v);
    for (auto v : b) nb += static_cast<double>(v);
    double stat = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double col = static_cast<double>(a[k] + b[k]);
        if (col == 0) continue;
        const double ea = col * na / (na + nb);
        const double eb = col * nb / (na + nb);
        stat += (a[k] - ea) * (a[k] - ea) / ea + (b[k] - eb) * (b[k] - eb) / eb;
    }
    return stat;
}

/// Upper-tail critical value at significance `alpha` (0.001 for the 99.9% level).
inline double chi_square_critical(double dof, double alpha = 0.001) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

} // namespace testing
