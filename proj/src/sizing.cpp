#include "mpdpf/sizing.hpp"

#include "mpdpf/baselines.hpp"
#include "mpdpf/errors.hpp"
#include "mpdpf/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <tuple>

namespace mpdpf {

namespace {

double cost_at(const GridShape &grid, double row_bits, double col_bits) {
    return static_cast<double>(grid.rows) * row_bits + static_cast<double>(grid.cols) * col_bits;
}

// Integral values below 2^53 print as plain integers; the rest in shortest form.
std::string format_number(double v) {
    char buf[64];
    const bool integral = std::abs(v) < 9007199254740992.0 && v == std::floor(v);
    auto [ptr, ec] = integral ? std::to_chars(buf, buf + sizeof buf, static_cast<std::int64_t>(v))
                              : std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw InternalError("number formatting failed");
    return std::string(buf, ptr);
}

} // namespace

double size_ours(std::uint64_t domain_size, unsigned parties, unsigned corruption, unsigned lambda,
                 const Modulus &modulus, GridMode mode) {
    const double l = modulus.element_bits();
    const double row_bits = static_cast<double>(binom(parties - 1, corruption)) * (lambda + l);
    const GridShape grid = choose_grid(domain_size, parties, corruption, lambda, modulus, mode);
    return cost_at(grid, row_bits, l);
}

double size_ours(const SchemeParams &params) {
    const double l = params.modulus.element_bits();
    return cost_at(params.grid(), static_cast<double>(params.tuples_per_row()) * (params.lambda + l), l);
}

std::uint64_t ours_serialized_bytes(const SchemeParams &params) {
    const std::uint64_t element = params.modulus.element_bytes();
    return header_size(params.modulus.factor_count()) +
           params.rows * params.tuples_per_row() * (params.lambda / 8 + element) + params.cols * element;
}

std::uint64_t ours_padding_bits(const SchemeParams &params) {
    const std::uint64_t per_element = 8 * params.modulus.element_bytes() - params.modulus.element_bits();
    return (params.rows * params.tuples_per_row() + params.cols) * per_element;
}

double size_dcf(const SchemeParams &params) {
    return size_ours(params) + static_cast<double>(params.rows) * params.modulus.element_bits();
}

std::uint64_t dcf_serialized_bytes(const SchemeParams &params) {
    return ours_serialized_bytes(params) + params.rows * params.modulus.element_bytes();
}

double size_boyle(std::uint64_t domain_size, unsigned parties, unsigned lambda, std::uint64_t q) {
    if (q < 2) throw ParameterError("Boyle model needs q >= 2");
    const double qd = static_cast<double>(q);
    const double l = bit_length_of_range(q);
    const double row_bits = std::pow(qd, parties - 1) * (lambda * (1.0 - 1.0 / qd) + l + 32.0);
    return cost_at(choose_grid(domain_size, row_bits, l), row_bits, l);
}

double size_boyle_crt(std::uint64_t domain_size, unsigned parties, unsigned lambda, const Modulus &modulus) {
    double total = 0;
    for (auto q : modulus.factors()) total += size_boyle(domain_size, parties, lambda, q);
    return total;
}

std::uint64_t boyle_payload_bits(const SchemeParams &params) {
    const std::uint64_t q = params.modulus.value();
    const std::uint64_t l = params.modulus.element_bits();
    return params.rows * 32 + params.rows * boyle_nonzero_columns(params.parties, q) * (32 + params.lambda + l) +
           params.cols * l;
}

std::uint64_t boyle_serialized_bytes(const SchemeParams &params) {
    const std::uint64_t q = params.modulus.value();
    const std::uint64_t element = params.modulus.element_bytes();
    return header_size(1) + params.rows * 4 +
           params.rows * boyle_nonzero_columns(params.parties, q) * (4 + params.lambda / 8 + element) +
           params.cols * element;
}

double size_trivial(std::uint64_t domain_size, const Modulus &modulus) {
    return static_cast<double>(domain_size) * modulus.element_bits();
}

std::uint64_t trivial_serialized_bytes(const SchemeParams &params) {
    return header_size(params.modulus.factor_count()) + params.domain_size * params.modulus.element_bytes();
}

double size_bunn_it(std::uint64_t domain_size, unsigned parties, unsigned corruption, const Modulus &modulus,
                    double c_it) {
    const double nu = static_cast<double>(square_grid(domain_size).cols);
    return c_it * nu * static_cast<double>(binom(parties, corruption + 1)) * modulus.element_bits();
}

double size_bunn_prg(const Formula &formula, std::uint64_t domain_size, unsigned parties, unsigned corruption,
                     unsigned lambda, const Modulus &modulus) {
    return formula.evaluate({
        {"N", static_cast<double>(domain_size)},
        {"p", static_cast<double>(parties)},
        {"m", static_cast<double>(corruption)},
        {"q", static_cast<double>(modulus.value())},
        {"L", static_cast<double>(modulus.element_bits())},
        {"C", static_cast<double>(binom(parties, corruption + 1))},
        {"lambda", static_cast<double>(lambda)},
    });
}

FigureId parse_figure_id(std::string_view name) {
    if (name == "modulus") return FigureId::kModulus;
    if (name == "primorial") return FigureId::kPrimorial;
    if (name == "domain") return FigureId::kDomain;
    if (name == "parties") return FigureId::kParties;
    throw ParameterError("unknown figure id '" + std::string(name) + "' (expected modulus|primorial|domain|parties)");
}

std::string_view figure_name(FigureId id) {
    switch (id) {
    case FigureId::kModulus: return "modulus";
    case FigureId::kPrimorial: return "primorial";
    case FigureId::kDomain: return "domain";
    case FigureId::kParties: return "parties";
    }
    return "?";
}

double FigureDataset::bits(std::string_view scheme, double x) const {
    for (const auto &row : rows) {
        if (row.scheme == scheme && row.x == x) return row.bits;
    }
    throw ParameterError("no dataset row for scheme '" + std::string(scheme) + "' at x=" + format_number(x));
}

FigureDataset emit_figure(FigureId id, const FigureConfig &config) {
    FigureDataset out{id, {}};
    std::optional<Formula> bunn_prg;
    if (config.bunn_prg_formula) bunn_prg = Formula::parse(*config.bunn_prg_formula);

    auto add = [&](std::string scheme, double x, double bits) { out.rows.push_back({std::move(scheme), x, bits}); };

    // Per-point practical schemes; Boyle curves are added only on modulus sweeps.
    auto add_practical = [&](double x, std::uint64_t n, unsigned p, const Modulus &mod) {
        const unsigned m = config.corruption.value_or(default_corruption(p));
        if (m < 1 || 2 * m >= p) throw ParameterError("sweep needs 1 <= m < p/2");
        add("ours", x, size_ours(n, p, m, config.lambda, mod, config.grid));
        add("bunn_it", x, size_bunn_it(n, p, m, mod, config.c_it));
        add("trivial", x, size_trivial(n, mod));
        if (bunn_prg) add("bunn_prg", x, size_bunn_prg(*bunn_prg, n, p, m, config.lambda, mod));
    };
    auto add_with_boyle = [&](const Modulus &mod) {
        const double x = static_cast<double>(mod.value());
        add_practical(x, config.domain_size, config.parties, mod);
        add("boyle15", x, size_boyle(config.domain_size, config.parties, config.lambda, mod.value()));
        add("boyle15_crt", x, size_boyle_crt(config.domain_size, config.parties, config.lambda, mod));
    };

    switch (id) {
    case FigureId::kModulus:
        for (std::uint64_t v = 2; v <= config.max_modulus; ++v) {
            if (config.primes_only && !is_prime(v)) continue;
            std::optional<Modulus> mod;
            try {
                mod = Modulus::from_value(v);
            } catch (const ParameterError &) {
                continue; // not square-free
            }
            add_with_boyle(*mod);
        }
        break;
    case FigureId::kPrimorial:
        for (unsigned n = 1; n <= config.max_primorial; ++n) add_with_boyle(primorial(n));
        break;
    case FigureId::kDomain: {
        const Modulus mod = Modulus::parse(config.sweep_modulus);
        if (config.points_per_decade < 1) throw ParameterError("points_per_decade must be at least 1");
        const double lo = std::log10(static_cast<double>(config.min_domain));
        const double hi = std::log10(static_cast<double>(config.max_domain));
        std::vector<std::uint64_t> domains;
        for (unsigned k = 0;; ++k) {
            const double e = lo + static_cast<double>(k) / config.points_per_decade;
            if (e > hi + 1e-9) break;
            domains.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, e))));
        }
        domains.erase(std::unique(domains.begin(), domains.end()), domains.end());
        for (auto n : domains) add_practical(static_cast<double>(n), n, config.parties, mod);
        break;
    }
    case FigureId::kParties: {
        const Modulus mod = Modulus::parse(config.sweep_modulus);
        for (unsigned p : config.party_counts) {
            const unsigned m = default_corruption(p);
            add("ours", p, size_ours(config.domain_size, p, m, config.lambda, mod, config.grid));
            add("bunn_it", p, size_bunn_it(config.domain_size, p, m, mod, config.c_it));
            add("trivial", p, size_trivial(config.domain_size, mod));
            if (bunn_prg) add("bunn_prg", p, size_bunn_prg(*bunn_prg, config.domain_size, p, m, config.lambda, mod));
        }
        break;
    }
    }

    std::sort(out.rows.begin(), out.rows.end(), [](const FigureRow &a, const FigureRow &b) {
        return std::tie(a.scheme, a.x) < std::tie(b.scheme, b.x);
    });
    return out;
}

void write_csv(const FigureDataset &dataset, std::ostream &out) {
    out << "scheme,x,bits\n";
    for (const auto &row : dataset.rows) out << row.scheme << ',' << format_number(row.x) << ',' << format_number(row.bits) << '\n';
}

} // namespace mpdpf
