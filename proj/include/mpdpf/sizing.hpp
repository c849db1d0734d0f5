#pragma once

// Key-size accounting.
//
// Analytic sizes are information bits: a seed costs lambda bits and a field
// element costs L = sum_i ceil(lg q_i) bits. Measured sizes are serialized
// bytes, which add a fixed header and per-residue byte padding. The
// *_serialized_bytes functions predict the measured size exactly.

#include "mpdpf/algebra.hpp"
#include "mpdpf/dpf.hpp"
#include "mpdpf/formula.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpdpf {

// ---- our scheme --------------------------------------------------------------

/// R * binom(p-1,m) * (lambda + L) + V * L, with (R, V) from choose_grid.
double size_ours(std::uint64_t domain_size, unsigned parties, unsigned corruption, unsigned lambda,
                 const Modulus &modulus, GridMode mode = GridMode::kAuto);
/// Same formula at an explicit grid.
double size_ours(const SchemeParams &params);
std::uint64_t ours_serialized_bytes(const SchemeParams &params);
/// Bits lost to rounding residues up to whole bytes in a serialized key.
std::uint64_t ours_padding_bits(const SchemeParams &params);

/// size_ours plus R row shares.
double size_dcf(const SchemeParams &params);
std::uint64_t dcf_serialized_bytes(const SchemeParams &params);

// ---- Boyle'15 ------------------------------------------------------------------

/**
 * Expected-seed-count model for one instance over Z_q:
 *   R q^(p-1) (lambda (1 - 1/q) + ceil(lg q) + 32) + V ceil(lg q)
 * minimized over R * V >= N. The 32 is the stored column index.
 * `q` is used as a plain ring size, so a composite q models Boyle'15 without CRT.
 */
double size_boyle(std::uint64_t domain_size, unsigned parties, unsigned lambda, std::uint64_t q);
/// One size_boyle instance per prime factor, summed.
double size_boyle_crt(std::uint64_t domain_size, unsigned parties, unsigned lambda, const Modulus &modulus);

/// Exact information bits of an implemented Boyle key at these params:
/// R * 32 + R * (q-1) q^(p-2) * (32 + lambda + L) + V * L.
std::uint64_t boyle_payload_bits(const SchemeParams &params);
std::uint64_t boyle_serialized_bytes(const SchemeParams &params);

// ---- trivial and Bunn et al. ---------------------------------------------------

/// N * L.
double size_trivial(std::uint64_t domain_size, const Modulus &modulus);
std::uint64_t trivial_serialized_bytes(const SchemeParams &params);

/// c_it * ceil(sqrt N) * binom(p, m+1) * L. An approximation: the constant is not known.
double size_bunn_it(std::uint64_t domain_size, unsigned parties, unsigned corruption, const Modulus &modulus,
                    double c_it = 1.0);

/// User-supplied formula over N, p, m, q (modulus value), L, C, lambda.
double size_bunn_prg(const Formula &formula, std::uint64_t domain_size, unsigned parties, unsigned corruption,
                     unsigned lambda, const Modulus &modulus);

// ---- figure datasets -------------------------------------------------------------

enum class FigureId { kModulus, kPrimorial, kDomain, kParties };

FigureId parse_figure_id(std::string_view name);
std::string_view figure_name(FigureId id);

struct FigureConfig {
    unsigned parties = 7;
    std::optional<unsigned> corruption; ///< default floor((p-1)/2)
    unsigned lambda = 128;
    std::uint64_t domain_size = 1'000'000;
    GridMode grid = GridMode::kAuto;
    double c_it = 1.0;
    std::optional<std::string> bunn_prg_formula;

    // modulus sweep: square-free moduli in [2, max_modulus]
    std::uint64_t max_modulus = 256;
    bool primes_only = false;
    // primorial sweep: first 1..max_primorial primorials
    unsigned max_primorial = 10;
    // domain and party sweeps run at this modulus
    std::string sweep_modulus = "2147483647";
    std::uint64_t min_domain = 100;
    std::uint64_t max_domain = 100'000'000;
    unsigned points_per_decade = 1;
    std::vector<unsigned> party_counts = {3, 5, 7, 9, 11};
};

struct FigureRow {
    std::string scheme;
    double x = 0;
    double bits = 0;
};

struct FigureDataset {
    FigureId id = FigureId::kModulus;
    std::vector<FigureRow> rows; ///< sorted by (scheme, x)

    /// Bits for (scheme, x); throws ParameterError when absent.
    double bits(std::string_view scheme, double x) const;
};

FigureDataset emit_figure(FigureId id, const FigureConfig &config);
/// Header "scheme,x,bits"; numbers in shortest round-trip form.
void write_csv(const FigureDataset &dataset, std::ostream &out);

/// The value of floor((p-1)/2), the default corruption bound in sweeps.
inline unsigned default_corruption(unsigned parties) { return (parties - 1) / 2; }

} // namespace mpdpf
