#include "mpdpf/dcf.hpp"

#include "dpf_internal.hpp"
#include "mpdpf/errors.hpp"

namespace mpdpf {

std::vector<DcfKey> dcf_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng) {
    validate_honest_majority(params);
    if (point.alpha >= params.domain_size) throw ParameterError("alpha must be below the domain size N");
    if (!(point.beta.modulus() == params.modulus)) throw ParameterError("beta is not over the scheme modulus");

    const std::uint64_t target_row = point.alpha / params.cols;
    const std::uint64_t target_col = point.alpha % params.cols;
    FieldVector prefix(params.modulus, params.cols);
    for (std::uint64_t k = 0; k <= target_col; ++k) prefix.set(k, point.beta);

    auto base = detail::gen_with_target(params, target_row, prefix, rng);

    const unsigned p = params.parties;
    const FieldElement zero = FieldElement::zero(params.modulus);
    std::vector<FieldVector> row_shares(p, FieldVector(params.modulus, params.rows));
    for (std::uint64_t row = 0; row < params.rows; ++row) {
        FieldElement rest = row < target_row ? point.beta : zero;
        for (unsigned i = 0; i + 1 < p; ++i) {
            FieldElement share = rng.uniform_element(params.modulus);
            rest -= share;
            row_shares[i].set(row, share);
        }
        row_shares[p - 1].set(row, rest);
    }

    std::vector<DcfKey> keys;
    keys.reserve(p);
    for (unsigned i = 0; i < p; ++i) keys.push_back(DcfKey{std::move(base[i]), std::move(row_shares[i])});
    return keys;
}

void check_key(const DcfKey &key) {
    check_key(key.base);
    if (key.row_shares.size() != key.base.params.rows || !(key.row_shares.modulus() == key.base.params.modulus)) {
        throw FormatError("comparison key row-share vector mismatch");
    }
}

FieldElement dcf_eval(const DcfKey &key, std::uint64_t x) {
    check_key(key);
    const FieldElement point_part = eval(key.base, x);
    return point_part + key.row_shares.at(x / key.base.params.cols);
}

FieldVector dcf_eval_all(const DcfKey &key) {
    check_key(key);
    FieldVector out = eval_all(key.base);
    const auto &params = key.base.params;
    for (std::size_t f = 0; f < params.modulus.factor_count(); ++f) {
        const std::uint64_t q = params.modulus.factor(f);
        auto plane = out.plane(f);
        const auto shares = key.row_shares.plane(f);
        for (std::uint64_t x = 0; x < params.domain_size; ++x) {
            plane[x] = static_cast<std::uint32_t>((plane[x] + shares[x / params.cols]) % q);
        }
    }
    return out;
}

} // namespace mpdpf
