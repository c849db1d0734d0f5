#pragma once

// Comparison functions f(x) = beta if x <= alpha, else 0.
//
// Built on the honest-majority DPF machinery: the target row's correction
// word unmasks the prefix vector (beta on columns <= delta*, 0 after) and
// every row additionally carries an additive sharing B of beta * [row < gamma*],
// added to every output of that row.

#include "mpdpf/dpf.hpp"

namespace mpdpf {

struct DcfKey {
    DpfKey base;
    FieldVector row_shares{Modulus::prime(2), 0}; ///< B_i, length R

    friend bool operator==(const DcfKey &, const DcfKey &) = default;
};

std::vector<DcfKey> dcf_gen(const PointDescription &point, const SchemeParams &params, RandomSource &rng);
FieldElement dcf_eval(const DcfKey &key, std::uint64_t x);
FieldVector dcf_eval_all(const DcfKey &key);
void check_key(const DcfKey &key);

} // namespace mpdpf
