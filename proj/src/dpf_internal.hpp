#pragma once

#include "mpdpf/dpf.hpp"

namespace mpdpf::detail {

// Honest-majority key generation where row `target_row` unmasks `target`
// (length V) instead of e_delta * beta. gen() and dcf_gen() both use it.
std::vector<DpfKey> gen_with_target(const SchemeParams &params, std::uint64_t target_row, const FieldVector &target,
                                    RandomSource &rng);

} // namespace mpdpf::detail
