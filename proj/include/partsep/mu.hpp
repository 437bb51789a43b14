#pragma once

#include <cstdint>
#include <vector>

#include "partsep/common.hpp"

namespace partsep {

/// A sign sequence mu_0..mu_{n-1} of consecutive products mu_k = nu_k nu_{k+1}.
struct MuSequence {
    std::vector<std::int8_t> mu;

    /// The sign sequence nu_0..nu_n with nu_0 = 1 and nu_{k+1} = mu_k nu_k.
    std::vector<std::int8_t> nu_sequence() const;
};

/// All mu in {+-1}^n satisfying sum_b C(p,b) mu_{a+b} = 0 for
/// a = 0..n-p-1. Always contains the two alternating sequences
/// mu_k = +-(-1)^k. Enumerates 2^n candidates; n <= 20.
std::vector<MuSequence> enumerate_mu_solutions(int n, int p);

} // namespace partsep
