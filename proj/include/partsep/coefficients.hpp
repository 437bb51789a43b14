#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "partsep/multi_index.hpp"

namespace partsep {

/// Selects one of the two alternating sign sequences.
enum class SignVariant { plus, minus };

const char* variant_name(SignVariant v);
std::optional<SignVariant> variant_from_name(std::string_view name);

/// The alternating sign sequence (-1)^(k(k+-1)/2), period four with cycles
/// (1,-1,-1,1) for the plus variant and (1,1,-1,-1) for the minus variant.
int nu(SignVariant v, int k);

/// Dense tensor of signs sigma_I over all 2^n setting choices: the weights on
/// the left-hand side of a Bell-type inequality sum sigma_I E(I).
class CoefficientTensor {
public:
    CoefficientTensor(int n, std::vector<std::int8_t> signs);

    /// The alternating tensor sigma_I = nu(v, t(I)). Permutation symmetric.
    static CoefficientTensor alternating(int n, SignVariant v);

    int n() const { return n_; }
    std::size_t size() const { return signs_.size(); }
    int sign(std::uint32_t code) const { return signs_[code]; }
    const std::vector<std::int8_t>& signs() const { return signs_; }

    /// Tensor with every setting label 1 <-> 2 exchanged: sigma'_I = sigma_{flip(I)}.
    /// For even n this maps one alternating variant to (-1)^(n/2) times the
    /// other; for odd n it maps each variant to a global sign times itself.
    CoefficientTensor swapped_labels() const;

    /// Tensor with particles relabeled: sigma'_I = sigma_{pi(I)} where
    /// pi(I)_k = I_{perm[k-1]}. perm must be a bijection of {1..n}.
    CoefficientTensor permuted(const std::vector<int>& perm) const;

    bool operator==(const CoefficientTensor&) const = default;

private:
    int n_;
    std::vector<std::int8_t> signs_;
};

} // namespace partsep
