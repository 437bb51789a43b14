#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "partsep/bipartition.hpp"
#include "partsep/coefficients.hpp"

namespace partsep {

/// Deterministic cluster response strategies: xi assigns a sign to every
/// setting choice of subset_a, eta to every setting choice of subset_b.
/// zeta, when present, is the reduced sign table zeta(b') = eta(b',1)*eta(b',2)
/// over the settings of subset_b with its highest-numbered particle removed.
struct ResponseAssignment {
    std::vector<std::int8_t> xi;
    std::vector<std::int8_t> eta;
    std::optional<std::vector<std::int8_t>> zeta;
};

/// zeta table derived from an eta table (split particle = highest bit).
std::vector<std::int8_t> zeta_from_eta(const std::vector<std::int8_t>& eta);

/// Default cap on the enumerated strategy space 2^(2^min(p, n-p)).
inline constexpr std::uint64_t kDefaultStrategyCap = 1ull << 16;

/// sum_I sigma_I xi(I_A) eta(I_B); an integer with |result| <= 2^n.
long long bilinear_value(const CoefficientTensor& coeffs, const Bipartition& part,
                         const ResponseAssignment& resp);

struct HybridMax {
    long long value = 0;
    ResponseAssignment witness;
};

/// Exact maximum of the bilinear form over all deterministic responses for a
/// fixed split: the smaller cluster's assignments are enumerated and the
/// other cluster is chosen as the sign of each partial sum (exact because the
/// objective is linear in each single entry; zero partial sums resolve to +1).
/// Witnesses are reproducible: lowest enumerated assignment wins ties.
HybridMax hybrid_max(const CoefficientTensor& coeffs, const Bipartition& part,
                     std::uint64_t strategy_cap = kDefaultStrategyCap);

/// The upper bound max_zeta sum_{I-hat} |1 + sigma_{I-hat,1} sigma_{I-hat,2} zeta|
/// on hybrid_max, where the split runs over the two settings of the
/// highest-numbered particle of subset_b. Always >= hybrid_max.
long long mhat_upper_bound(const CoefficientTensor& coeffs, const Bipartition& part);

/// True iff for each fixed setting choice of subset_b minus its split
/// particle, exactly half of the products sigma_{I-hat,1} sigma_{I-hat,2}
/// over subset_a settings are +1. Equivalent to mhat_upper_bound == 2^(n-1).
bool check_minimal(const CoefficientTensor& coeffs, const Bipartition& part);

/// True iff every particle relabeling of the tensor is minimal. Checks the
/// p = n-1 block with all n! permutations; for n <= 5 every block size is
/// checked as a cross-check. Requires n <= 8.
bool check_admissible(const CoefficientTensor& coeffs);

/// max over all bipartitions of hybrid_max: the exact bound satisfied by
/// every factorizable (partially separable) model of the correlations.
long long partial_separability_bound(const CoefficientTensor& coeffs,
                                     std::uint64_t strategy_cap = kDefaultStrategyCap);

struct MinimaxResult {
    long long m = 0;
    /// Every minimizing tensor, normalized to sigma_{(1,...,1)} = +1.
    std::vector<CoefficientTensor> minimizers;
};

/// Exact min over all sign tensors (up to global sign) of the worst-case
/// hybrid_max over all bipartitions. Searches 2^(2^n - 1) tensors; n <= 4.
MinimaxResult full_minimax(int n);

} // namespace partsep
