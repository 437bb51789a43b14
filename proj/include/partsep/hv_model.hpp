#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partsep/bipartition.hpp"
#include "partsep/correlation.hpp"
#include "partsep/multi_index.hpp"
#include "partsep/quantum.hpp"

namespace partsep {

/// Dense conditional tables cap: block outcome tables hold 2^p entries per
/// setting choice.
inline constexpr int kMaxBlockParticles = 10;
/// Dense counts datasets hold 2^n outcome bins per setting choice.
inline constexpr int kMaxDatasetParticles = 10;

/// One hidden-variable value: conditional outcome distributions for the two
/// clusters, q[setting_code][outcome_code] over subset_a and r over subset_b.
/// The joint tables are unconstrained inside a cluster.
struct HiddenVariable {
    double prob = 0.0;
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> r;
};

struct Subensemble {
    double weight = 0.0;
    Bipartition partition;
    std::vector<HiddenVariable> lambdas;
};

/// A partially separable hidden-variable model: a mixture of subensembles,
/// each factorizing across a fixed bipartition given the hidden variable.
struct HybridModel {
    int n = 0;
    std::vector<Subensemble> subensembles;
};

struct ValidationReport {
    bool ok = false;
    /// Names the first violated constraint when not ok.
    std::string diagnostic;
};

ValidationReport validate_model(const HybridModel& model);

/// Exact correlations: E(I) = sum over subensembles and hidden variables of
/// weight * prob * (block-a expectation) * (block-b expectation).
CorrelationTensor model_correlations(const HybridModel& model);

/// i.i.d. outcome counts (indexed by outcome code) for one setting choice.
/// Reproducible given the seed.
std::vector<std::uint64_t> sample_outcomes(const HybridModel& model,
                                           const MultiIndex& index,
                                           std::uint64_t shots, std::uint64_t seed);

/// Outcome key over {+,-}, particle 1 first ("+-+" means j = (+1,-1,+1)).
std::string outcome_key(std::uint32_t outcome_code, int n);
std::uint32_t outcome_code_from_key(const std::string& key, int n);

/// Number of -1 outcomes in the record.
int n_minus(std::uint32_t outcome_code);

/// Finite-count measurement record: outcome counts for every setting choice,
/// each summing to the declared per-setting shot count.
class CountsDataset {
public:
    CountsDataset(int n, std::uint64_t shots,
                  std::vector<std::vector<std::uint64_t>> counts);

    int n() const { return n_; }
    std::uint64_t shots() const { return shots_; }
    const std::vector<std::uint64_t>& counts(std::uint32_t setting_code) const {
        return counts_[setting_code];
    }

private:
    int n_;
    std::uint64_t shots_;
    std::vector<std::vector<std::uint64_t>> counts_;
};

/// Sample every setting choice of a hidden-variable model. Each setting uses
/// the sub-seed derive_seed(seed, setting_code), so per-setting results are
/// independent of evaluation order.
CountsDataset simulate_model(const HybridModel& model, std::uint64_t shots,
                             std::uint64_t seed);

/// Sample every setting choice of a pure state measured along in-plane
/// directions; the exact outcome distribution is the sampling law.
CountsDataset simulate_state(const StateVector& state, const AngleSettings& settings,
                             std::uint64_t shots, std::uint64_t seed);

/// E-hat(I) = sum_J (-1)^{n(J)} counts(J)/shots with standard error
/// sqrt((1 - E-hat^2)/shots).
CorrelationTensor estimate_correlations(const CountsDataset& data);

} // namespace partsep
