#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "partsep/bounds.hpp"
#include "partsep/hv_model.hpp"
#include "partsep/mu.hpp"
#include "partsep/quantum.hpp"

namespace partsep::reports {

using nlohmann::json;

/// {"n", "variant", "partition", "m_sigma", "mhat", "minimal",
///  "m_equals_mhat", "witness": {"xi", "eta", "zeta"}}
json bound_report(const CoefficientTensor& coeffs, const Bipartition& part,
                  const std::string& variant_label,
                  std::uint64_t strategy_cap = kDefaultStrategyCap);

/// Reports for every bipartition class plus the overall bound.
json bound_report_all(const CoefficientTensor& coeffs,
                      const std::string& variant_label,
                      std::uint64_t strategy_cap = kDefaultStrategyCap);

json mu_report(int n, int p);

json minimax_report(int n);

enum class AngleSource { optimal, file, optimize };

/// {"n", "variant", "ghz_sign", "value", "bound_partial", "bound_quantum",
///  "ratio_partial", "angles", "seed", ...}. The value is evaluated on the
/// statevector for n <= 12 and through the closed-form GHZ correlations above.
json violation_report(int n, SignVariant variant, int ghz_sign, AngleSource source,
                      const std::optional<AngleSettings>& file_angles,
                      int restarts, std::uint64_t seed);

json simulate_report(const HybridModel& model, std::uint64_t shots, std::uint64_t seed);

json simulate_ghz_report(int n, int ghz_sign, SignVariant variant,
                         const std::optional<AngleSettings>& file_angles,
                         std::uint64_t shots, std::uint64_t seed);

/// Evaluates both alternating inequalities against the estimated correlations
/// (they are a-priori independent for odd n). The z-score convention is
/// (|value| - 2^(n-1)) / propagated standard error; a violation is certified
/// at z > 5.
json certify_report(const CountsDataset& data);

} // namespace partsep::reports
