#pragma once

#include <optional>
#include <vector>

#include "partsep/coefficients.hpp"

namespace partsep {

/// Dense table of correlations E(I) in [-1, 1] over all 2^n setting choices,
/// with optional per-entry standard errors.
class CorrelationTensor {
public:
    CorrelationTensor(int n, std::vector<double> values,
                      std::optional<std::vector<double>> std_errors = std::nullopt);

    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    double value(std::uint32_t code) const { return values_[code]; }
    const std::vector<double>& values() const { return values_; }
    bool has_std_errors() const { return std_errors_.has_value(); }
    double std_error(std::uint32_t code) const { return (*std_errors_)[code]; }
    const std::optional<std::vector<double>>& std_errors() const { return std_errors_; }

private:
    int n_;
    std::vector<double> values_;
    std::optional<std::vector<double>> std_errors_;
};

struct InequalityValue {
    double value = 0.0;
    /// Propagated error sqrt(sum_I sigma_I^2 se(I)^2); present when the
    /// correlation tensor carries standard errors.
    std::optional<double> std_error;
};

/// Left-hand side sum_I sigma_I E(I) of the inequality.
InequalityValue inequality_value(const CoefficientTensor& coeffs,
                                 const CorrelationTensor& corr);

} // namespace partsep
