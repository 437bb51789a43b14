#include "partsep/correlation.hpp"

#include <cmath>
#include <stdexcept>

#include "partsep/common.hpp"

namespace partsep {

CorrelationTensor::CorrelationTensor(int n, std::vector<double> values,
                                     std::optional<std::vector<double>> std_errors)
    : n_(n), values_(std::move(values)), std_errors_(std::move(std_errors)) {
    const std::size_t count = index_count(n);
    if (values_.size() != count)
        throw std::invalid_argument("correlation tensor needs exactly 2^n values");
    for (double v : values_) {
        if (!std::isfinite(v) || std::abs(v) > 1.0 + kCorrelationSlack)
            throw validation_error("correlation magnitude exceeds 1 (tolerance 1e-12)");
    }
    if (std_errors_) {
        if (std_errors_->size() != count)
            throw std::invalid_argument("standard errors need exactly 2^n values");
        for (double e : *std_errors_)
            if (!std::isfinite(e) || e < 0.0)
                throw validation_error("standard errors must be nonnegative");
    }
}

InequalityValue inequality_value(const CoefficientTensor& coeffs,
                                 const CorrelationTensor& corr) {
    if (coeffs.n() != corr.n())
        throw std::invalid_argument("coefficient/correlation dimension mismatch");
    InequalityValue out;
    // Kahan-compensated accumulation: the sum reaches 2^(n-1) sqrt(2) while
    // individual terms are O(1), and plain accumulation over 2^20 terms
    // drifts past the 1e-9 contract.
    double sum = 0.0;
    double carry = 0.0;
    for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
        const double term = coeffs.sign(code) * corr.value(code) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    out.value = sum;
    if (corr.has_std_errors()) {
        double var = 0.0;
        for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
            const double se = corr.std_error(code);
            var += se * se; // sigma_I^2 = 1
        }
        out.std_error = std::sqrt(var);
    }
    return out;
}

} // namespace partsep
