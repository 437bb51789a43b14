#pragma once

#include <stdexcept>
#include <string>

namespace partsep {

/// Absolute tolerance for real-valued equality checks. All quantities in this
/// library are O(2^n) sums of O(1) double-precision terms at desk scale.
inline constexpr double kEqTol = 1e-12;

/// Slack accepted on |E(I)| <= 1 to absorb floating-point noise from
/// statevector evaluation.
inline constexpr double kCorrelationSlack = 1e-12;

/// An enumeration or table would exceed a configured capacity cap.
/// The message names the required size.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A document or model failed an invariant check.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical self-check failed (e.g. imaginary residue above threshold).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace partsep
