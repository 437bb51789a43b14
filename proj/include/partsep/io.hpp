#pragma once

#include <string>

#include <json.hpp>

#include "partsep/coefficients.hpp"
#include "partsep/correlation.hpp"
#include "partsep/hv_model.hpp"
#include "partsep/quantum.hpp"

namespace partsep::io {

using nlohmann::json;

/// Parse a JSON document; throws parse_error on malformed text.
json parse_document(const std::string& text);

// Coefficient tensor documents:
// {"n", "variant": "plus"|"minus"|"custom", "bound", "entries":
//  [{"settings": [1|2 x n], "t", "sign"}]} in ascending encoded-index order.
json coefficients_to_json(const CoefficientTensor& coeffs,
                          const std::string& variant_label);
CoefficientTensor coefficients_from_json(const json& doc);

// Correlation tensor documents:
// {"n", "entries": [{"settings": [...], "value", "std_error"?}]},
// all 2^n settings, ascending encoded-index order on output.
json correlation_to_json(const CorrelationTensor& corr);
CorrelationTensor correlation_from_json(const json& doc);

// Angle documents: {"n", "angles": [[a1, a2] x n]}, radians.
json angles_to_json(const AngleSettings& settings);
AngleSettings angles_from_json(const json& doc);

// Hidden-variable model documents:
// {"n", "subensembles": [{"weight", "partition": [indices],
//   "lambdas": [{"prob", "q": {setting-key: {outcome-key: prob}}, "r": ...}]}]}
// Setting keys are strings over {1,2}, outcome keys strings over {+,-}; both
// are ordered by ascending particle index within the cluster.
json model_to_json(const HybridModel& model);
HybridModel model_from_json(const json& doc);

// Counts documents: {"n", "shots", "data": [{"settings": [...],
//   "counts": {outcome-key: count}}]}; zero counts may be omitted.
json counts_to_json(const CountsDataset& data);
CountsDataset counts_from_json(const json& doc);

std::string coefficients_to_csv(const CoefficientTensor& coeffs);
std::string correlation_to_csv(const CorrelationTensor& corr);

} // namespace partsep::io
