#include "partsep.h"

#include <cstring>
#include <new>
#include <string>

#include "partsep/io.hpp"
#include "partsep/reports.hpp"
#include "partsep/version.hpp"

using namespace partsep;

struct partsep_coeffs {
    CoefficientTensor tensor;
    std::string variant_label;
};

struct partsep_model {
    HybridModel model;
};

namespace {

thread_local std::string g_last_error;

partsep_status fail(partsep_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

/* Runs the body, converting exceptions to status codes. */
template <typename Fn>
partsep_status guarded(Fn&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const capacity_error& e) {
        return fail(PARTSEP_ERROR_CAPACITY, e.what());
    } catch (const parse_error& e) {
        return fail(PARTSEP_ERROR_PARSE, e.what());
    } catch (const validation_error& e) {
        return fail(PARTSEP_ERROR_VALIDATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PARTSEP_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PARTSEP_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PARTSEP_ERROR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

partsep_status emit_json(const nlohmann::json& doc, char** json_out) {
    if (!json_out) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null output pointer");
    *json_out = copy_string(doc.dump());
    return PARTSEP_OK;
}

SignVariant require_variant(const char* name) {
    if (!name) throw std::invalid_argument("variant must be \"plus\" or \"minus\"");
    const auto v = variant_from_name(name);
    if (!v) throw std::invalid_argument("variant must be \"plus\" or \"minus\"");
    return *v;
}

std::optional<AngleSettings> optional_angles(const char* angles_json) {
    if (!angles_json) return std::nullopt;
    return io::angles_from_json(io::parse_document(angles_json));
}

} // namespace

extern "C" {

const char* partsep_version(void) { return kVersion; }

const char* partsep_status_name(partsep_status status) {
    switch (status) {
        case PARTSEP_OK: return "ok";
        case PARTSEP_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case PARTSEP_ERROR_PARSE: return "parse error";
        case PARTSEP_ERROR_VALIDATION: return "validation error";
        case PARTSEP_ERROR_CAPACITY: return "capacity exceeded";
        case PARTSEP_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* partsep_last_error(void) { return g_last_error.c_str(); }

void partsep_buffer_free(char* buffer) { delete[] buffer; }

partsep_status partsep_coeffs_alternating(int32_t n, const char* variant,
                                          partsep_coeffs** out) {
    return guarded([&]() -> partsep_status {
        if (!out) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null output pointer");
        const SignVariant v = require_variant(variant);
        *out = new partsep_coeffs{CoefficientTensor::alternating(n, v), variant_name(v)};
        return PARTSEP_OK;
    });
}

partsep_status partsep_coeffs_from_json(const char* text, partsep_coeffs** out) {
    return guarded([&]() -> partsep_status {
        if (!out || !text)
            return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null argument");
        auto doc = io::parse_document(text);
        auto tensor = io::coefficients_from_json(doc);
        std::string label = "custom";
        if (doc.contains("variant") && doc["variant"].is_string())
            label = doc["variant"].get<std::string>();
        *out = new partsep_coeffs{std::move(tensor), std::move(label)};
        return PARTSEP_OK;
    });
}

partsep_status partsep_coeffs_to_json(const partsep_coeffs* coeffs, char** json_out) {
    return guarded([&]() -> partsep_status {
        if (!coeffs) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null handle");
        return emit_json(io::coefficients_to_json(coeffs->tensor, coeffs->variant_label),
                         json_out);
    });
}

partsep_status partsep_coeffs_to_csv(const partsep_coeffs* coeffs, char** csv_out) {
    return guarded([&]() -> partsep_status {
        if (!coeffs || !csv_out)
            return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null argument");
        *csv_out = copy_string(io::coefficients_to_csv(coeffs->tensor));
        return PARTSEP_OK;
    });
}

int32_t partsep_coeffs_n(const partsep_coeffs* coeffs) {
    return coeffs ? coeffs->tensor.n() : -1;
}

int32_t partsep_coeffs_sign(const partsep_coeffs* coeffs, uint64_t index) {
    if (!coeffs || index >= coeffs->tensor.size()) return 0;
    return coeffs->tensor.sign(static_cast<std::uint32_t>(index));
}

void partsep_coeffs_free(partsep_coeffs* coeffs) { delete coeffs; }

partsep_status partsep_bound_report(const partsep_coeffs* coeffs, const int32_t* subset,
                                    size_t subset_len, char** json_out) {
    return guarded([&]() -> partsep_status {
        if (!coeffs || !subset || subset_len == 0)
            return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null handle or empty subset");
        std::vector<int> indices(subset, subset + subset_len);
        const Bipartition part = Bipartition::from_indices(coeffs->tensor.n(), indices);
        return emit_json(
            reports::bound_report(coeffs->tensor, part, coeffs->variant_label), json_out);
    });
}

partsep_status partsep_bound_report_all(const partsep_coeffs* coeffs, char** json_out) {
    return guarded([&]() -> partsep_status {
        if (!coeffs) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null handle");
        return emit_json(reports::bound_report_all(coeffs->tensor, coeffs->variant_label),
                         json_out);
    });
}

partsep_status partsep_minimax_report(int32_t n, char** json_out) {
    return guarded(
        [&]() -> partsep_status { return emit_json(reports::minimax_report(n), json_out); });
}

partsep_status partsep_mu_report(int32_t n, int32_t p, char** json_out) {
    return guarded(
        [&]() -> partsep_status { return emit_json(reports::mu_report(n, p), json_out); });
}

partsep_status partsep_violation_report(int32_t n, const char* variant, int32_t ghz_sign,
                                        const char* angles_json, char** json_out) {
    return guarded([&]() -> partsep_status {
        const SignVariant v = require_variant(variant);
        const auto angles = optional_angles(angles_json);
        const auto source =
            angles ? reports::AngleSource::file : reports::AngleSource::optimal;
        return emit_json(reports::violation_report(n, v, ghz_sign, source, angles, 0, 0),
                         json_out);
    });
}

partsep_status partsep_violation_optimize_report(int32_t n, const char* variant,
                                                 int32_t ghz_sign, int32_t restarts,
                                                 uint64_t seed, char** json_out) {
    return guarded([&]() -> partsep_status {
        const SignVariant v = require_variant(variant);
        return emit_json(
            reports::violation_report(n, v, ghz_sign, reports::AngleSource::optimize,
                                      std::nullopt, restarts, seed),
            json_out);
    });
}

partsep_status partsep_model_from_json(const char* text, partsep_model** out) {
    return guarded([&]() -> partsep_status {
        if (!out || !text) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null argument");
        *out = new partsep_model{io::model_from_json(io::parse_document(text))};
        return PARTSEP_OK;
    });
}

void partsep_model_free(partsep_model* model) { delete model; }

partsep_status partsep_model_validate(const partsep_model* model, char** diagnostic_out) {
    return guarded([&]() -> partsep_status {
        if (!model) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null handle");
        const ValidationReport report = validate_model(model->model);
        if (report.ok) {
            if (diagnostic_out) *diagnostic_out = nullptr;
            return PARTSEP_OK;
        }
        if (diagnostic_out) *diagnostic_out = copy_string(report.diagnostic);
        return fail(PARTSEP_ERROR_VALIDATION, report.diagnostic);
    });
}

partsep_status partsep_simulate_model(const partsep_model* model, uint64_t shots,
                                      uint64_t seed, char** json_out) {
    return guarded([&]() -> partsep_status {
        if (!model) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null handle");
        return emit_json(reports::simulate_report(model->model, shots, seed), json_out);
    });
}

partsep_status partsep_simulate_ghz(int32_t n, int32_t ghz_sign, const char* variant,
                                    const char* angles_json, uint64_t shots,
                                    uint64_t seed, char** json_out) {
    return guarded([&]() -> partsep_status {
        const SignVariant v = require_variant(variant);
        return emit_json(reports::simulate_ghz_report(n, ghz_sign, v,
                                                      optional_angles(angles_json),
                                                      shots, seed),
                         json_out);
    });
}

partsep_status partsep_certify(const char* counts_json, char** json_out) {
    return guarded([&]() -> partsep_status {
        if (!counts_json) return fail(PARTSEP_ERROR_INVALID_ARGUMENT, "null argument");
        const CountsDataset data =
            io::counts_from_json(io::parse_document(counts_json));
        return emit_json(reports::certify_report(data), json_out);
    });
}

} // extern "C"
