#include "partsep/reports.hpp"

#include <cmath>
#include <limits>

#include "partsep/io.hpp"

namespace partsep::reports {

namespace {

json sign_array(const std::vector<std::int8_t>& signs) {
    json out = json::array();
    for (std::int8_t s : signs) out.push_back(static_cast<int>(s));
    return out;
}

double quantum_bound(int n) { return std::ldexp(std::sqrt(2.0), n - 1); }

} // namespace

json bound_report(const CoefficientTensor& coeffs, const Bipartition& part,
                  const std::string& variant_label, std::uint64_t strategy_cap) {
    const HybridMax result = hybrid_max(coeffs, part, strategy_cap);
    const long long mhat = mhat_upper_bound(coeffs, part);
    json doc;
    doc["n"] = coeffs.n();
    doc["variant"] = variant_label;
    doc["partition"] = part.subset_a();
    doc["m_sigma"] = result.value;
    doc["mhat"] = mhat;
    doc["minimal"] = check_minimal(coeffs, part);
    doc["m_equals_mhat"] = result.value == mhat;
    json witness;
    witness["xi"] = sign_array(result.witness.xi);
    witness["eta"] = sign_array(result.witness.eta);
    if (result.witness.zeta) witness["zeta"] = sign_array(*result.witness.zeta);
    doc["witness"] = std::move(witness);
    return doc;
}

json bound_report_all(const CoefficientTensor& coeffs, const std::string& variant_label,
                      std::uint64_t strategy_cap) {
    json doc;
    doc["n"] = coeffs.n();
    doc["variant"] = variant_label;
    json reports = json::array();
    long long best = 0;
    for (const Bipartition& part : all_bipartitions(coeffs.n())) {
        json r = bound_report(coeffs, part, variant_label, strategy_cap);
        best = std::max(best, r["m_sigma"].get<long long>());
        reports.push_back(std::move(r));
    }
    doc["bound_partial"] = best;
    doc["reports"] = std::move(reports);
    return doc;
}

json mu_report(int n, int p) {
    const auto solutions = enumerate_mu_solutions(n, p);
    json doc;
    doc["n"] = n;
    doc["p"] = p;
    doc["count"] = solutions.size();
    json rows = json::array();
    for (const auto& sol : solutions) {
        json row;
        row["mu"] = sign_array(sol.mu);
        row["nu"] = sign_array(sol.nu_sequence());
        bool alternating = true;
        for (std::size_t k = 0; k + 1 < sol.mu.size(); ++k)
            if (sol.mu[k + 1] != -sol.mu[k]) alternating = false;
        row["alternating"] = alternating;
        rows.push_back(std::move(row));
    }
    doc["solutions"] = std::move(rows);
    return doc;
}

json minimax_report(int n) {
    const MinimaxResult result = full_minimax(n);
    json doc;
    doc["n"] = n;
    doc["m"] = result.m;
    doc["minimizer_count"] = result.minimizers.size();
    json rows = json::array();
    for (const auto& tensor : result.minimizers) rows.push_back(sign_array(tensor.signs()));
    doc["minimizers"] = std::move(rows);
    return doc;
}

json violation_report(int n, SignVariant variant, int ghz_sign, AngleSource source,
                      const std::optional<AngleSettings>& file_angles,
                      int restarts, std::uint64_t seed) {
    if (ghz_sign != 1 && ghz_sign != -1)
        throw std::invalid_argument("GHZ sign must be +1 or -1");
    json doc;
    doc["n"] = n;
    doc["variant"] = variant_name(variant);
    doc["ghz_sign"] = ghz_sign;
    doc["seed"] = seed;

    AngleSettings angles;
    double value = 0.0;
    bool statevector_path = n <= kMaxDenseOperatorParticles;
    const CoefficientTensor coeffs = CoefficientTensor::alternating(n, variant);
    switch (source) {
        case AngleSource::optimal:
            doc["angles_source"] = "optimal";
            angles = optimal_angles(n, variant);
            break;
        case AngleSource::file:
            doc["angles_source"] = "file";
            if (!file_angles) throw std::invalid_argument("angle settings required");
            if (file_angles->n != n)
                throw std::invalid_argument("angle settings dimension mismatch");
            angles = *file_angles;
            break;
        case AngleSource::optimize: {
            doc["angles_source"] = "optimize";
            doc["restarts"] = restarts;
            const ViolationSearch search = maximize_violation(n, variant, restarts, seed);
            angles = search.angles;
            doc["converged"] = search.converged;
            statevector_path = false; // searched on the closed-form objective
            break;
        }
    }

    if (statevector_path) {
        const StateVector state = ghz_state(n, ghz_sign);
        value = inequality_value(coeffs, correlation_tensor(state, angles)).value;
        doc["evaluation"] = "statevector";
    } else {
        value = inequality_value(coeffs, ghz_correlation_tensor(n, ghz_sign, angles)).value;
        doc["evaluation"] = "analytic";
    }

    doc["angles"] = io::angles_to_json(angles)["angles"];
    doc["value"] = value;
    doc["bound_partial"] = 1ll << (n - 1);
    doc["bound_quantum"] = quantum_bound(n);
    doc["ratio_partial"] = std::abs(value) / static_cast<double>(1ll << (n - 1));
    return doc;
}

namespace {

json simulate_report_from_counts(CountsDataset data, std::uint64_t seed) {
    const CorrelationTensor estimated = estimate_correlations(data);
    json doc;
    doc["n"] = data.n();
    doc["shots"] = data.shots();
    doc["seed"] = seed;
    doc["counts"] = io::counts_to_json(data);
    doc["estimated"] = io::correlation_to_json(estimated);
    json sums;
    for (SignVariant v : {SignVariant::plus, SignVariant::minus}) {
        const auto iv = inequality_value(CoefficientTensor::alternating(data.n(), v),
                                         estimated);
        json entry;
        entry["value"] = iv.value;
        entry["std_error"] = *iv.std_error;
        sums[variant_name(v)] = std::move(entry);
    }
    doc["inequality"] = std::move(sums);
    return doc;
}

} // namespace

json simulate_report(const HybridModel& model, std::uint64_t shots, std::uint64_t seed) {
    json doc = simulate_report_from_counts(simulate_model(model, shots, seed), seed);
    doc["source"] = "model";
    return doc;
}

json simulate_ghz_report(int n, int ghz_sign, SignVariant variant,
                         const std::optional<AngleSettings>& file_angles,
                         std::uint64_t shots, std::uint64_t seed) {
    AngleSettings angles;
    if (file_angles) {
        if (file_angles->n != n)
            throw std::invalid_argument("angle settings dimension mismatch");
        angles = *file_angles;
    } else {
        angles = optimal_angles(n, variant);
    }
    json doc = simulate_report_from_counts(
        simulate_state(ghz_state(n, ghz_sign), angles, shots, seed), seed);
    doc["source"] = "ghz";
    doc["ghz_sign"] = ghz_sign;
    doc["angles"] = io::angles_to_json(angles)["angles"];
    return doc;
}

json certify_report(const CountsDataset& data) {
    const CorrelationTensor estimated = estimate_correlations(data);
    const double bound = static_cast<double>(1ll << (data.n() - 1));
    json doc;
    doc["n"] = data.n();
    doc["shots"] = data.shots();
    doc["bound_partial"] = 1ll << (data.n() - 1);
    bool any_violation = false;
    bool have_z = false;
    double max_z = 0.0;
    json variants;
    for (SignVariant v : {SignVariant::plus, SignVariant::minus}) {
        const auto iv = inequality_value(CoefficientTensor::alternating(data.n(), v),
                                         estimated);
        const double se = *iv.std_error;
        json entry;
        entry["value"] = iv.value;
        entry["std_error"] = se;
        bool violated;
        if (se > 0.0) {
            const double z = (std::abs(iv.value) - bound) / se;
            entry["z_score"] = z;
            violated = z > 5.0;
            max_z = have_z ? std::max(max_z, z) : z;
            have_z = true;
        } else {
            // Error-free estimate: the comparison with the bound is exact.
            entry["z_score"] = nullptr;
            entry["exact"] = true;
            violated = std::abs(iv.value) > bound;
        }
        entry["violation"] = violated;
        any_violation = any_violation || violated;
        variants[variant_name(v)] = std::move(entry);
    }
    doc["variants"] = std::move(variants);
    if (have_z) doc["max_z"] = max_z;
    doc["violation"] = any_violation;
    doc["significance_threshold"] = 5.0;
    return doc;
}

} // namespace partsep::reports
