#include "partsep/hv_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "partsep/rng.hpp"

namespace partsep {

namespace {

std::uint32_t gather_bits(std::uint32_t full, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((full >> (positions[j] - 1)) & 1u) << j;
    return out;
}

std::uint32_t scatter_bits(std::uint32_t block, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((block >> j) & 1u) << (positions[j] - 1);
    return out;
}

// Parity sign of a block outcome: product of its +-1 outcomes.
int outcome_sign(std::uint32_t outcome_code) {
    return std::popcount(outcome_code) % 2 == 0 ? 1 : -1;
}

bool table_shape_ok(const std::vector<std::vector<double>>& table, std::size_t codes) {
    if (table.size() != codes) return false;
    for (const auto& row : table)
        if (row.size() != codes) return false;
    return true;
}

} // namespace

int n_minus(std::uint32_t outcome_code) { return std::popcount(outcome_code); }

std::string outcome_key(std::uint32_t outcome_code, int n) {
    std::string key(n, '+');
    for (int k = 0; k < n; ++k)
        if ((outcome_code >> k) & 1u) key[k] = '-';
    return key;
}

std::uint32_t outcome_code_from_key(const std::string& key, int n) {
    if (key.size() != static_cast<std::size_t>(n))
        throw validation_error("outcome key length must equal the cluster size");
    std::uint32_t code = 0;
    for (int k = 0; k < n; ++k) {
        if (key[k] == '-')
            code |= 1u << k;
        else if (key[k] != '+')
            throw validation_error("outcome keys are strings over {+,-}");
    }
    return code;
}

ValidationReport validate_model(const HybridModel& model) {
    if (model.n < 2 || model.n > kMaxParticles)
        return {false, "particle count must be in [2, 20]"};
    if (model.subensembles.empty()) return {false, "model has no subensembles"};
    double weight_sum = 0.0;
    for (std::size_t s = 0; s < model.subensembles.size(); ++s) {
        const auto& sub = model.subensembles[s];
        const std::string where = "subensemble " + std::to_string(s);
        if (sub.weight < 0.0 || sub.weight > 1.0 + kEqTol)
            return {false, where + ": weight outside [0, 1]"};
        weight_sum += sub.weight;
        if (sub.partition.n() != model.n)
            return {false, where + ": partition dimension mismatch"};
        const int p = sub.partition.p();
        const int q = model.n - p;
        if (p > kMaxBlockParticles || q > kMaxBlockParticles)
            return {false, where + ": cluster exceeds the dense-table cap of 10 particles"};
        if (sub.lambdas.empty()) return {false, where + ": no hidden-variable values"};
        double prob_sum = 0.0;
        for (std::size_t l = 0; l < sub.lambdas.size(); ++l) {
            const auto& lam = sub.lambdas[l];
            const std::string at = where + " lambda " + std::to_string(l);
            if (lam.prob < 0.0 || lam.prob > 1.0 + kEqTol)
                return {false, at + ": prob outside [0, 1]"};
            prob_sum += lam.prob;
            if (!table_shape_ok(lam.q, std::size_t{1} << p))
                return {false, at + ": q table must be dense 2^p x 2^p"};
            if (!table_shape_ok(lam.r, std::size_t{1} << q))
                return {false, at + ": r table must be dense 2^(n-p) x 2^(n-p)"};
            for (const auto* table : {&lam.q, &lam.r}) {
                const char* name = table == &lam.q ? "q" : "r";
                for (std::size_t row = 0; row < table->size(); ++row) {
                    double row_sum = 0.0;
                    for (double v : (*table)[row]) {
                        if (!(v >= 0.0) || v > 1.0 + kEqTol)
                            return {false, at + ": " + name + " probabilities must lie in [0, 1]"};
                        row_sum += v;
                    }
                    if (std::abs(row_sum - 1.0) > kEqTol)
                        return {false, at + ": " + name + " row " + std::to_string(row) +
                                           " does not sum to 1"};
                }
            }
        }
        if (std::abs(prob_sum - 1.0) > kEqTol)
            return {false, where + ": lambda probs do not sum to 1"};
    }
    if (std::abs(weight_sum - 1.0) > kEqTol)
        return {false, "weights do not sum to 1"};
    return {true, ""};
}

CorrelationTensor model_correlations(const HybridModel& model) {
    const auto check = validate_model(model);
    if (!check.ok) throw validation_error("invalid model: " + check.diagnostic);
    const std::size_t count = index_count(model.n);
    std::vector<double> values(count, 0.0);

    for (const auto& sub : model.subensembles) {
        const auto a_pos = sub.partition.subset_a();
        const auto b_pos = sub.partition.subset_b();
        const std::size_t acount = std::size_t{1} << a_pos.size();
        const std::size_t bcount = std::size_t{1} << b_pos.size();
        for (const auto& lam : sub.lambdas) {
            const double scale = sub.weight * lam.prob;
            if (scale == 0.0) continue;
            // Per-setting block expectations sum_a q(a|s) sgn(a).
            std::vector<double> ea(acount), eb(bcount);
            for (std::uint32_t s = 0; s < acount; ++s) {
                double sum = 0.0;
                for (std::uint32_t a = 0; a < acount; ++a)
                    sum += lam.q[s][a] * outcome_sign(a);
                ea[s] = sum;
            }
            for (std::uint32_t s = 0; s < bcount; ++s) {
                double sum = 0.0;
                for (std::uint32_t b = 0; b < bcount; ++b)
                    sum += lam.r[s][b] * outcome_sign(b);
                eb[s] = sum;
            }
            for (std::uint32_t code = 0; code < count; ++code)
                values[code] += scale * ea[gather_bits(code, a_pos)] * eb[gather_bits(code, b_pos)];
        }
    }
    for (double& v : values) v = std::clamp(v, -1.0, 1.0);
    return CorrelationTensor(model.n, std::move(values));
}

std::vector<std::uint64_t> sample_outcomes(const HybridModel& model,
                                           const MultiIndex& index,
                                           std::uint64_t shots, std::uint64_t seed) {
    const auto check = validate_model(model);
    if (!check.ok) throw validation_error("invalid model: " + check.diagnostic);
    if (model.n != index.n())
        throw std::invalid_argument("model/index dimension mismatch");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");

    struct Draw {
        std::vector<double> q_row;
        std::vector<double> r_row;
        std::vector<int> a_pos;
        std::vector<int> b_pos;
    };
    // Flatten (subensemble, lambda) into one mixture with per-branch rows for
    // this setting choice.
    std::vector<double> branch_weights;
    std::vector<Draw> branches;
    for (const auto& sub : model.subensembles) {
        const auto a_pos = sub.partition.subset_a();
        const auto b_pos = sub.partition.subset_b();
        const std::uint32_t sa = gather_bits(index.code(), a_pos);
        const std::uint32_t sb = gather_bits(index.code(), b_pos);
        for (const auto& lam : sub.lambdas) {
            branch_weights.push_back(sub.weight * lam.prob);
            branches.push_back(Draw{lam.q[sa], lam.r[sb], a_pos, b_pos});
        }
    }

    std::vector<std::uint64_t> counts(index_count(model.n), 0);
    Rng rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const std::size_t pick = rng.pick(branch_weights);
        const Draw& d = branches[pick];
        const std::uint32_t a = static_cast<std::uint32_t>(rng.pick(d.q_row));
        const std::uint32_t b = static_cast<std::uint32_t>(rng.pick(d.r_row));
        ++counts[scatter_bits(a, d.a_pos) | scatter_bits(b, d.b_pos)];
    }
    return counts;
}

CountsDataset::CountsDataset(int n, std::uint64_t shots,
                             std::vector<std::vector<std::uint64_t>> counts)
    : n_(n), shots_(shots), counts_(std::move(counts)) {
    if (n < 1 || n > kMaxDatasetParticles)
        throw std::invalid_argument("counts datasets support 1 <= n <= " +
                                    std::to_string(kMaxDatasetParticles));
    if (shots_ < 1) throw validation_error("declared shots must be >= 1");
    const std::size_t count = index_count(n);
    if (counts_.size() != count)
        throw validation_error("counts dataset must cover all 2^n settings");
    for (std::size_t s = 0; s < count; ++s) {
        if (counts_[s].size() != count)
            throw validation_error("outcome table has the wrong size at setting " +
                                   std::to_string(s));
        std::uint64_t sum = 0;
        for (std::uint64_t c : counts_[s]) sum += c;
        if (sum != shots_)
            throw validation_error("counts at setting " + std::to_string(s) +
                                   " sum to " + std::to_string(sum) +
                                   ", declared shots " + std::to_string(shots_));
    }
}

CountsDataset simulate_model(const HybridModel& model, std::uint64_t shots,
                             std::uint64_t seed) {
    const std::size_t count = index_count(model.n);
    if (model.n > kMaxDatasetParticles)
        throw std::invalid_argument("counts datasets support n <= 10");
    std::vector<std::vector<std::uint64_t>> counts(count);
    for (std::uint32_t code = 0; code < count; ++code)
        counts[code] = sample_outcomes(model, MultiIndex(model.n, code), shots,
                                       derive_seed(seed, code));
    return CountsDataset(model.n, shots, std::move(counts));
}

CountsDataset simulate_state(const StateVector& state, const AngleSettings& settings,
                             std::uint64_t shots, std::uint64_t seed) {
    if (state.n() > kMaxDatasetParticles)
        throw std::invalid_argument("counts datasets support n <= 10");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const std::size_t count = index_count(state.n());
    std::vector<std::vector<std::uint64_t>> counts(count);
    for (std::uint32_t code = 0; code < count; ++code) {
        const auto probs = outcome_distribution(state, settings, MultiIndex(state.n(), code));
        std::vector<std::uint64_t> bins(count, 0);
        Rng rng(derive_seed(seed, code));
        for (std::uint64_t shot = 0; shot < shots; ++shot) ++bins[rng.pick(probs)];
        counts[code] = std::move(bins);
    }
    return CountsDataset(state.n(), shots, std::move(counts));
}

CorrelationTensor estimate_correlations(const CountsDataset& data) {
    const std::size_t count = index_count(data.n());
    const double shots = static_cast<double>(data.shots());
    std::vector<double> values(count);
    std::vector<double> errors(count);
    for (std::uint32_t s = 0; s < count; ++s) {
        const auto& bins = data.counts(s);
        double sum = 0.0;
        for (std::uint32_t j = 0; j < count; ++j)
            sum += outcome_sign(j) * static_cast<double>(bins[j]);
        const double e = sum / shots;
        values[s] = e;
        errors[s] = std::sqrt(std::max(0.0, 1.0 - e * e) / shots);
    }
    return CorrelationTensor(data.n(), std::move(values), std::move(errors));
}

} // namespace partsep
