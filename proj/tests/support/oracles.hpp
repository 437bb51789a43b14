// Independent brute-force reference implementations used to cross-check the
// library. These deliberately share no code with the paths they verify.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "partsep/bipartition.hpp"
#include "partsep/coefficients.hpp"
#include "partsep/quantum.hpp"

namespace oracles {

// Block setting code of a full index restricted to the given 1-based particles.
inline std::uint32_t restrict_code(std::uint32_t full, const std::vector<int>& particles) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < particles.size(); ++j)
        out |= ((full >> (particles[j] - 1)) & 1u) << j;
    return out;
}

// Exhaustive max over BOTH clusters' response tables (no greedy step).
// Strategy spaces 2^(2^p) x 2^(2^(n-p)); feasible for n <= 4.
inline long long hybrid_max_exhaustive(const partsep::CoefficientTensor& coeffs,
                                       const partsep::Bipartition& part) {
    const auto a_pos = part.subset_a();
    const auto b_pos = part.subset_b();
    const std::size_t acount = std::size_t{1} << a_pos.size();
    const std::size_t bcount = std::size_t{1} << b_pos.size();
    long long best = 0;
    for (std::uint64_t xi_mask = 0; xi_mask < (1ull << acount); ++xi_mask) {
        for (std::uint64_t eta_mask = 0; eta_mask < (1ull << bcount); ++eta_mask) {
            long long total = 0;
            for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
                const int xi = (xi_mask >> restrict_code(code, a_pos)) & 1u ? -1 : 1;
                const int eta = (eta_mask >> restrict_code(code, b_pos)) & 1u ? -1 : 1;
                total += coeffs.sign(code) * xi * eta;
            }
            if (total > best) best = total;
        }
    }
    return best;
}

// Literal enumeration over all zeta tables of
// max sum_{I-hat} |1 + sigma_{I-hat,1} sigma_{I-hat,2} zeta(b')|.
// Feasible when subset_b minus its split particle is small.
inline long long mhat_exhaustive(const partsep::CoefficientTensor& coeffs,
                                 const partsep::Bipartition& part) {
    const auto a_pos = part.subset_a();
    auto b_pos = part.subset_b();
    const int split = b_pos.back();
    b_pos.pop_back();
    const std::uint32_t split_bit = 1u << (split - 1);
    const std::size_t acount = std::size_t{1} << a_pos.size();
    const std::size_t groups = std::size_t{1} << b_pos.size();
    long long best = 0;
    for (std::uint64_t zeta_mask = 0; zeta_mask < (1ull << groups); ++zeta_mask) {
        long long total = 0;
        for (std::uint32_t bp = 0; bp < groups; ++bp) {
            const int zeta = (zeta_mask >> bp) & 1u ? -1 : 1;
            std::uint32_t base = 0;
            for (std::size_t j = 0; j < b_pos.size(); ++j)
                base |= ((bp >> j) & 1u) << (b_pos[j] - 1);
            for (std::uint32_t a = 0; a < acount; ++a) {
                std::uint32_t low = base;
                for (std::size_t j = 0; j < a_pos.size(); ++j)
                    low |= ((a >> j) & 1u) << (a_pos[j] - 1);
                const int prod = coeffs.sign(low) * coeffs.sign(low | split_bit);
                total += std::abs(1 + prod * zeta);
            }
        }
        if (total > best) best = total;
    }
    return best;
}

// Dense tensor-product expectation <psi| (x)_k A^(k)_{i_k} |psi> built from
// explicit Kronecker products.
inline double correlation_dense(const partsep::StateVector& state,
                                const partsep::AngleSettings& settings,
                                const partsep::MultiIndex& index) {
    using partsep::Complex;
    const int n = state.n();
    partsep::OperatorMatrix full = partsep::spin_observable(
        settings.angle(1, index.setting(1)));
    for (int k = 2; k <= n; ++k)
        full = partsep::kron2(partsep::spin_observable(settings.angle(k, index.setting(k))),
                              full);
    const Complex value = full.expectation(state);
    return value.real();
}

} // namespace oracles
