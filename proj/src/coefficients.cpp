#include "partsep/coefficients.hpp"

#include <algorithm>
#include <stdexcept>

#include "partsep/multi_index.hpp"

namespace partsep {

std::size_t index_count(int n) {
    if (n < 1 || n > kMaxParticles)
        throw std::invalid_argument("particle count must be in [1, " +
                                    std::to_string(kMaxParticles) + "], got " +
                                    std::to_string(n));
    return std::size_t{1} << n;
}

MultiIndex::MultiIndex(int n, std::uint32_t code) : n_(n), code_(code) {
    const std::size_t count = index_count(n);
    if (code >= count)
        throw std::invalid_argument("setting index out of range for n = " +
                                    std::to_string(n));
}

MultiIndex MultiIndex::from_settings(const std::vector<int>& settings) {
    if (settings.empty()) throw std::invalid_argument("empty setting list");
    std::uint32_t code = 0;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        if (settings[k] != 1 && settings[k] != 2)
            throw std::invalid_argument("setting labels must be 1 or 2");
        if (settings[k] == 2) code |= 1u << k;
    }
    return MultiIndex(static_cast<int>(settings.size()), code);
}

int MultiIndex::setting(int particle) const {
    if (particle < 1 || particle > n_)
        throw std::invalid_argument("particle index out of range");
    return ((code_ >> (particle - 1)) & 1u) ? 2 : 1;
}

std::vector<int> MultiIndex::settings() const {
    std::vector<int> out(n_);
    for (int k = 1; k <= n_; ++k) out[k - 1] = setting(k);
    return out;
}

MultiIndex MultiIndex::flipped() const {
    const std::uint32_t mask = static_cast<std::uint32_t>((1ull << n_) - 1);
    return MultiIndex(n_, ~code_ & mask);
}

const char* variant_name(SignVariant v) {
    return v == SignVariant::plus ? "plus" : "minus";
}

std::optional<SignVariant> variant_from_name(std::string_view name) {
    if (name == "plus") return SignVariant::plus;
    if (name == "minus") return SignVariant::minus;
    return std::nullopt;
}

int nu(SignVariant v, int k) {
    if (k < 0) throw std::invalid_argument("nu requires k >= 0");
    // (-1)^(k(k+1)/2) and (-1)^(k(k-1)/2), reduced to the period-4 cycles.
    static constexpr int plus_cycle[4] = {1, -1, -1, 1};
    static constexpr int minus_cycle[4] = {1, 1, -1, -1};
    return v == SignVariant::plus ? plus_cycle[k & 3] : minus_cycle[k & 3];
}

CoefficientTensor::CoefficientTensor(int n, std::vector<std::int8_t> signs)
    : n_(n), signs_(std::move(signs)) {
    const std::size_t count = index_count(n);
    if (signs_.size() != count)
        throw std::invalid_argument("coefficient tensor needs exactly 2^n signs");
    for (std::int8_t s : signs_)
        if (s != 1 && s != -1)
            throw std::invalid_argument("coefficient tensor entries must be +1 or -1");
}

CoefficientTensor CoefficientTensor::alternating(int n, SignVariant v) {
    const std::size_t count = index_count(n);
    std::vector<std::int8_t> signs(count);
    for (std::size_t code = 0; code < count; ++code)
        signs[code] = static_cast<std::int8_t>(nu(v, std::popcount(code)));
    return CoefficientTensor(n, std::move(signs));
}

CoefficientTensor CoefficientTensor::swapped_labels() const {
    const std::uint32_t mask = static_cast<std::uint32_t>(signs_.size() - 1);
    std::vector<std::int8_t> out(signs_.size());
    for (std::uint32_t code = 0; code < signs_.size(); ++code)
        out[code] = signs_[~code & mask];
    return CoefficientTensor(n_, std::move(out));
}

CoefficientTensor CoefficientTensor::permuted(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("permutation length must equal n");
    std::vector<bool> seen(n_, false);
    for (int image : perm) {
        if (image < 1 || image > n_ || seen[image - 1])
            throw std::invalid_argument("not a permutation of {1..n}");
        seen[image - 1] = true;
    }
    std::vector<std::int8_t> out(signs_.size());
    for (std::uint32_t code = 0; code < signs_.size(); ++code) {
        std::uint32_t source = 0;
        for (int k = 0; k < n_; ++k)
            source |= ((code >> (perm[k] - 1)) & 1u) << k;
        // sigma'_I = sigma_{pi(I)} with pi(I)_k = I_{perm[k-1]}
        out[code] = signs_[source];
    }
    return CoefficientTensor(n_, std::move(out));
}

} // namespace partsep
