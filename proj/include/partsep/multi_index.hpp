#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "partsep/common.hpp"

namespace partsep {

/// Hard ceiling on the particle count for dense tensors (2^n entries).
inline constexpr int kMaxParticles = 20;

/// Number of joint setting choices for n particles.
std::size_t index_count(int n);

/// A joint measurement-setting choice I = (i_1, ..., i_n), i_k in {1, 2}.
///
/// Dense layout convention used throughout: particle k maps to bit (k-1) of
/// the encoded index, with setting label 1 -> bit 0 and label 2 -> bit 1.
/// This makes t(I) a popcount and the global label swap a bitwise complement.
class MultiIndex {
public:
    MultiIndex(int n, std::uint32_t code);

    /// Build from explicit labels (each 1 or 2), particle 1 first.
    static MultiIndex from_settings(const std::vector<int>& settings);

    int n() const { return n_; }
    std::uint32_t code() const { return code_; }

    /// Setting label (1 or 2) of the given 1-based particle.
    int setting(int particle) const;
    std::vector<int> settings() const;

    /// Number of particles measured with setting 2.
    int t() const { return std::popcount(code_); }

    /// The index with every label 1 <-> 2 exchanged.
    MultiIndex flipped() const;

    bool operator==(const MultiIndex&) const = default;

private:
    int n_;
    std::uint32_t code_;
};

} // namespace partsep
