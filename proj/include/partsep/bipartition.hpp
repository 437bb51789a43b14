#pragma once

#include <cstdint>
#include <vector>

#include "partsep/common.hpp"

namespace partsep {

/// A split of {1..n} into two nonempty clusters. Canonical form stores the
/// side containing particle 1 as subset_a; constructing from the complement
/// yields the same object.
class Bipartition {
public:
    Bipartition(int n, std::uint32_t subset_mask);
    static Bipartition from_indices(int n, const std::vector<int>& subset);

    int n() const { return n_; }
    /// Size of subset_a.
    int p() const;
    std::uint32_t mask_a() const { return mask_a_; }
    std::uint32_t mask_b() const;
    /// 1-based particle indices, ascending.
    std::vector<int> subset_a() const;
    std::vector<int> subset_b() const;

    bool operator==(const Bipartition&) const = default;

private:
    int n_;
    std::uint32_t mask_a_;
};

/// One representative per unordered bipartition {A, complement}: every proper
/// nonempty subset containing particle 1. 2^(n-1) - 1 entries.
std::vector<Bipartition> all_bipartitions(int n);

} // namespace partsep
