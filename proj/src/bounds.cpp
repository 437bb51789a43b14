#include "partsep/bounds.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace partsep {

Bipartition::Bipartition(int n, std::uint32_t subset_mask) : n_(n) {
    if (n < 2 || n > kMaxParticles)
        throw std::invalid_argument("bipartition requires 2 <= n <= " +
                                    std::to_string(kMaxParticles));
    const std::uint32_t full = static_cast<std::uint32_t>((1ull << n) - 1);
    if (subset_mask == 0 || (subset_mask & ~full) != 0 || subset_mask == full)
        throw std::invalid_argument("bipartition subset must be proper and nonempty");
    // Store the side containing particle 1.
    mask_a_ = (subset_mask & 1u) ? subset_mask : (~subset_mask & full);
}

Bipartition Bipartition::from_indices(int n, const std::vector<int>& subset) {
    std::uint32_t mask = 0;
    for (int k : subset) {
        if (k < 1 || k > n)
            throw std::invalid_argument("bipartition particle index out of range");
        const std::uint32_t bit = 1u << (k - 1);
        if (mask & bit) throw std::invalid_argument("duplicate particle in bipartition");
        mask |= bit;
    }
    return Bipartition(n, mask);
}

int Bipartition::p() const { return std::popcount(mask_a_); }

std::uint32_t Bipartition::mask_b() const {
    return ~mask_a_ & static_cast<std::uint32_t>((1ull << n_) - 1);
}

namespace {

std::vector<int> mask_to_indices(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int k = 1; k <= n; ++k)
        if (mask & (1u << (k - 1))) out.push_back(k);
    return out;
}

} // namespace

std::vector<int> Bipartition::subset_a() const { return mask_to_indices(mask_a_, n_); }

std::vector<int> Bipartition::subset_b() const { return mask_to_indices(mask_b(), n_); }

namespace {

std::uint32_t scatter_block(std::uint32_t block_code, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((block_code >> j) & 1u) << (positions[j] - 1);
    return out;
}

std::uint32_t gather_block(std::uint32_t full_code, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((full_code >> (positions[j] - 1)) & 1u) << j;
    return out;
}

void require_same_n(const CoefficientTensor& coeffs, const Bipartition& part) {
    if (coeffs.n() != part.n())
        throw std::invalid_argument("coefficient tensor / bipartition dimension mismatch");
}

// Lookup of sigma by (greedy-block code, enumerated-block code), contiguous in
// the enumerated code for the inner loop.
std::vector<std::int8_t> block_sign_table(const CoefficientTensor& coeffs,
                                          const std::vector<int>& enum_pos,
                                          const std::vector<int>& greedy_pos) {
    const std::size_t ecount = std::size_t{1} << enum_pos.size();
    const std::size_t gcount = std::size_t{1} << greedy_pos.size();
    std::vector<std::int8_t> table(ecount * gcount);
    for (std::uint32_t g = 0; g < gcount; ++g) {
        const std::uint32_t gbits = scatter_block(g, greedy_pos);
        for (std::uint32_t e = 0; e < ecount; ++e)
            table[g * ecount + e] =
                static_cast<std::int8_t>(coeffs.sign(gbits | scatter_block(e, enum_pos)));
    }
    return table;
}

std::uint64_t checked_strategy_count(std::size_t enum_block_size, std::uint64_t cap) {
    if (enum_block_size >= 6 || (std::uint64_t{1} << (std::uint64_t{1} << enum_block_size)) > cap)
        throw capacity_error(
            "hybrid_max: enumerating 2^(2^" + std::to_string(enum_block_size) +
            ") = 2^" + std::to_string(std::uint64_t{1} << enum_block_size) +
            " response assignments exceeds the cap of " + std::to_string(cap));
    return std::uint64_t{1} << (std::uint64_t{1} << enum_block_size);
}

long long best_value_for_table(const std::vector<std::int8_t>& table,
                               std::size_t ecount, std::size_t gcount,
                               std::uint64_t strategies, std::uint64_t* best_mask_out) {
    long long best = -1;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < strategies; ++mask) {
        long long total = 0;
        const std::int8_t* row = table.data();
        for (std::size_t g = 0; g < gcount; ++g, row += ecount) {
            long long partial = 0;
            for (std::size_t e = 0; e < ecount; ++e)
                partial += (mask >> e) & 1u ? -row[e] : row[e];
            total += partial < 0 ? -partial : partial;
        }
        if (total > best) {
            best = total;
            best_mask = mask;
        }
    }
    if (best_mask_out) *best_mask_out = best_mask;
    return best;
}

} // namespace

std::vector<Bipartition> all_bipartitions(int n) {
    std::vector<Bipartition> out;
    const std::uint32_t full = static_cast<std::uint32_t>((1ull << n) - 1);
    for (std::uint32_t mask = 1; mask < full; mask += 2)
        out.emplace_back(n, mask); // odd masks contain particle 1
    return out;
}

std::vector<std::int8_t> zeta_from_eta(const std::vector<std::int8_t>& eta) {
    if (eta.size() < 2 || (eta.size() & (eta.size() - 1)) != 0)
        throw std::invalid_argument("eta table size must be a power of two >= 2");
    const std::size_t half = eta.size() / 2;
    std::vector<std::int8_t> zeta(half);
    for (std::size_t b = 0; b < half; ++b)
        zeta[b] = static_cast<std::int8_t>(eta[b] * eta[b + half]);
    return zeta;
}

long long bilinear_value(const CoefficientTensor& coeffs, const Bipartition& part,
                         const ResponseAssignment& resp) {
    require_same_n(coeffs, part);
    const auto a_pos = part.subset_a();
    const auto b_pos = part.subset_b();
    if (resp.xi.size() != (std::size_t{1} << a_pos.size()) ||
        resp.eta.size() != (std::size_t{1} << b_pos.size()))
        throw std::invalid_argument("response assignment incomplete for this bipartition");
    for (std::int8_t s : resp.xi)
        if (s != 1 && s != -1) throw std::invalid_argument("xi entries must be +-1");
    for (std::int8_t s : resp.eta)
        if (s != 1 && s != -1) throw std::invalid_argument("eta entries must be +-1");
    long long total = 0;
    for (std::uint32_t code = 0; code < coeffs.size(); ++code)
        total += static_cast<long long>(coeffs.sign(code)) *
                 resp.xi[gather_block(code, a_pos)] * resp.eta[gather_block(code, b_pos)];
    return total;
}

HybridMax hybrid_max(const CoefficientTensor& coeffs, const Bipartition& part,
                     std::uint64_t strategy_cap) {
    require_same_n(coeffs, part);
    const auto a_pos = part.subset_a();
    const auto b_pos = part.subset_b();
    const bool enumerate_a = a_pos.size() <= b_pos.size();
    const auto& enum_pos = enumerate_a ? a_pos : b_pos;
    const auto& greedy_pos = enumerate_a ? b_pos : a_pos;
    const std::uint64_t strategies = checked_strategy_count(enum_pos.size(), strategy_cap);
    const std::size_t ecount = std::size_t{1} << enum_pos.size();
    const std::size_t gcount = std::size_t{1} << greedy_pos.size();
    const auto table = block_sign_table(coeffs, enum_pos, greedy_pos);

    std::uint64_t best_mask = 0;
    const long long best = best_value_for_table(table, ecount, gcount, strategies, &best_mask);

    std::vector<std::int8_t> enum_signs(ecount);
    for (std::size_t e = 0; e < ecount; ++e)
        enum_signs[e] = (best_mask >> e) & 1u ? -1 : 1;
    std::vector<std::int8_t> greedy_signs(gcount);
    for (std::size_t g = 0; g < gcount; ++g) {
        long long partial = 0;
        for (std::size_t e = 0; e < ecount; ++e)
            partial += table[g * ecount + e] * enum_signs[e];
        greedy_signs[g] = partial < 0 ? -1 : 1; // zero partial sums resolve to +1
    }

    HybridMax out;
    out.value = best;
    out.witness.xi = enumerate_a ? std::move(enum_signs) : std::move(greedy_signs);
    out.witness.eta = enumerate_a ? std::move(greedy_signs) : std::move(enum_signs);
    out.witness.zeta = zeta_from_eta(out.witness.eta);
    return out;
}

long long mhat_upper_bound(const CoefficientTensor& coeffs, const Bipartition& part) {
    require_same_n(coeffs, part);
    const auto a_pos = part.subset_a();
    auto b_pos = part.subset_b();
    // The split particle generating the zeta reduction is the highest-numbered
    // particle of subset_b.
    const int split = b_pos.back();
    b_pos.pop_back();
    const std::uint32_t split_bit = 1u << (split - 1);
    const std::size_t acount = std::size_t{1} << a_pos.size();
    const std::size_t groups = std::size_t{1} << b_pos.size();
    long long total = 0;
    for (std::uint32_t bp = 0; bp < groups; ++bp) {
        const std::uint32_t base = scatter_block(bp, b_pos);
        long long c_plus = 0;
        for (std::uint32_t a = 0; a < acount; ++a) {
            const std::uint32_t low = base | scatter_block(a, a_pos);
            if (coeffs.sign(low) * coeffs.sign(low | split_bit) > 0) ++c_plus;
        }
        total += 2 * std::max<long long>(c_plus, static_cast<long long>(acount) - c_plus);
    }
    return total;
}

bool check_minimal(const CoefficientTensor& coeffs, const Bipartition& part) {
    require_same_n(coeffs, part);
    const auto a_pos = part.subset_a();
    auto b_pos = part.subset_b();
    const int split = b_pos.back();
    b_pos.pop_back();
    const std::uint32_t split_bit = 1u << (split - 1);
    const std::size_t acount = std::size_t{1} << a_pos.size();
    const std::size_t groups = std::size_t{1} << b_pos.size();
    const long long half = static_cast<long long>(acount) / 2;
    for (std::uint32_t bp = 0; bp < groups; ++bp) {
        const std::uint32_t base = scatter_block(bp, b_pos);
        long long c_plus = 0;
        for (std::uint32_t a = 0; a < acount; ++a) {
            const std::uint32_t low = base | scatter_block(a, a_pos);
            if (coeffs.sign(low) * coeffs.sign(low | split_bit) > 0) ++c_plus;
        }
        if (c_plus != half) return false;
    }
    return true;
}

bool check_admissible(const CoefficientTensor& coeffs) {
    const int n = coeffs.n();
    if (n < 2) throw std::invalid_argument("admissibility requires n >= 2");
    if (n > 8)
        throw capacity_error("check_admissible enumerates n! permutations; n = " +
                             std::to_string(n) + " exceeds the cap of 8");
    std::vector<int> block_sizes;
    if (n <= 5)
        for (int p = 1; p <= n - 1; ++p) block_sizes.push_back(p);
    else
        block_sizes.push_back(n - 1);
    std::vector<Bipartition> parts;
    parts.reserve(block_sizes.size());
    for (int p : block_sizes)
        parts.emplace_back(n, static_cast<std::uint32_t>((1ull << p) - 1));

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        const CoefficientTensor permuted = coeffs.permuted(perm);
        for (const Bipartition& part : parts)
            if (!check_minimal(permuted, part)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

long long partial_separability_bound(const CoefficientTensor& coeffs,
                                     std::uint64_t strategy_cap) {
    long long best = 0;
    for (const Bipartition& part : all_bipartitions(coeffs.n()))
        best = std::max(best, hybrid_max(coeffs, part, strategy_cap).value);
    return best;
}

MinimaxResult full_minimax(int n) {
    if (n < 2) throw std::invalid_argument("full minimax requires n >= 2");
    if (n > 4)
        throw capacity_error("full_minimax searches 2^(2^n - 1) tensors; n = " +
                             std::to_string(n) + " exceeds the cap of 4");
    const std::size_t count = index_count(n);
    const auto parts = all_bipartitions(n);

    // Per-partition block tables precomputed once; the sign table is rebuilt
    // per candidate tensor.
    struct PartTables {
        std::vector<int> enum_pos, greedy_pos;
        std::uint64_t strategies;
    };
    std::vector<PartTables> tables;
    for (const auto& part : parts) {
        PartTables t;
        auto a_pos = part.subset_a();
        auto b_pos = part.subset_b();
        const bool enumerate_a = a_pos.size() <= b_pos.size();
        t.enum_pos = enumerate_a ? a_pos : b_pos;
        t.greedy_pos = enumerate_a ? b_pos : a_pos;
        t.strategies = checked_strategy_count(t.enum_pos.size(), kDefaultStrategyCap);
        tables.push_back(std::move(t));
    }

    long long best = std::numeric_limits<long long>::max();
    std::vector<std::vector<std::int8_t>> minimizers;
    std::vector<std::int8_t> signs(count, 1);
    const std::uint64_t candidates = std::uint64_t{1} << (count - 1);
    for (std::uint64_t mask = 0; mask < candidates; ++mask) {
        // sigma_{(1,...,1)} fixed to +1: the overall sign is not significant.
        for (std::size_t i = 1; i < count; ++i)
            signs[i] = (mask >> (i - 1)) & 1u ? -1 : 1;
        const CoefficientTensor candidate(n, signs);
        long long worst = 0;
        bool pruned = false;
        for (const auto& t : tables) {
            const auto table = block_sign_table(candidate, t.enum_pos, t.greedy_pos);
            const long long v = best_value_for_table(
                table, std::size_t{1} << t.enum_pos.size(),
                std::size_t{1} << t.greedy_pos.size(), t.strategies, nullptr);
            worst = std::max(worst, v);
            if (worst > best) {
                pruned = true;
                break;
            }
        }
        if (pruned) continue;
        if (worst < best) {
            best = worst;
            minimizers.clear();
        }
        if (worst == best) minimizers.push_back(signs);
    }

    MinimaxResult out;
    out.m = best;
    out.minimizers.reserve(minimizers.size());
    for (auto& s : minimizers) out.minimizers.emplace_back(n, std::move(s));
    return out;
}

} // namespace partsep
