#include "partsep/mu.hpp"

#include <stdexcept>
#include <string>

#include "partsep/multi_index.hpp"

namespace partsep {

std::vector<std::int8_t> MuSequence::nu_sequence() const {
    std::vector<std::int8_t> out(mu.size() + 1);
    out[0] = 1;
    for (std::size_t k = 0; k < mu.size(); ++k)
        out[k + 1] = static_cast<std::int8_t>(mu[k] * out[k]);
    return out;
}

std::vector<MuSequence> enumerate_mu_solutions(int n, int p) {
    if (n < 2 || p < 1 || p > n - 1)
        throw std::invalid_argument("mu conditions need n >= 2 and 1 <= p <= n-1");
    if (n > kMaxParticles)
        throw capacity_error("enumerate_mu_solutions scans 2^n sign vectors; n = " +
                             std::to_string(n) + " exceeds the cap of " +
                             std::to_string(kMaxParticles));
    std::vector<long long> binom(p + 1);
    binom[0] = 1;
    for (int b = 1; b <= p; ++b)
        binom[b] = binom[b - 1] * (p - b + 1) / b;

    std::vector<MuSequence> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::int8_t> mu(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int k = 0; k < n; ++k)
            mu[k] = (mask >> k) & 1u ? -1 : 1;
        bool ok = true;
        for (int a = 0; a <= n - p - 1 && ok; ++a) {
            long long sum = 0;
            for (int b = 0; b <= p; ++b) sum += binom[b] * mu[a + b];
            ok = sum == 0;
        }
        if (ok) out.push_back(MuSequence{mu});
    }
    return out;
}

} // namespace partsep
