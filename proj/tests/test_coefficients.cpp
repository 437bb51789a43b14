#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "partsep/coefficients.hpp"
#include "partsep/correlation.hpp"
#include "partsep/rng.hpp"

using namespace partsep;

namespace {

// The displayed 4-particle inequality, term by term.
const std::map<std::vector<int>, int> kFourParticleTerms = {
    {{1, 1, 1, 1}, +1}, {{2, 1, 1, 1}, -1}, {{1, 2, 1, 1}, -1}, {{1, 1, 2, 1}, -1},
    {{1, 1, 1, 2}, -1}, {{2, 2, 1, 1}, -1}, {{2, 1, 2, 1}, -1}, {{2, 1, 1, 2}, -1},
    {{1, 2, 2, 1}, -1}, {{1, 2, 1, 2}, -1}, {{1, 1, 2, 2}, -1}, {{2, 2, 2, 1}, +1},
    {{2, 2, 1, 2}, +1}, {{2, 1, 2, 2}, +1}, {{1, 2, 2, 2}, +1}, {{2, 2, 2, 2}, +1},
};

} // namespace

TEST_CASE("nu reproduces the period-four cycles") {
    const int plus_expected[4] = {1, -1, -1, 1};
    const int minus_expected[4] = {1, 1, -1, -1};
    for (int k = 0; k < 4; ++k) {
        CHECK(nu(SignVariant::plus, k) == plus_expected[k]);
        CHECK(nu(SignVariant::minus, k) == minus_expected[k]);
    }
    CHECK(nu(SignVariant::plus, 7) == nu(SignVariant::plus, 3));
    // Agreement with the closed form (-1)^(k(k+-1)/2).
    for (int k = 0; k <= 20; ++k) {
        CHECK(nu(SignVariant::plus, k) == (k * (k + 1) / 2 % 2 == 0 ? 1 : -1));
        CHECK(nu(SignVariant::minus, k) == (k * (k - 1) / 2 % 2 == 0 ? 1 : -1));
    }
    for (int k = 0; k <= 100; ++k)
        for (SignVariant v : {SignVariant::plus, SignVariant::minus})
            CHECK(nu(v, k + 4) == nu(v, k));
    CHECK_THROWS_AS(nu(SignVariant::plus, -1), std::invalid_argument);
}

TEST_CASE("alternating tensor matches the displayed 4-particle inequality") {
    const auto coeffs = CoefficientTensor::alternating(4, SignVariant::plus);
    for (const auto& [settings, sign] : kFourParticleTerms) {
        const auto index = MultiIndex::from_settings(settings);
        CHECK(coeffs.sign(index.code()) == sign);
    }
    // Sign pattern by t: +1 on t in {0,3,4}, -1 on t in {1,2}.
    for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
        const int t = MultiIndex(4, code).t();
        CHECK(coeffs.sign(code) == ((t == 1 || t == 2) ? -1 : 1));
    }
}

TEST_CASE("small alternating tensors") {
    const auto chsh = CoefficientTensor::alternating(2, SignVariant::plus);
    CHECK(chsh.sign(0b00) == 1);
    CHECK(chsh.sign(0b01) == -1);
    CHECK(chsh.sign(0b10) == -1);
    CHECK(chsh.sign(0b11) == -1);

    const auto single = CoefficientTensor::alternating(1, SignVariant::plus);
    CHECK(single.sign(0) == 1);
    CHECK(single.sign(1) == -1);

    CHECK_THROWS_AS(CoefficientTensor::alternating(0, SignVariant::plus),
                    std::invalid_argument);
}

TEST_CASE("alternating tensors are permutation symmetric") {
    for (int n = 2; n <= 5; ++n) {
        const auto coeffs = CoefficientTensor::alternating(n, SignVariant::minus);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            CHECK(coeffs.permuted(perm) == coeffs);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // Random permutations at n = 10.
    Rng rng(42);
    const auto coeffs = CoefficientTensor::alternating(10, SignVariant::plus);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 1);
    for (int trial = 0; trial < 50; ++trial) {
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next() % (i + 1)]);
        CHECK(coeffs.permuted(perm) == coeffs);
    }
}

TEST_CASE("permutation mechanics") {
    // Asymmetric tensor at n = 2: flip the sign of (2,1) only.
    std::vector<std::int8_t> signs = {1, -1, 1, 1};
    const CoefficientTensor tensor(2, signs);
    const CoefficientTensor swapped = tensor.permuted({2, 1});
    CHECK(swapped.sign(0b01) == tensor.sign(0b10));
    CHECK(swapped.sign(0b10) == tensor.sign(0b01));
    CHECK(swapped.sign(0b00) == tensor.sign(0b00));
    CHECK(swapped.sign(0b11) == tensor.sign(0b11));

    // perm then inverse is the identity.
    Rng rng(7);
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::int8_t> random_signs(std::size_t{1} << n);
        for (auto& s : random_signs) s = rng.next() & 1u ? 1 : -1;
        const CoefficientTensor t(n, random_signs);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next() % (i + 1)]);
        std::vector<int> inverse(n);
        for (int k = 0; k < n; ++k) inverse[perm[k] - 1] = k + 1;
        CHECK(t.permuted(perm).permuted(inverse) == t);
    }
    CHECK_THROWS_AS(tensor.permuted({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(tensor.permuted({1}), std::invalid_argument);
}

TEST_CASE("label swap relations") {
    // n = 2: swap(T+) = -T- (enumerate all four indices).
    const auto plus2 = CoefficientTensor::alternating(2, SignVariant::plus);
    const auto minus2 = CoefficientTensor::alternating(2, SignVariant::minus);
    const auto swapped2 = plus2.swapped_labels();
    for (std::uint32_t code = 0; code < 4; ++code)
        CHECK(swapped2.sign(code) == -minus2.sign(code));

    // n = 4: swap(T+) = (+1) T-.
    const auto plus4 = CoefficientTensor::alternating(4, SignVariant::plus);
    CHECK(plus4.swapped_labels() == CoefficientTensor::alternating(4, SignVariant::minus));

    SUBCASE("even n: swap maps plus to (-1)^(n/2) minus") {
        for (int n = 2; n <= 10; n += 2) {
            const auto swapped =
                CoefficientTensor::alternating(n, SignVariant::plus).swapped_labels();
            const auto minus = CoefficientTensor::alternating(n, SignVariant::minus);
            const int expected = n / 2 % 2 == 0 ? 1 : -1;
            for (std::uint32_t code = 0; code < swapped.size(); ++code)
                CHECK(swapped.sign(code) == expected * minus.sign(code));
        }
    }

    SUBCASE("odd n: swap maps each variant to a single global sign times itself") {
        for (int n = 3; n <= 9; n += 2) {
            for (SignVariant v : {SignVariant::plus, SignVariant::minus}) {
                const auto base = CoefficientTensor::alternating(n, v);
                const auto swapped = base.swapped_labels();
                const int s = swapped.sign(0) * base.sign(0);
                for (std::uint32_t code = 0; code < base.size(); ++code)
                    CHECK(swapped.sign(code) == s * base.sign(code));
                // The computed sign follows n mod 4 (reported, not assumed).
                if (v == SignVariant::plus) CHECK(s == (n % 4 == 3 ? 1 : -1));
            }
        }
    }

    SUBCASE("swap is an involution") {
        for (int n = 1; n <= 6; ++n) {
            const auto base = CoefficientTensor::alternating(n, SignVariant::plus);
            CHECK(base.swapped_labels().swapped_labels() == base);
        }
    }
}

TEST_CASE("inequality value arithmetic") {
    const auto chsh = CoefficientTensor::alternating(2, SignVariant::plus);
    const CorrelationTensor ones(2, {1.0, 1.0, 1.0, 1.0});
    CHECK(inequality_value(chsh, ones).value == -2.0);
    CHECK(!inequality_value(chsh, ones).std_error.has_value());

    // E(I) = nu(t(I)) saturates to 2^n.
    const auto plus4 = CoefficientTensor::alternating(4, SignVariant::plus);
    std::vector<double> aligned(16);
    for (std::uint32_t code = 0; code < 16; ++code)
        aligned[code] = plus4.sign(code);
    CHECK(inequality_value(plus4, CorrelationTensor(4, aligned)).value ==
          16.0);

    SUBCASE("propagated standard error") {
        const CorrelationTensor with_errors(2, {0.5, -0.5, 0.25, 0.0},
                                            std::vector<double>{0.1, 0.2, 0.0, 0.3});
        const auto result = inequality_value(chsh, with_errors);
        CHECK(*result.std_error ==
              doctest::Approx(std::sqrt(0.01 + 0.04 + 0.09)).epsilon(1e-12));
    }

    SUBCASE("dimension mismatch rejected") {
        const CorrelationTensor small(1, {0.0, 0.0});
        CHECK_THROWS_AS(inequality_value(chsh, small), std::invalid_argument);
    }

    SUBCASE("linearity in the correlations") {
        Rng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> e1(4), e2(4);
            for (int i = 0; i < 4; ++i) {
                e1[i] = rng.uniform(-1.0, 1.0);
                e2[i] = rng.uniform(-1.0, 1.0);
            }
            const double a = rng.uniform01();
            std::vector<double> mix(4);
            for (int i = 0; i < 4; ++i) mix[i] = a * e1[i] + (1.0 - a) * e2[i];
            const double lhs = inequality_value(chsh, CorrelationTensor(2, mix)).value;
            const double rhs =
                a * inequality_value(chsh, CorrelationTensor(2, e1)).value +
                (1.0 - a) * inequality_value(chsh, CorrelationTensor(2, e2)).value;
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("correlation tensor validation") {
    CHECK_THROWS_AS(CorrelationTensor(2, {1.0, 1.0 + 1e-9, 0.0, 0.0}), validation_error);
    CHECK_NOTHROW(CorrelationTensor(2, {1.0, 1.0 + 1e-13, -1.0, 0.0}));
    CHECK_THROWS_AS(CorrelationTensor(2, {0.0, 0.0, 0.0, 0.0},
                                      std::vector<double>{0.0, -0.1, 0.0, 0.0}),
                    validation_error);
    CHECK_THROWS_AS(CorrelationTensor(2, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("multi-index encoding") {
    const auto index = MultiIndex::from_settings({2, 1, 1, 1});
    CHECK(index.code() == 1);
    CHECK(index.t() == 1);
    CHECK(index.setting(1) == 2);
    CHECK(index.setting(2) == 1);
    CHECK(index.flipped().code() == 0b1110);
    CHECK(index.flipped().t() == 3);
    CHECK(MultiIndex::from_settings(index.settings()) == index);
    CHECK_THROWS_AS(MultiIndex::from_settings({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex(2, 4), std::invalid_argument);
}
