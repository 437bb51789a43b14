#include <doctest.h>

#include <cmath>

#include "partsep/bounds.hpp"
#include "partsep/hv_model.hpp"
#include "partsep/rng.hpp"
#include "support/random_models.hpp"

using namespace partsep;

namespace {

HybridModel uniform_model(int n, std::uint32_t mask) {
    const Bipartition part(n, mask);
    const std::size_t acount = std::size_t{1} << part.p();
    const std::size_t bcount = std::size_t{1} << (n - part.p());
    HiddenVariable lam;
    lam.prob = 1.0;
    lam.q.assign(acount, std::vector<double>(acount, 1.0 / acount));
    lam.r.assign(bcount, std::vector<double>(bcount, 1.0 / bcount));
    HybridModel model;
    model.n = n;
    model.subensembles.push_back(Subensemble{1.0, part, {std::move(lam)}});
    return model;
}

} // namespace

TEST_CASE("model validation") {
    auto model = uniform_model(3, 0b011);
    CHECK(validate_model(model).ok);

    SUBCASE("weight sum") {
        model.subensembles[0].weight = 0.9;
        const auto report = validate_model(model);
        CHECK(!report.ok);
        CHECK(report.diagnostic.find("weights") != std::string::npos);
    }

    SUBCASE("lambda probabilities") {
        model.subensembles[0].lambdas[0].prob = 0.5;
        const auto report = validate_model(model);
        CHECK(!report.ok);
        CHECK(report.diagnostic.find("lambda probs") != std::string::npos);
    }

    SUBCASE("conditional rows must be normalized") {
        model.subensembles[0].lambdas[0].q[1][0] += 0.25;
        const auto report = validate_model(model);
        CHECK(!report.ok);
        CHECK(report.diagnostic.find("q row 1") != std::string::npos);
    }

    SUBCASE("deterministic tables are valid") {
        const Bipartition part(3, 0b011);
        Rng rng(9);
        const auto [xi, eta] = testgen::random_responses(part, rng);
        CHECK(validate_model(testgen::deterministic_model(3, part, xi, eta)).ok);
    }
}

TEST_CASE("exact model correlations") {
    SUBCASE("uniform tables give zero correlations") {
        const auto corr = model_correlations(uniform_model(3, 0b101));
        for (std::uint32_t code = 0; code < corr.size(); ++code)
            CHECK(corr.value(code) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    }

    SUBCASE("deterministic models reproduce the bilinear form") {
        Rng rng(2525);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng.next() % 4); // up to 5
            const auto part = testgen::random_bipartition(n, rng);
            const auto [xi, eta] = testgen::random_responses(part, rng);
            const auto model = testgen::deterministic_model(n, part, xi, eta);
            const auto corr = model_correlations(model);

            ResponseAssignment resp{xi, eta, std::nullopt};
            for (SignVariant v : {SignVariant::plus, SignVariant::minus}) {
                const auto coeffs = CoefficientTensor::alternating(n, v);
                const double sum = inequality_value(coeffs, corr).value;
                const long long exact = bilinear_value(coeffs, part, resp);
                CHECK(sum == doctest::Approx(static_cast<double>(exact)).epsilon(1e-12));
            }
            // E(I) is exactly the product of the cluster responses.
            for (std::uint32_t code = 0; code < corr.size(); ++code) {
                std::uint32_t a = 0, b = 0;
                const auto a_pos = part.subset_a();
                const auto b_pos = part.subset_b();
                for (std::size_t j = 0; j < a_pos.size(); ++j)
                    a |= ((code >> (a_pos[j] - 1)) & 1u) << j;
                for (std::size_t j = 0; j < b_pos.size(); ++j)
                    b |= ((code >> (b_pos[j] - 1)) & 1u) << j;
                CHECK(corr.value(code) == static_cast<double>(xi[a] * eta[b]));
            }
        }
    }

    SUBCASE("every valid model satisfies the partial separability bound") {
        for (int n : {3, 4, 5}) {
            for (std::uint64_t seed = 0; seed < 170; ++seed) {
                const auto model = testgen::random_model(n, 1000 * n + seed);
                const auto corr = model_correlations(model);
                for (SignVariant v : {SignVariant::plus, SignVariant::minus}) {
                    const double value =
                        inequality_value(CoefficientTensor::alternating(n, v), corr).value;
                    CHECK(std::abs(value) <= std::ldexp(1.0, n - 1) + 1e-12);
                }
            }
        }
    }

    SUBCASE("mixtures are convex in the correlations") {
        Rng rng(808);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 3;
            auto m1 = testgen::random_model(n, 50 + trial);
            auto m2 = testgen::random_model(n, 950 + trial);
            const double a = rng.uniform01();
            HybridModel mix;
            mix.n = n;
            for (const auto& sub : m1.subensembles) {
                mix.subensembles.push_back(sub);
                mix.subensembles.back().weight *= a;
            }
            for (const auto& sub : m2.subensembles) {
                mix.subensembles.push_back(sub);
                mix.subensembles.back().weight *= 1.0 - a;
            }
            const auto c1 = model_correlations(m1);
            const auto c2 = model_correlations(m2);
            const auto cm = model_correlations(mix);
            for (std::uint32_t code = 0; code < cm.size(); ++code)
                CHECK(std::abs(cm.value(code) -
                               (a * c1.value(code) + (1.0 - a) * c2.value(code))) <=
                      1e-12);
        }
    }

    SUBCASE("invalid model rejected") {
        auto model = uniform_model(3, 0b001);
        model.subensembles[0].weight = 0.25;
        CHECK_THROWS_AS(model_correlations(model), validation_error);
    }
}

TEST_CASE("sampling") {
    SUBCASE("deterministic models land on one record") {
        const Bipartition part(3, 0b011);
        Rng rng(44);
        const auto [xi, eta] = testgen::random_responses(part, rng);
        const auto model = testgen::deterministic_model(3, part, xi, eta);
        const auto counts = sample_outcomes(model, MultiIndex(3, 5), 1000, 4);
        int nonzero = 0;
        for (const auto c : counts)
            if (c > 0) ++nonzero;
        CHECK(nonzero == 1);
    }

    SUBCASE("uniform model frequencies concentrate") {
        const auto model = uniform_model(3, 0b001);
        const std::uint64_t shots = 100000;
        const auto counts = sample_outcomes(model, MultiIndex(3, 0), shots, 99);
        const double p = 1.0 / 8.0;
        const double tol = 5.0 * std::sqrt(p * (1.0 - p) / shots);
        for (const auto c : counts)
            CHECK(std::abs(static_cast<double>(c) / shots - p) <= tol);
    }

    SUBCASE("same seed reproduces counts") {
        const auto model = testgen::random_model(3, 7);
        const auto a = sample_outcomes(model, MultiIndex(3, 2), 5000, 123);
        const auto b = sample_outcomes(model, MultiIndex(3, 2), 5000, 123);
        CHECK(a == b);
        const auto c = sample_outcomes(model, MultiIndex(3, 2), 5000, 124);
        CHECK(a != c);
    }
}

TEST_CASE("counts dataset and estimation") {
    SUBCASE("all mass on even-parity records estimates to 1 with zero error") {
        std::vector<std::vector<std::uint64_t>> counts(4,
                                                       std::vector<std::uint64_t>(4, 0));
        for (auto& row : counts) row[0b11] = 100; // two -1 outcomes: even parity
        const CountsDataset data(2, 100, counts);
        const auto est = estimate_correlations(data);
        for (std::uint32_t s = 0; s < 4; ++s) {
            CHECK(est.value(s) == 1.0);
            CHECK(est.std_error(s) == 0.0);
        }
    }

    SUBCASE("even/odd split estimates to zero with shots^-1/2 error") {
        std::vector<std::vector<std::uint64_t>> counts(4,
                                                       std::vector<std::uint64_t>(4, 0));
        for (auto& row : counts) {
            row[0b00] = 200;
            row[0b01] = 200;
        }
        const CountsDataset data(2, 400, counts);
        const auto est = estimate_correlations(data);
        for (std::uint32_t s = 0; s < 4; ++s) {
            CHECK(est.value(s) == 0.0);
            CHECK(est.std_error(s) == doctest::Approx(1.0 / std::sqrt(400.0)).epsilon(1e-12));
        }
    }

    SUBCASE("counts must sum to the declared shots") {
        std::vector<std::vector<std::uint64_t>> counts(4,
                                                       std::vector<std::uint64_t>(4, 0));
        counts[0][0] = 99;
        counts[1][0] = 100;
        counts[2][0] = 100;
        counts[3][0] = 100;
        CHECK_THROWS_AS(CountsDataset(2, 100, counts), validation_error);
    }

    SUBCASE("estimates agree with exact model correlations within five sigma") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto model = testgen::random_model(3, 31000 + seed);
            const auto exact = model_correlations(model);
            const auto data = simulate_model(model, 100000, seed);
            const auto est = estimate_correlations(data);
            for (std::uint32_t s = 0; s < est.size(); ++s) {
                const double se = std::max(est.std_error(s), 1e-9);
                CHECK(std::abs(est.value(s) - exact.value(s)) <= 5.0 * se);
            }
        }
    }

    SUBCASE("GHZ sampling reproduces the quantum maximum within five sigma") {
        const auto angles = optimal_angles(3, SignVariant::plus);
        const auto data = simulate_state(ghz_state(3, 1), angles, 100000, 2026);
        const auto est = estimate_correlations(data);
        const auto result =
            inequality_value(CoefficientTensor::alternating(3, SignVariant::plus), est);
        REQUIRE(result.std_error.has_value());
        CHECK(std::abs(result.value - 4.0 * std::sqrt(2.0)) <= 5.0 * *result.std_error);
        CHECK(*result.std_error < 0.01);
    }

    SUBCASE("sub-seeds per setting are scheduling independent") {
        const auto model = testgen::random_model(3, 1);
        const auto data = simulate_model(model, 2000, 55);
        for (std::uint32_t code = 0; code < 8; ++code) {
            const auto direct =
                sample_outcomes(model, MultiIndex(3, code), 2000, derive_seed(55, code));
            CHECK(data.counts(code) == direct);
        }
    }
}

TEST_CASE("outcome keys") {
    CHECK(outcome_key(0b000, 3) == "+++");
    CHECK(outcome_key(0b101, 3) == "-+-");
    CHECK(outcome_code_from_key("-+-", 3) == 0b101);
    CHECK(n_minus(0b101) == 2);
    CHECK_THROWS_AS(outcome_code_from_key("+x+", 3), validation_error);
    CHECK_THROWS_AS(outcome_code_from_key("++", 3), validation_error);
}
