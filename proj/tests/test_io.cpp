#include <doctest.h>

#include <cmath>

#include "partsep/io.hpp"
#include "partsep/rng.hpp"
#include "support/random_models.hpp"

using namespace partsep;
using partsep::io::json;

TEST_CASE("coefficient tensor documents") {
    const auto coeffs = CoefficientTensor::alternating(3, SignVariant::minus);
    const json doc = io::coefficients_to_json(coeffs, "minus");
    CHECK(doc["n"] == 3);
    CHECK(doc["bound"] == 4);
    CHECK(doc["entries"].size() == 8);
    // Ascending encoded-index order.
    CHECK(doc["entries"][0]["settings"] == json::array({1, 1, 1}));
    CHECK(doc["entries"][1]["settings"] == json::array({2, 1, 1}));
    CHECK(io::coefficients_from_json(doc) == coeffs);

    SUBCASE("missing entry rejected") {
        json broken = doc;
        broken["entries"].erase(3);
        CHECK_THROWS_AS(io::coefficients_from_json(broken), validation_error);
    }
    SUBCASE("bad sign rejected") {
        json broken = doc;
        broken["entries"][0]["sign"] = 2;
        CHECK_THROWS_AS(io::coefficients_from_json(broken), validation_error);
    }
    SUBCASE("csv layout") {
        const auto csv = io::coefficients_to_csv(CoefficientTensor::alternating(
            2, SignVariant::plus));
        CHECK(csv == "i1,i2,t,sign\n"
                     "1,1,0,+1\n"
                     "2,1,1,-1\n"
                     "1,2,1,-1\n"
                     "2,2,2,-1\n");
    }
}

TEST_CASE("correlation tensor documents") {
    std::vector<double> values = {0.25, -0.5, 1.0, 0.0};
    std::vector<double> errors = {0.01, 0.02, 0.0, 0.3};
    const CorrelationTensor corr(2, values, errors);
    const json doc = io::correlation_to_json(corr);
    const auto parsed = io::correlation_from_json(doc);
    CHECK(parsed.values() == values);
    CHECK(*parsed.std_errors() == errors);

    SUBCASE("all settings required, missing ones are listed") {
        json broken = doc;
        broken["entries"].erase(2);
        try {
            io::correlation_from_json(broken);
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find("missing settings") != std::string::npos);
        }
    }
    SUBCASE("mixed std_error presence rejected") {
        json broken = doc;
        broken["entries"][1].erase("std_error");
        CHECK_THROWS_AS(io::correlation_from_json(broken), validation_error);
    }
    SUBCASE("out-of-range value rejected") {
        json broken = doc;
        broken["entries"][0]["value"] = 1.001;
        CHECK_THROWS_AS(io::correlation_from_json(broken), validation_error);
    }
    SUBCASE("duplicate settings rejected") {
        json broken = doc;
        broken["entries"][1]["settings"] = broken["entries"][0]["settings"];
        CHECK_THROWS_AS(io::correlation_from_json(broken), validation_error);
    }
}

TEST_CASE("angle documents") {
    const auto angles = optimal_angles(3, SignVariant::plus);
    const json doc = io::angles_to_json(angles);
    const auto parsed = io::angles_from_json(doc);
    CHECK(parsed.n == 3);
    for (int k = 1; k <= 3; ++k)
        for (int i = 1; i <= 2; ++i)
            CHECK(parsed.angle(k, i) == angles.angle(k, i));
    CHECK_THROWS_AS(io::angles_from_json(json{{"n", 2}, {"angles", {{0.0, 0.0}}}}),
                    validation_error);
}

TEST_CASE("model documents") {
    const auto model = testgen::random_model(4, 321);
    const json doc = io::model_to_json(model);
    const auto parsed = io::model_from_json(doc);
    CHECK(parsed.n == model.n);
    REQUIRE(parsed.subensembles.size() == model.subensembles.size());
    // Exact float round-trip through JSON.
    const auto before = model_correlations(model);
    const auto after = model_correlations(parsed);
    for (std::uint32_t code = 0; code < before.size(); ++code)
        CHECK(before.value(code) == after.value(code));

    SUBCASE("partition listed as the complement side") {
        // A document may list the cluster without particle 1; the q table then
        // describes that cluster and everything lands on the canonical side.
        json flipped = doc;
        auto& sub = flipped["subensembles"][0];
        const auto part = model.subensembles[0].partition;
        sub["partition"] = part.subset_b();
        // Swap each lambda's q and r to follow the renamed clusters.
        for (auto& lam : sub["lambdas"]) {
            json q = lam["q"];
            lam["q"] = lam["r"];
            lam["r"] = q;
        }
        const auto reparsed = io::model_from_json(flipped);
        const auto again = model_correlations(reparsed);
        for (std::uint32_t code = 0; code < before.size(); ++code)
            CHECK(before.value(code) == again.value(code));
    }

    SUBCASE("setting keys must be complete") {
        json broken = doc;
        auto& q = broken["subensembles"][0]["lambdas"][0]["q"];
        q.erase(q.begin());
        CHECK_THROWS_AS(io::model_from_json(broken), validation_error);
    }
    SUBCASE("bad outcome key rejected") {
        json broken = doc;
        auto& q = broken["subensembles"][0]["lambdas"][0]["q"];
        json row = *q.begin();
        row["+?"] = 0.5;
        *q.begin() = row;
        CHECK_THROWS_AS(io::model_from_json(broken), validation_error);
    }
}

TEST_CASE("counts documents") {
    const auto model = testgen::random_model(3, 99);
    const auto data = simulate_model(model, 500, 77);
    const json doc = io::counts_to_json(data);
    const auto parsed = io::counts_from_json(doc);
    CHECK(parsed.n() == 3);
    CHECK(parsed.shots() == 500);
    for (std::uint32_t s = 0; s < 8; ++s) CHECK(parsed.counts(s) == data.counts(s));

    SUBCASE("missing settings listed in the error") {
        json broken = doc;
        broken["data"].erase(5);
        try {
            io::counts_from_json(broken);
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find("missing settings") != std::string::npos);
        }
    }
    SUBCASE("count sum mismatch rejected") {
        json broken = doc;
        broken["shots"] = 501;
        CHECK_THROWS_AS(io::counts_from_json(broken), validation_error);
    }
    SUBCASE("malformed documents raise parse errors") {
        CHECK_THROWS_AS(io::parse_document("{not json"), parse_error);
        CHECK_THROWS_AS(io::counts_from_json(json{{"n", 3}}), parse_error);
    }
}
