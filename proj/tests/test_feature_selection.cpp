#include <catch2/catch_amalgamated.hpp>

#include <faabe/dataset.hpp>
#include <faabe/feature_selection.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace faabe;

namespace {

// Three engineered feature series against a fixed effort column, with sample
// correlations straddling the 0.5 threshold from both sides.
const std::vector<double> eff{12, 18, 25, 31, 40, 47, 55, 63, 72, 80, 90, 101};
const std::vector<double> f_strong{-2.153, -4.594, 2.244, 1.433,  0.025,  2.774,
                                   4.874,  5.812,  7.71,  12.725, 13.798, 8.091};
const std::vector<double> f_weak{-5.427,  23.594, -23.554, 19.073,
                                 19.978,  22.492, 13.659,  -22.266,
                                 10.108,  24.837, 16.917,  23.434};
const std::vector<double> f_negative{0.901,  -5.95,  -4.931, -2.439,
                                     -3.382, -5.687, -7.411, -6.538,
                                     -5.097, -8.163, -12.485, -6.189};

dataset engineered(bool with_nominal = false) {
    std::ostringstream csv;
    csv << "strong,weak,negative" << (with_nominal ? ",mode" : "") << ",effort\n";
    for (std::size_t i = 0; i < eff.size(); ++i) {
        csv << f_strong[i] << ',' << f_weak[i] << ',' << f_negative[i];
        if (with_nominal) csv << (i % 2 ? ",organic" : ",embedded");
        csv << ',' << eff[i] << '\n';
    }
    const std::string manifest =
        with_nominal ? "effort = effort\nnominal = mode\n" : "effort = effort\n";
    return load_csv_text(csv.str(), parse_manifest_text(manifest, "m"), "eng");
}

}  // namespace

TEST_CASE("pearson worked example", "[selection]") {
    const auto r = pearson({1, 2, 3, 4}, {2, 4, 5, 4});
    REQUIRE(r.has_value());
    CHECK_THAT(*r, Catch::Matchers::WithinAbs(0.7181848464596078, 1e-13));
}

TEST_CASE("pearson of linear series is exactly +/-1", "[selection]") {
    CHECK_THAT(*pearson({1, 2, 3}, {10, 20, 30}),
               Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(*pearson({1, 2, 3}, {3, 2, 1}),
               Catch::Matchers::WithinAbs(-1.0, 1e-15));
}

TEST_CASE("pearson is undefined for constant series", "[selection]") {
    CHECK_FALSE(pearson({5, 5, 5}, {1, 2, 3}).has_value());
    CHECK_FALSE(pearson({1, 2, 3}, {7, 7, 7}).has_value());
}

TEST_CASE("engineered series match their frozen correlations", "[selection]") {
    CHECK_THAT(*pearson(f_strong, eff),
               Catch::Matchers::WithinAbs(0.8997036191357634, 1e-13));
    CHECK_THAT(*pearson(f_weak, eff),
               Catch::Matchers::WithinAbs(0.30022208318057075, 1e-13));
    CHECK_THAT(*pearson(f_negative, eff),
               Catch::Matchers::WithinAbs(-0.7001309754158558, 1e-13));
}

TEST_CASE("selection keeps |r| >= threshold and reports the rest", "[selection]") {
    const selection_result res = select_features(engineered(), 0.5);
    CHECK(res.kept == std::vector<std::string>{"strong", "negative"});
    CHECK(res.kept_indices == std::vector<std::size_t>{0, 2});
    REQUIRE(res.dropped.size() == 1);
    CHECK(res.dropped[0].first == "weak");
    REQUIRE(res.correlations[1].has_value());
    CHECK_THAT(*res.correlations[1],
               Catch::Matchers::WithinAbs(0.30022208318057075, 1e-13));
}

TEST_CASE("nominal features bypass the correlation filter", "[selection]") {
    const selection_result res = select_features(engineered(true), 0.5);
    CHECK(res.kept == std::vector<std::string>{"strong", "negative", "mode"});
    CHECK(res.kept_indices == std::vector<std::size_t>{0, 2, 3});
    CHECK_FALSE(res.correlations[3].has_value());
}

TEST_CASE("threshold is inclusive on |r|", "[selection]") {
    const double r_neg = std::abs(*pearson(f_negative, eff));
    const selection_result at = select_features(engineered(), r_neg);
    CHECK(at.kept == std::vector<std::string>{"strong", "negative"});
    const selection_result above =
        select_features(engineered(), std::nextafter(r_neg, 1.0));
    CHECK(above.kept == std::vector<std::string>{"strong"});
}

TEST_CASE("a hopeless threshold falls back to the best single feature",
          "[selection]") {
    const selection_result res = select_features(engineered(), 0.99);
    CHECK(res.kept == std::vector<std::string>{"strong"});
    CHECK(res.kept_indices == std::vector<std::size_t>{0});
    // the fallback feature is no longer listed as dropped
    for (const auto& [name, r] : res.dropped) CHECK(name != "strong");
}

TEST_CASE("selection can be restricted to a row subset", "[selection]") {
    const dataset d = engineered();
    std::vector<std::size_t> head(8);
    for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
    const selection_result sub = select_features(d, 0.5, head);

    std::vector<double> sub_strong(f_strong.begin(), f_strong.begin() + 8);
    std::vector<double> sub_eff(eff.begin(), eff.begin() + 8);
    REQUIRE(sub.correlations[0].has_value());
    CHECK(*sub.correlations[0] == *pearson(sub_strong, sub_eff));
}

TEST_CASE("selection validates the threshold", "[selection]") {
    CHECK_THROWS_AS(select_features(engineered(), -0.1), config_error);
    CHECK_THROWS_AS(select_features(engineered(), 1.5), config_error);
}
