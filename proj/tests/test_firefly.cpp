#include <catch2/catch_amalgamated.hpp>

#include <faabe/firefly.hpp>

#include <cmath>
#include <vector>

using namespace faabe;
using Catch::Matchers::WithinAbs;

namespace {

project make_project(std::vector<double> nums, double eff) {
    project p;
    for (const double v : nums) p.values.emplace_back(v);
    p.effort = eff;
    return p;
}

// Two-feature toy: effort tracks the first feature; the second is noise.
struct toy {
    std::vector<project> basic{make_project({0.10, 0.90}, 110),
                               make_project({0.30, 0.20}, 310),
                               make_project({0.50, 0.65}, 520),
                               make_project({0.70, 0.10}, 680),
                               make_project({0.90, 0.40}, 890)};
    std::vector<project> train{make_project({0.20, 0.50}, 205),
                               make_project({0.40, 0.85}, 415),
                               make_project({0.60, 0.30}, 600),
                               make_project({0.80, 0.75}, 800)};
    std::vector<feature_kind> kinds{feature_kind::numeric, feature_kind::numeric};
    abe_config abe;  // defaults: k=3, euclidean, iwm

    fitness_objective objective() const {
        std::vector<double> be, te;
        for (const auto& p : basic) be.push_back(p.effort);
        for (const auto& p : train) te.push_back(p.effort);
        return fitness_objective(basic, be, train, te, kinds, abe);
    }
};

}  // namespace

TEST_CASE("toy brightness oracle", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    CHECK_THAT(obj({1.0, 0.0}), WithinAbs(5.653119916793534, 1e-12));
    CHECK_THAT(obj({1.0, 1.0}), WithinAbs(4.1854213976982315, 1e-12));
    // focusing weight on the informative feature brightens the firefly
    CHECK(obj({1.0, 0.0}) > obj({1.0, 1.0}));
}

TEST_CASE("fitness inverts training error", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    const double mmre = obj.train_mmre({1.0, 1.0});
    CHECK_THAT(obj({1.0, 1.0}), WithinAbs(1.0 / (mmre + fitness_epsilon), 1e-15));
}

TEST_CASE("objective rejects k beyond the basic set", "[firefly]") {
    toy t;
    t.abe.k_analogies = 6;
    CHECK_THROWS_AS(t.objective(), config_error);
}

TEST_CASE("distance and attraction geometry", "[firefly]") {
    CHECK(distance_squared({0.0, 0.0}, {3.0, 4.0}) == 25.0);
    const firefly a{{0.2, 0.4}, 1.0};
    const firefly b{{0.8, 0.6}, 2.0};
    CHECK_THAT(firefly_distance(a, b), WithinAbs(std::sqrt(0.4), 1e-15));
}

TEST_CASE("a move with no randomness lands between the fireflies", "[firefly]") {
    fa_config cfg;
    cfg.alpha = 0.0;
    cfg.beta0 = 1.0;
    cfg.gamma = 1e-12;  // beta ~= 1: full step onto the brighter firefly
    rng_engine rng(1);
    const firefly dim{{0.2, 0.4}, 1.0};
    const firefly bright{{0.8, 0.6}, 2.0};
    const weight_vector to = move(dim, bright, cfg, 0.0, rng);
    CHECK_THAT(to[0], WithinAbs(0.8, 1e-12));
    CHECK_THAT(to[1], WithinAbs(0.6, 1e-12));

    cfg.gamma = 1e9;  // beta ~= 0: no displacement at all
    rng_engine rng2(1);
    const weight_vector stay = move(dim, bright, cfg, 0.0, rng2);
    CHECK_THAT(stay[0], WithinAbs(0.2, 1e-12));
    CHECK_THAT(stay[1], WithinAbs(0.4, 1e-12));
}

TEST_CASE("moves clamp into the unit box", "[firefly]") {
    fa_config cfg;
    cfg.alpha = 50.0;  // huge random kick
    rng_engine rng(99);
    const firefly i{{0.5, 0.5}, 1.0};
    const firefly j{{0.6, 0.6}, 2.0};
    for (int trial = 0; trial < 200; ++trial) {
        const weight_vector w = move(i, j, cfg, cfg.alpha, rng);
        for (const double v : w) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
        const weight_vector r = random_walk(i, cfg.alpha, rng);
        for (const double v : r) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("optimizer reproduces the frozen toy trajectory", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config cfg;
    cfg.n_pop = 5;
    cfg.iters = 10;
    cfg.seed = 1;
    const fa_result r = optimize(obj, 2, cfg, {{1.0, 1.0}});
    CHECK_THAT(r.best_brightness, WithinAbs(5.653119916793534, 1e-12));
    CHECK(r.best_position == weight_vector{1.0, 0.0});
    REQUIRE(r.trace.size() == 11);
    CHECK_THAT(r.trace.front(), WithinAbs(5.00006255845893, 1e-12));
    CHECK_THAT(r.trace.back(), WithinAbs(5.653119916793534, 1e-12));

    cfg.seed = 2;
    const fa_result r2 = optimize(obj, 2, cfg, {{1.0, 1.0}});
    CHECK_THAT(r2.best_brightness, WithinAbs(5.6530481706302504, 1e-12));
    CHECK_THAT(r2.best_position[0], WithinAbs(0.9502750352985071, 1e-12));
    CHECK_THAT(r2.best_position[1], WithinAbs(0.0, 1e-12));
    CHECK_THAT(r2.trace.front(), WithinAbs(5.320486278083093, 1e-12));
}

TEST_CASE("optimizer is deterministic for a fixed seed", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config cfg;
    cfg.n_pop = 8;
    cfg.iters = 12;
    cfg.seed = 77;
    const fa_result a = optimize(obj, 2, cfg);
    const fa_result b = optimize(obj, 2, cfg);
    CHECK(a.best_position == b.best_position);
    CHECK(a.best_brightness == b.best_brightness);
    CHECK(a.trace == b.trace);

    cfg.seed = 78;
    const fa_result c = optimize(obj, 2, cfg);
    CHECK(a.trace != c.trace);
}

TEST_CASE("the trace never decreases and starts at the initial best",
          "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config cfg;
    cfg.n_pop = 6;
    cfg.iters = 15;
    cfg.seed = 5;
    const fa_result r = optimize(obj, 2, cfg, {{1.0, 1.0}});
    REQUIRE(r.trace.size() == cfg.iters + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        REQUIRE(r.trace[i] >= r.trace[i - 1]);
    CHECK(r.best_brightness == r.trace.back());
    // all-ones is seeded, so the starting point can never undercut it
    CHECK(r.trace.front() >= obj(weight_vector{1.0, 1.0}));
}

TEST_CASE("degenerate configurations reduce to the seeded baseline", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    const weight_vector ones{1.0, 1.0};

    fa_config no_iters;
    no_iters.n_pop = 5;
    no_iters.iters = 0;
    const fa_result a = optimize(obj, 2, no_iters, {ones});
    CHECK(a.trace.size() == 1);

    fa_config lone;
    lone.n_pop = 1;
    lone.iters = 0;
    const fa_result b = optimize(obj, 2, lone, {ones});
    CHECK(b.best_position == ones);
    CHECK_THAT(b.best_brightness, WithinAbs(obj(ones), 0.0));
}

TEST_CASE("a lone firefly random-walks without brighter attractors", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config lone;
    lone.n_pop = 1;
    lone.iters = 30;
    lone.seed = 4;
    const fa_result r = optimize(obj, 2, lone, {{1.0, 1.0}});
    // the walk must keep the running best at least as bright as the seed
    CHECK(r.best_brightness >= obj(weight_vector{1.0, 1.0}));
    CHECK(r.trace.size() == 31);
}

TEST_CASE("optimizer validates its configuration", "[firefly]") {
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config cfg;
    cfg.n_pop = 0;
    CHECK_THROWS_AS(optimize(obj, 2, cfg), config_error);
    cfg = {};
    cfg.beta0 = 0.0;
    CHECK_THROWS_AS(optimize(obj, 2, cfg), config_error);
    cfg = {};
    cfg.gamma = -1.0;
    CHECK_THROWS_AS(optimize(obj, 2, cfg), config_error);
    cfg = {};
    cfg.alpha = -0.1;
    CHECK_THROWS_AS(optimize(obj, 2, cfg), config_error);
    cfg = {};
    cfg.n_pop = 1;
    CHECK_THROWS_AS(optimize(obj, 2, cfg, {{1.0, 0.0}, {0.0, 1.0}}), config_error);
    CHECK_THROWS_AS(optimize(obj, 2, cfg, {{1.0, 0.0, 0.5}}), config_error);
}

TEST_CASE("seeded positions occupy the leading population slots", "[firefly]") {
    // with alpha = 0 and a tiny gamma every firefly collapses onto the best
    // seeded position, so the optimum equals the better of the two seeds
    const toy t;
    const fitness_objective obj = t.objective();
    fa_config cfg;
    cfg.n_pop = 2;
    cfg.iters = 3;
    cfg.alpha = 0.0;
    cfg.gamma = 1e-12;
    const fa_result r = optimize(obj, 2, cfg, {{1.0, 1.0}, {1.0, 0.0}});
    CHECK_THAT(r.best_brightness, WithinAbs(obj(weight_vector{1.0, 0.0}), 1e-12));
}
