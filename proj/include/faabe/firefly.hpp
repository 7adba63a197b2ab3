#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "faabe/abe.hpp"
#include "faabe/errors.hpp"
#include "faabe/evaluation.hpp"
#include "faabe/rng.hpp"

// Firefly Algorithm over the [0,1]^d feature-weight space. Brightness of a
// weight vector is 1/(MMRE + eps), where MMRE comes from estimating every
// train project against the basic case base with those weights. Dimmer
// fireflies move toward brighter ones:
//
//     x_i <- clamp01( x_i + beta0 * exp(-gamma * r^2) * (x_j - x_i)
//                         + alpha * (rand - 1/2) )      componentwise
//
// and a firefly with no brighter attractor takes the alpha random walk
// alone. The pass over (i, j) pairs is sequential with brightness recomputed
// immediately after each move — the classic reference formulation — and
// alpha decays geometrically once per iteration.
//
// Determinism: firefly i draws all of its randomness from its own substream
// seeded with derive_seed(cfg.seed, i), so results cannot depend on how
// fitness evaluations are scheduled.

namespace faabe {

inline constexpr double fitness_epsilon = 1e-9;

struct fa_config {
    std::size_t n_pop = 20;      // population size N
    std::size_t iters = 50;      // iterations T
    double beta0 = 1.0;          // attractiveness at distance zero
    double gamma = 1.0;          // light absorption
    double alpha = 0.2;          // randomness scale
    double alpha_decay = 0.97;   // per-iteration alpha multiplier
    std::uint64_t seed = 1;
};

struct firefly {
    weight_vector position;
    double brightness = 0.0;
};

// Training objective: estimate each train project from the basic case base.
// Per-pair per-feature distances are precomputed once; an evaluation is then
// one weighted accumulation per pair, matching the arithmetic of
// similarity() term for term (same feature order, same operations).
class fitness_objective {
public:
    fitness_objective(const std::vector<project>& basic_set,
                      std::vector<double> basic_efforts,
                      const std::vector<project>& train_set,
                      std::vector<double> train_efforts,
                      const std::vector<feature_kind>& kinds,
                      const abe_config& cfg)
        : n_basic_(basic_set.size()),
          n_train_(train_set.size()),
          dim_(kinds.size()),
          basic_efforts_(std::move(basic_efforts)),
          train_efforts_(std::move(train_efforts)),
          cfg_(cfg) {
        if (n_basic_ == 0 || n_train_ == 0)
            throw internal_error("fitness_objective: empty basic or train set");
        if (cfg.k_analogies > n_basic_)
            throw config_error("k_analogies exceeds basic-set size");
        dis_.resize(n_train_ * n_basic_ * dim_);
        std::size_t at = 0;
        for (const auto& t : train_set)
            for (const auto& b : basic_set)
                for (std::size_t f = 0; f < dim_; ++f)
                    dis_[at++] = feature_distance(t.values[f], b.values[f], kinds[f]);
    }

    std::size_t dim() const { return dim_; }

    double train_mmre(const weight_vector& w) const {
        if (w.size() != dim_) throw internal_error("fitness: weight dimension mismatch");
        std::vector<double> preds(n_train_);
        std::vector<analogy> top;
        top.reserve(cfg_.k_analogies);
        for (std::size_t t = 0; t < n_train_; ++t) {
            top.clear();
            const double* row = dis_.data() + t * n_basic_ * dim_;
            for (std::size_t b = 0; b < n_basic_; ++b) {
                const double* pair = row + b * dim_;
                double s = 0.0;
                for (std::size_t f = 0; f < dim_; ++f) s += w[f] * pair[f];
                const double sim = cfg_.similarity == similarity_kind::euclidean
                                       ? 1.0 / std::sqrt(s + similarity_delta)
                                       : 1.0 / (s + similarity_delta);
                const analogy cand{b, sim};
                if (top.size() < cfg_.k_analogies) {
                    top.push_back(cand);
                } else if (detail::better(cand, top.back())) {
                    top.back() = cand;
                } else {
                    continue;
                }
                for (std::size_t j = top.size() - 1; j > 0; --j) {
                    if (detail::better(top[j], top[j - 1])) std::swap(top[j], top[j - 1]);
                    else break;
                }
            }
            preds[t] = solve(top, basic_efforts_, cfg_.solution);
        }
        return mean_mre(train_efforts_, preds);
    }

    // brightness; higher is better
    double operator()(const weight_vector& w) const {
        return 1.0 / (train_mmre(w) + fitness_epsilon);
    }

private:
    std::size_t n_basic_, n_train_, dim_;
    std::vector<double> dis_;  // [train][basic][feature]
    std::vector<double> basic_efforts_, train_efforts_;
    abe_config cfg_;
};

inline double fitness(const weight_vector& w, const fitness_objective& obj) {
    return obj(w);
}

inline double distance_squared(const weight_vector& a, const weight_vector& b) {
    if (a.size() != b.size())
        throw internal_error("firefly distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double firefly_distance(const firefly& i, const firefly& j) {
    return std::sqrt(distance_squared(i.position, j.position));
}

// One attraction step of firefly i toward brighter firefly j; alpha is the
// current (decayed) randomness scale. Consumes one draw per component from
// i's stream.
inline weight_vector move(const firefly& i, const firefly& j, const fa_config& cfg,
                          double alpha, rng_engine& rng) {
    const double r2 = distance_squared(i.position, j.position);
    const double beta = cfg.beta0 * std::exp(-cfg.gamma * r2);
    weight_vector out(i.position.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double u = uniform_unit(rng);
        const double v = i.position[c] + beta * (j.position[c] - i.position[c]) +
                         alpha * (u - 0.5);
        out[c] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

// Random walk for a firefly with no brighter attractor.
inline weight_vector random_walk(const firefly& i, double alpha, rng_engine& rng) {
    weight_vector out(i.position.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double u = uniform_unit(rng);
        out[c] = std::clamp(i.position[c] + alpha * (u - 0.5), 0.0, 1.0);
    }
    return out;
}

struct fa_result {
    weight_vector best_position;
    double best_brightness = 0.0;
    // global best brightness after each iteration; trace[0] is the best
    // initial firefly, so the length is iters + 1
    std::vector<double> trace;
};

// Run the optimizer. `seeded_positions` occupy the first population slots
// verbatim (the experiment injects the all-ones baseline weights this way);
// remaining fireflies initialize uniformly from their own substreams.
template <typename Objective>
fa_result optimize(const Objective& obj, std::size_t dim, const fa_config& cfg,
                   const std::vector<weight_vector>& seeded_positions = {}) {
    if (cfg.n_pop < 1) throw config_error("firefly population must be >= 1");
    if (dim < 1) throw internal_error("optimize: dimension must be >= 1");
    if (!(cfg.beta0 > 0.0)) throw config_error("beta0 must be > 0");
    if (!(cfg.gamma > 0.0)) throw config_error("gamma must be > 0");
    if (!(cfg.alpha >= 0.0)) throw config_error("alpha must be >= 0");
    if (seeded_positions.size() > cfg.n_pop)
        throw config_error("more seeded positions than population slots");

    std::vector<rng_engine> streams;
    streams.reserve(cfg.n_pop);
    for (std::size_t i = 0; i < cfg.n_pop; ++i)
        streams.emplace_back(derive_seed(cfg.seed, i));

    std::vector<firefly> pop(cfg.n_pop);
    for (std::size_t i = 0; i < cfg.n_pop; ++i) {
        if (i < seeded_positions.size()) {
            if (seeded_positions[i].size() != dim)
                throw config_error("seeded position has wrong dimension");
            validate_weights(seeded_positions[i]);
            pop[i].position = seeded_positions[i];
        } else {
            pop[i].position.resize(dim);
            for (std::size_t c = 0; c < dim; ++c)
                pop[i].position[c] = uniform_unit(streams[i]);
        }
        pop[i].brightness = obj(pop[i].position);
    }

    std::size_t gb = 0;
    for (std::size_t i = 1; i < cfg.n_pop; ++i)
        if (pop[i].brightness > pop[gb].brightness) gb = i;

    fa_result res;
    res.best_position = pop[gb].position;
    res.best_brightness = pop[gb].brightness;
    res.trace.reserve(cfg.iters + 1);
    res.trace.push_back(res.best_brightness);

    double alpha = cfg.alpha;
    for (std::size_t t = 0; t < cfg.iters; ++t) {
        for (std::size_t i = 0; i < cfg.n_pop; ++i) {
            bool moved = false;
            for (std::size_t j = 0; j < cfg.n_pop; ++j) {
                if (pop[j].brightness > pop[i].brightness) {
                    moved = true;
                    pop[i].position = move(pop[i], pop[j], cfg, alpha, streams[i]);
                    pop[i].brightness = obj(pop[i].position);
                    if (pop[i].brightness > res.best_brightness) {
                        res.best_brightness = pop[i].brightness;
                        res.best_position = pop[i].position;
                    }
                }
            }
            if (!moved) {
                pop[i].position = random_walk(pop[i], alpha, streams[i]);
                pop[i].brightness = obj(pop[i].position);
                if (pop[i].brightness > res.best_brightness) {
                    res.best_brightness = pop[i].brightness;
                    res.best_position = pop[i].position;
                }
            }
        }
        alpha *= cfg.alpha_decay;
        res.trace.push_back(res.best_brightness);
    }
    return res;
}

}  // namespace faabe
