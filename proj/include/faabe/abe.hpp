#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "faabe/dataset.hpp"
#include "faabe/errors.hpp"

// The analogy engine. A query project is compared against every case-base
// project by weighted similarity, the k most similar are retrieved, and a
// solution function turns their known efforts into one estimate.
//
//   Euclidean similarity   1 / sqrt(sum_i w_i * Dis(a_i, a'_i) + delta)
//   Manhattan similarity   1 /     (sum_i w_i * Dis(a_i, a'_i) + delta)
//
// Dis is |a - a'| for numeric/ordinal features and 0/1 for nominal ones.
// delta = 0.0001 keeps similarities finite for identical projects. Note the
// Euclidean form takes the root of the weighted *first-power* distance sum —
// that is the published definition and it is implemented as printed.

namespace faabe {

inline constexpr double similarity_delta = 1e-4;

enum class similarity_kind { euclidean, manhattan };
enum class solution_kind { closest_analogy, mean, median, inverse_weighted_mean };

inline const char* to_string(similarity_kind k) {
    return k == similarity_kind::euclidean ? "euclidean" : "manhattan";
}

inline const char* to_string(solution_kind k) {
    switch (k) {
        case solution_kind::closest_analogy: return "closest";
        case solution_kind::mean: return "mean";
        case solution_kind::median: return "median";
        case solution_kind::inverse_weighted_mean: return "iwm";
    }
    return "?";
}

// Per-feature weights in [0,1], aligned to the selected-feature schema; this
// vector is what the firefly optimizer searches over.
using weight_vector = std::vector<double>;

inline void validate_weights(const weight_vector& w) {
    for (const double v : w)
        if (!(v >= 0.0 && v <= 1.0))
            throw config_error("weight out of [0,1]: " + std::to_string(v));
}

struct abe_config {
    similarity_kind similarity = similarity_kind::euclidean;
    solution_kind solution = solution_kind::inverse_weighted_mean;
    std::size_t k_analogies = 3;
};

// Distance between two values of one feature.
inline double feature_distance(const feature_value& a, const feature_value& b,
                               feature_kind kind) {
    if (kind == feature_kind::nominal) {
        if (!std::holds_alternative<std::string>(a) ||
            !std::holds_alternative<std::string>(b))
            throw internal_error("feature_distance: value/kind mismatch");
        return std::get<std::string>(a) == std::get<std::string>(b) ? 0.0 : 1.0;
    }
    if (!std::holds_alternative<double>(a) || !std::holds_alternative<double>(b))
        throw internal_error("feature_distance: value/kind mismatch");
    return std::abs(std::get<double>(a) - std::get<double>(b));
}

// Weighted similarity between two projects over the given feature kinds.
inline double similarity(const project& p, const project& q,
                         const std::vector<feature_kind>& kinds,
                         const weight_vector& w, similarity_kind kind) {
    if (p.values.size() != kinds.size() || q.values.size() != kinds.size() ||
        w.size() != kinds.size())
        throw internal_error("similarity: schema mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < kinds.size(); ++i)
        s += w[i] * feature_distance(p.values[i], q.values[i], kinds[i]);
    if (kind == similarity_kind::euclidean) return 1.0 / std::sqrt(s + similarity_delta);
    return 1.0 / (s + similarity_delta);
}

struct analogy {
    std::size_t index = 0;  // position in the case base
    double sim = 0.0;
};

namespace detail {

// Keep a candidate ranking identical to a full sort by (sim desc, index
// asc): later candidates only displace strictly worse entries.
inline bool better(const analogy& a, const analogy& b) {
    return a.sim > b.sim || (a.sim == b.sim && a.index < b.index);
}

}  // namespace detail

// The k most similar case-base projects, sorted by descending similarity,
// ties broken toward the lower case-base index. The query itself is skipped
// if it aliases a case-base element (self-match guard).
inline std::vector<analogy> retrieve_analogies(const project& p,
                                               const std::vector<project>& case_base,
                                               const std::vector<feature_kind>& kinds,
                                               const weight_vector& w,
                                               const abe_config& cfg) {
    if (case_base.empty()) throw internal_error("retrieve_analogies: empty case base");
    if (cfg.k_analogies < 1 || cfg.k_analogies > case_base.size())
        throw config_error("k_analogies (" + std::to_string(cfg.k_analogies) +
                           ") must be in [1, case base size " +
                           std::to_string(case_base.size()) + "]");
    validate_weights(w);
    std::vector<analogy> top;
    top.reserve(cfg.k_analogies);
    for (std::size_t i = 0; i < case_base.size(); ++i) {
        if (&case_base[i] == &p) continue;
        const analogy cand{i, similarity(p, case_base[i], kinds, w, cfg.similarity)};
        if (top.size() < cfg.k_analogies) {
            top.push_back(cand);
        } else if (detail::better(cand, top.back())) {
            top.back() = cand;
        } else {
            continue;
        }
        // bubble the new entry into rank order (k is tiny)
        for (std::size_t j = top.size() - 1; j > 0; --j) {
            if (detail::better(top[j], top[j - 1])) std::swap(top[j], top[j - 1]);
            else break;
        }
    }
    return top;
}

// Aggregate retrieved neighbors into one estimate. `efforts[a.index]` is the
// known effort of neighbor `a`.
inline double solve(const std::vector<analogy>& neighbors,
                    const std::vector<double>& efforts, solution_kind kind) {
    if (neighbors.empty()) throw internal_error("solve: no neighbors");
    switch (kind) {
        case solution_kind::closest_analogy:
            return efforts[neighbors[0].index];
        case solution_kind::mean: {
            double s = 0.0;
            for (const auto& a : neighbors) s += efforts[a.index];
            return s / static_cast<double>(neighbors.size());
        }
        case solution_kind::median: {
            std::vector<double> v;
            v.reserve(neighbors.size());
            for (const auto& a : neighbors) v.push_back(efforts[a.index]);
            return median_midpoint(std::move(v));
        }
        case solution_kind::inverse_weighted_mean: {
            double total = 0.0;
            for (const auto& a : neighbors) total += a.sim;
            double est = 0.0;
            for (const auto& a : neighbors) est += (a.sim / total) * efforts[a.index];
            return est;
        }
    }
    throw internal_error("solve: unknown solution kind");
}

// Full retrieval + solution composition.
inline double estimate(const project& p, const std::vector<project>& case_base,
                       const std::vector<double>& efforts,
                       const std::vector<feature_kind>& kinds,
                       const weight_vector& w, const abe_config& cfg) {
    return solve(retrieve_analogies(p, case_base, kinds, w, cfg), efforts, cfg.solution);
}

}  // namespace faabe
