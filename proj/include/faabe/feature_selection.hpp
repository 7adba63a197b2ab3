#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faabe/dataset.hpp"
#include "faabe/errors.hpp"

// Correlation-based feature selection: keep numeric/ordinal features whose
// |Pearson r| against effort meets the threshold (default 0.5). Nominal
// features bypass the filter entirely — Pearson is undefined on unordered
// categories, and dropping them would silently change the distance
// semantics. If nothing survives, the single best-|r| feature is kept so the
// similarity space is never empty.

namespace faabe {

// Sample Pearson correlation; nullopt when either series is constant.
inline std::optional<double> pearson(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    if (x.size() != y.size()) throw internal_error("pearson: length mismatch");
    if (x.size() < 2) throw internal_error("pearson: need at least 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

struct selection_result {
    std::vector<std::string> kept;
    std::vector<std::size_t> kept_indices;  // schema positions of `kept`
    std::vector<std::pair<std::string, std::optional<double>>> dropped;
    // correlation per schema feature; nullopt = nominal or zero variance
    std::vector<std::optional<double>> correlations;
    double threshold = 0.5;
};

// Select over the given rows only (the pipeline passes the non-test rows so
// held-out data never influences the kept set). Rows default to the whole
// dataset when empty.
inline selection_result select_features(const dataset& d, double threshold,
                                        std::vector<std::size_t> rows = {}) {
    if (threshold < 0.0 || threshold > 1.0)
        throw config_error("correlation threshold must be in [0,1]");
    if (rows.empty()) {
        rows.resize(d.projects.size());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    }
    std::vector<double> effort;
    effort.reserve(rows.size());
    for (const std::size_t r : rows) effort.push_back(d.projects[r].effort);

    selection_result res;
    res.threshold = threshold;
    res.correlations.resize(d.schema.k());
    for (std::size_t f = 0; f < d.schema.k(); ++f) {
        const auto& def = d.schema.features[f];
        if (def.kind == feature_kind::nominal) {
            res.kept.push_back(def.name);
            res.kept_indices.push_back(f);
            continue;
        }
        std::vector<double> col;
        col.reserve(rows.size());
        for (const std::size_t r : rows)
            col.push_back(std::get<double>(d.projects[r].values[f]));
        const auto r = pearson(col, effort);
        res.correlations[f] = r;
        if (r && std::abs(*r) >= threshold) {
            res.kept.push_back(def.name);
            res.kept_indices.push_back(f);
        } else {
            res.dropped.emplace_back(def.name, r);
        }
    }

    if (res.kept.empty()) {
        // fallback: keep the single most-correlated feature (ties -> lower
        // schema index); if every correlation is undefined, keep feature 0.
        std::size_t best = 0;
        double best_abs = -1.0;
        for (std::size_t f = 0; f < d.schema.k(); ++f) {
            if (res.correlations[f] && std::abs(*res.correlations[f]) > best_abs) {
                best = f;
                best_abs = std::abs(*res.correlations[f]);
            }
        }
        res.kept.push_back(d.schema.features[best].name);
        res.kept_indices.push_back(best);
        std::erase_if(res.dropped, [&](const auto& pr) {
            return pr.first == d.schema.features[best].name;
        });
    }
    return res;
}

}  // namespace faabe
