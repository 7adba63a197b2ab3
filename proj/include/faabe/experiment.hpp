#pragma once

#include <chrono>
#include <cstdint>
#include <cstddef>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "faabe/abe.hpp"
#include "faabe/dataset.hpp"
#include "faabe/errors.hpp"
#include "faabe/evaluation.hpp"
#include "faabe/feature_selection.hpp"
#include "faabe/firefly.hpp"

// Orchestration of the before/after-optimization comparison. For one
// (dataset, seed) the pipeline is:
//
//   split -> min-max ranges from the non-test rows -> normalize (clamped)
//         -> Pearson selection on the non-test rows -> project to kept
//            features -> baseline ABE with all-ones weights
//         -> firefly search of the weight space (train estimated from
//            basic) -> FAABE with the optimized weights
//
// Both methods share the identical split, ranges, and kept features; only
// the weight vector differs. Test estimates draw on the whole non-test
// history (basic + train) unless strict_basic restricts the case base to
// the basic subset. The all-ones vector is injected as firefly 0, so the
// optimized training fitness can never fall below the baseline's.
//
// Computation lives here; persistence of result trees is in report.hpp.

namespace faabe {

struct run_config {
    std::string dataset;         // dataset name (under data_dir) or CSV path
    std::string data_dir = "data";
    abe_config abe;
    fa_config fa;                // fa.seed is overridden by the run seed
    double corr_threshold = 0.5;
    std::size_t repeats = 10;
    std::vector<std::uint64_t> seeds;  // defaults to 1..repeats
    bool strict_basic = false;
};

// Fill defaults and enforce the |seeds| == repeats invariant.
inline void resolve_seeds(run_config& cfg) {
    if (cfg.repeats == 0) throw config_error("repeats must be >= 1");
    if (cfg.seeds.empty()) {
        cfg.seeds.resize(cfg.repeats);
        for (std::size_t i = 0; i < cfg.repeats; ++i) cfg.seeds[i] = i + 1;
    }
    if (cfg.seeds.size() != cfg.repeats)
        throw config_error("seed list length (" + std::to_string(cfg.seeds.size()) +
                           ") does not match repeats (" +
                           std::to_string(cfg.repeats) + ")");
}

struct comparison_row {
    std::string dataset;
    std::string method;  // "ABE" or "FAABE"
    metrics_report metrics;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // seconds; excluded from JSON outputs
};

// Everything one method run leaves behind.
struct run_artifacts {
    comparison_row row;
    std::vector<double> predictions;  // per test project, ascending row index
    weight_vector weights;            // all-ones (ABE) or w* (FAABE)
    std::vector<double> trace;        // FAABE convergence; empty for ABE
    double train_fitness = 0.0;       // brightness of `weights`
};

// Shared preprocessing for one (dataset, seed); building it once per pair is
// what guarantees the pairing invariant.
struct prepared_run {
    split sp;
    selection_result selection;
    std::vector<feature_kind> kinds;  // kinds of the kept features
    std::vector<project> basic_set, train_set, test_set, case_base;
    std::vector<double> basic_efforts, train_efforts, test_efforts, case_efforts;
};

namespace detail {

inline std::vector<std::size_t> merge_sorted(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline project project_row(const faabe::project& p,
                           const std::vector<std::size_t>& kept) {
    project out;
    out.effort = p.effort;
    out.values.reserve(kept.size());
    for (const std::size_t f : kept) out.values.push_back(p.values[f]);
    return out;
}

}  // namespace detail

inline prepared_run prepare_run(const dataset& d, const run_config& cfg,
                                std::uint64_t seed) {
    if (d.normalized)
        throw data_error(d.name + ": pipeline expects a raw (unnormalized) dataset");
    prepared_run prep;
    prep.sp = make_split(d, seed);
    const auto fit_rows = detail::merge_sorted(prep.sp.basic, prep.sp.train);

    const dataset norm = normalize_with_ranges(d, compute_ranges(d, fit_rows));
    prep.selection = select_features(norm, cfg.corr_threshold, fit_rows);

    for (const std::size_t f : prep.selection.kept_indices)
        prep.kinds.push_back(norm.schema.features[f].kind);

    auto fill = [&](const std::vector<std::size_t>& rows,
                    std::vector<project>& set, std::vector<double>& efforts) {
        set.reserve(rows.size());
        efforts.reserve(rows.size());
        for (const std::size_t r : rows) {
            set.push_back(detail::project_row(norm.projects[r],
                                              prep.selection.kept_indices));
            efforts.push_back(norm.projects[r].effort);
        }
    };
    fill(prep.sp.basic, prep.basic_set, prep.basic_efforts);
    fill(prep.sp.train, prep.train_set, prep.train_efforts);
    fill(prep.sp.test, prep.test_set, prep.test_efforts);
    fill(cfg.strict_basic ? prep.sp.basic : fit_rows, prep.case_base,
         prep.case_efforts);
    return prep;
}

inline std::vector<double> estimate_test_set(const prepared_run& prep,
                                             const weight_vector& w,
                                             const abe_config& abe) {
    std::vector<double> preds;
    preds.reserve(prep.test_set.size());
    for (const auto& p : prep.test_set)
        preds.push_back(estimate(p, prep.case_base, prep.case_efforts,
                                 prep.kinds, w, abe));
    return preds;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline run_artifacts baseline_leg(const dataset& d, const run_config& cfg,
                                  const prepared_run& prep,
                                  const fitness_objective& obj,
                                  std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    run_artifacts art;
    art.weights.assign(prep.selection.kept_indices.size(), 1.0);
    art.predictions = estimate_test_set(prep, art.weights, cfg.abe);
    art.train_fitness = obj(art.weights);
    art.row = {d.name, "ABE", compute_metrics(prep.test_efforts, art.predictions),
               seed, 0.0};
    art.row.wall_time = seconds_since(t0);
    return art;
}

inline run_artifacts faabe_leg(const dataset& d, const run_config& cfg,
                               const prepared_run& prep,
                               const fitness_objective& obj,
                               std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    run_artifacts art;
    fa_config fa = cfg.fa;
    fa.seed = seed;
    const weight_vector ones(prep.selection.kept_indices.size(), 1.0);
    fa_result r = optimize(obj, obj.dim(), fa, {ones});
    art.weights = std::move(r.best_position);
    art.trace = std::move(r.trace);
    art.train_fitness = r.best_brightness;
    art.predictions = estimate_test_set(prep, art.weights, cfg.abe);
    art.row = {d.name, "FAABE", compute_metrics(prep.test_efforts, art.predictions),
               seed, 0.0};
    art.row.wall_time = seconds_since(t0);
    return art;
}

}  // namespace detail

// One paired run; ABE and FAABE share the prepared pipeline by construction.
struct run_pair_result {
    split sp;
    selection_result selection;
    run_artifacts abe;
    run_artifacts faabe;
};

inline run_pair_result run_pair(const dataset& d, const run_config& cfg,
                                std::uint64_t seed) {
    prepared_run prep = prepare_run(d, cfg, seed);
    const fitness_objective obj(prep.basic_set, prep.basic_efforts, prep.train_set,
                                prep.train_efforts, prep.kinds, cfg.abe);
    run_pair_result res;
    res.abe = detail::baseline_leg(d, cfg, prep, obj, seed);
    res.faabe = detail::faabe_leg(d, cfg, prep, obj, seed);
    res.sp = std::move(prep.sp);
    res.selection = std::move(prep.selection);
    return res;
}

// Standalone single-method entry points (each rebuilds the deterministic
// preparation, so a pair of separate calls still matches run_pair exactly).
inline run_artifacts run_baseline_abe(const dataset& d, const run_config& cfg,
                                      std::uint64_t seed) {
    const prepared_run prep = prepare_run(d, cfg, seed);
    const fitness_objective obj(prep.basic_set, prep.basic_efforts, prep.train_set,
                                prep.train_efforts, prep.kinds, cfg.abe);
    return detail::baseline_leg(d, cfg, prep, obj, seed);
}

inline run_artifacts run_faabe(const dataset& d, const run_config& cfg,
                               std::uint64_t seed) {
    const prepared_run prep = prepare_run(d, cfg, seed);
    const fitness_objective obj(prep.basic_set, prep.basic_efforts, prep.train_set,
                                prep.train_efforts, prep.kinds, cfg.abe);
    return detail::faabe_leg(d, cfg, prep, obj, seed);
}

// Resolve a run_config's dataset field to CSV + manifest paths.
struct dataset_paths {
    std::string csv;
    std::string manifest;
};

inline dataset_paths resolve_dataset(const run_config& cfg) {
    dataset_paths p;
    const std::string& ds = cfg.dataset;
    if (ds.empty()) throw config_error("no dataset given");
    if (ds.size() > 4 && ds.substr(ds.size() - 4) == ".csv") {
        p.csv = ds;
        p.manifest = ds.substr(0, ds.size() - 4) + ".manifest";
    } else {
        p.csv = cfg.data_dir + "/" + ds + ".csv";
        p.manifest = cfg.data_dir + "/" + ds + ".manifest";
    }
    return p;
}

struct dataset_result {
    std::string dataset;
    std::vector<run_pair_result> runs;        // one per seed, seed order
    metrics_report abe_median, faabe_median;  // per-metric medians over seeds
    bool failed = false;
    std::string error;
    int error_code = exit_code::ok;  // exit_code class of the failure
};

namespace detail {

inline void mark_failed(dataset_result& ds, const std::string& name,
                        const std::exception& e) {
    ds.dataset = name;
    ds.failed = true;
    ds.error = e.what();
    if (dynamic_cast<const config_error*>(&e))
        ds.error_code = exit_code::config;
    else if (dynamic_cast<const data_error*>(&e))
        ds.error_code = exit_code::data;
    else
        ds.error_code = exit_code::internal;
}

}  // namespace detail

namespace detail {

template <typename Pick>
metrics_report median_metrics(const std::vector<run_pair_result>& runs, Pick pick) {
    std::vector<double> mmre, mae, mse, rmse;
    for (const auto& r : runs) {
        const metrics_report& m = pick(r).row.metrics;
        mmre.push_back(m.mmre);
        mae.push_back(m.mae);
        mse.push_back(m.mse);
        rmse.push_back(m.rmse);
    }
    metrics_report m;
    m.mmre = median_midpoint(mmre);
    m.mae = median_midpoint(mae);
    m.mse = median_midpoint(mse);
    m.rmse = median_midpoint(rmse);
    m.n = runs.size();
    return m;
}

}  // namespace detail

inline dataset_result run_dataset(run_config cfg) {
    resolve_seeds(cfg);
    dataset_result res;
    res.dataset = cfg.dataset;
    const auto paths = resolve_dataset(cfg);
    const dataset d = load_csv(paths.csv, paths.manifest);
    res.dataset = d.name;
    for (const std::uint64_t seed : cfg.seeds)
        res.runs.push_back(run_pair(d, cfg, seed));
    res.abe_median = detail::median_metrics(
        res.runs, [](const run_pair_result& r) -> const run_artifacts& { return r.abe; });
    res.faabe_median = detail::median_metrics(
        res.runs, [](const run_pair_result& r) -> const run_artifacts& { return r.faabe; });
    return res;
}

struct suite_result {
    std::vector<dataset_result> datasets;  // config order
};

// Run every config; datasets are independent, so jobs > 1 runs them on a
// thread pool of futures. A failing dataset is reported in its slot and the
// rest of the suite continues.
inline suite_result run_suite(const std::vector<run_config>& cfgs,
                              std::size_t jobs = 1) {
    suite_result suite;
    suite.datasets.resize(cfgs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            try {
                suite.datasets[i] = run_dataset(cfgs[i]);
            } catch (const std::exception& e) {
                detail::mark_failed(suite.datasets[i], cfgs[i].dataset, e);
            }
        }
        return suite;
    }
    std::vector<std::future<dataset_result>> futs(cfgs.size());
    std::size_t next = 0;
    // bounded launch: at most `jobs` futures in flight
    std::vector<std::size_t> inflight;
    while (next < cfgs.size() || !inflight.empty()) {
        while (next < cfgs.size() && inflight.size() < jobs) {
            futs[next] = std::async(std::launch::async, run_dataset, cfgs[next]);
            inflight.push_back(next);
            ++next;
        }
        const std::size_t idx = inflight.front();
        inflight.erase(inflight.begin());
        try {
            suite.datasets[idx] = futs[idx].get();
        } catch (const std::exception& e) {
            detail::mark_failed(suite.datasets[idx], cfgs[idx].dataset, e);
        }
    }
    return suite;
}

}  // namespace faabe
