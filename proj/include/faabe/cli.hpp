#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faabe/errors.hpp"
#include "faabe/experiment.hpp"
#include "faabe/report.hpp"

// Command-line front end:
//
//   faabe run      --dataset <name|path> [flags]   one dataset, seed(s)
//   faabe suite    [--config <file>] [flags]       many datasets, full table
//   faabe describe --dataset <name|path|all>       Table-1-style statistics
//   faabe selftest                                 embedded example checks
//
// Flag layering for suite: built-in defaults, then the config file, then
// explicit command-line flags. Exit codes: 0 ok, 1 configuration error,
// 2 data error, 3 internal error.

namespace faabe::cli {

inline const std::vector<std::string> canonical_datasets = {
    "cocomo81", "desharnais", "china", "albrecht", "kemerer", "maxwell"};

namespace detail {

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("bad " + what + ": '" + s + "'");
    }
}

inline double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("bad " + what + ": '" + s + "'");
    }
}

inline bool parse_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw config_error("bad " + what + ": '" + s + "' (want true/false)");
}

inline std::vector<std::string> parse_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const auto b = item.find_last_not_of(" \t");
        out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

inline std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
    std::vector<std::uint64_t> seeds;
    for (const auto& tok : parse_list(s)) seeds.push_back(parse_u64(tok, "seed"));
    if (seeds.empty()) throw config_error("empty seed list");
    return seeds;
}

inline similarity_kind parse_similarity(const std::string& s) {
    if (s == "euclidean") return similarity_kind::euclidean;
    if (s == "manhattan") return similarity_kind::manhattan;
    throw config_error("unknown similarity '" + s + "' (euclidean|manhattan)");
}

inline solution_kind parse_solution(const std::string& s) {
    if (s == "closest") return solution_kind::closest_analogy;
    if (s == "mean") return solution_kind::mean;
    if (s == "median") return solution_kind::median;
    if (s == "iwm") return solution_kind::inverse_weighted_mean;
    throw config_error("unknown solution '" + s + "' (closest|mean|median|iwm)");
}

}  // namespace detail

inline std::vector<std::string> parse_dataset_list(const std::string& val) {
    auto list = detail::parse_list(val);
    if (list.size() == 1 && list[0] == "all") return canonical_datasets;
    if (list.empty()) throw config_error("empty dataset list");
    return list;
}

// The documented suite config grammar: `key = value` lines, '#' comments.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    static const std::set<std::string> known = {
        "datasets",       "seeds",  "repeats", "k",           "similarity",
        "solution",       "corr_threshold",    "pop",         "iters",
        "gamma",          "alpha",  "beta0",   "alpha_decay", "strict_basic",
        "data_dir",       "output_dir",        "format",      "jobs",
        "quiet"};
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    auto strip = [](std::string s) {
        const auto x = s.find_first_not_of(" \t\r");
        if (x == std::string::npos) return std::string();
        const auto y = s.find_last_not_of(" \t\r");
        return s.substr(x, y - x + 1);
    };
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ": config line without '=': " + t);
        const std::string key = strip(t.substr(0, eq));
        const std::string val = strip(t.substr(eq + 1));
        if (!known.count(key))
            throw config_error(path + ": unknown config key '" + key + "'");
        out[key] = val;
    }
    return out;
}

// Every tunable plus its CLI option pointer, so the config-file layer can
// tell which flags the user set explicitly (those win).
struct flag_set {
    std::string dataset;
    std::string config_path;
    std::string data_dir = "data";
    std::string output_dir = "results";
    std::string format = "text";
    bool quiet = false;
    bool strict_basic = false;
    std::uint64_t seed = 1;
    std::string seeds;
    std::size_t repeats = 0;
    std::size_t k = 3;
    std::string similarity = "euclidean";
    std::string solution = "iwm";
    double corr_threshold = 0.5;
    std::size_t pop = 20;
    std::size_t iters = 50;
    double gamma = 1.0;
    double alpha = 0.2;
    double beta0 = 1.0;
    double alpha_decay = 0.97;
    std::size_t jobs = 1;

    std::map<std::string, CLI::Option*> opts;  // config key -> CLI option

    bool given(const std::string& key) const {
        const auto it = opts.find(key);
        return it != opts.end() && it->second->count() > 0;
    }
};

inline void add_common_flags(CLI::App* cmd, flag_set& f, bool with_jobs) {
    auto& o = f.opts;
    o["data_dir"] = cmd->add_option("--data-dir", f.data_dir,
                                    "Directory holding <name>.csv and <name>.manifest")
                        ->capture_default_str();
    o["output_dir"] = cmd->add_option("--output-dir", f.output_dir,
                                      "Directory for the results tree")
                          ->capture_default_str();
    o["format"] = cmd->add_option("--format", f.format,
                                  "Stdout rendering: text, json, or csv")
                      ->capture_default_str();
    o["quiet"] = cmd->add_flag("--quiet", f.quiet, "Suppress progress lines on stderr");
    o["seed"] = cmd->add_option("--seed", f.seed, "Single split/optimizer seed")
                    ->capture_default_str();
    o["seeds"] = cmd->add_option("--seeds", f.seeds, "Comma-separated seed list");
    o["repeats"] = cmd->add_option("--repeats", f.repeats,
                                   "Number of repeats; runs seeds 1..R");
    o["seeds"]->excludes(o["seed"]);
    o["repeats"]->excludes(o["seed"]);
    o["repeats"]->excludes(o["seeds"]);
    o["k"] = cmd->add_option("--k", f.k, "Analogies retrieved per estimate")
                 ->capture_default_str();
    o["similarity"] = cmd->add_option("--similarity", f.similarity,
                                      "Similarity kind: euclidean or manhattan")
                          ->capture_default_str();
    o["solution"] = cmd->add_option("--solution", f.solution,
                                    "Solution function: closest, mean, median, or iwm")
                        ->capture_default_str();
    o["corr_threshold"] = cmd->add_option("--corr-threshold", f.corr_threshold,
                                          "Pearson |r| threshold for feature selection")
                              ->capture_default_str();
    o["pop"] = cmd->add_option("--pop", f.pop, "Firefly population size N")
                   ->capture_default_str();
    o["iters"] = cmd->add_option("--iters", f.iters, "Firefly iterations T")
                     ->capture_default_str();
    o["gamma"] = cmd->add_option("--gamma", f.gamma, "Light absorption coefficient")
                     ->capture_default_str();
    o["alpha"] = cmd->add_option("--alpha", f.alpha, "Randomness scale")
                     ->capture_default_str();
    o["beta0"] = cmd->add_option("--beta0", f.beta0, "Attractiveness at distance zero")
                     ->capture_default_str();
    o["alpha_decay"] = cmd->add_option("--alpha-decay", f.alpha_decay,
                                       "Per-iteration alpha multiplier")
                           ->capture_default_str();
    o["strict_basic"] = cmd->add_flag("--strict-basic", f.strict_basic,
                                      "Estimate test projects from the basic subset only");
    if (with_jobs)
        o["jobs"] = cmd->add_option("--jobs", f.jobs, "Datasets run concurrently")
                        ->capture_default_str();
}

// Overlay config-file values under any explicitly-given CLI flags. Returns
// the dataset list named by the file, if any.
inline std::vector<std::string> apply_config_file(
    flag_set& f, const std::map<std::string, std::string>& kv) {
    std::vector<std::string> datasets;
    const bool seeding_given = f.given("seed") || f.given("seeds") || f.given("repeats");
    for (const auto& [key, val] : kv) {
        if (key == "datasets") {
            datasets = parse_dataset_list(val);
        } else if (key == "seeds") {
            if (!seeding_given) {
                f.seeds = val;
                f.repeats = 0;
            }
        } else if (key == "repeats") {
            // an explicit seed list (file or CLI) wins over a repeat count
            if (!seeding_given && f.seeds.empty())
                f.repeats = detail::parse_u64(val, "repeats");
        } else if (f.given(key)) {
            continue;
        } else if (key == "k") {
            f.k = detail::parse_u64(val, "k");
        } else if (key == "similarity") {
            f.similarity = val;
        } else if (key == "solution") {
            f.solution = val;
        } else if (key == "corr_threshold") {
            f.corr_threshold = detail::parse_real(val, "corr_threshold");
        } else if (key == "pop") {
            f.pop = detail::parse_u64(val, "pop");
        } else if (key == "iters") {
            f.iters = detail::parse_u64(val, "iters");
        } else if (key == "gamma") {
            f.gamma = detail::parse_real(val, "gamma");
        } else if (key == "alpha") {
            f.alpha = detail::parse_real(val, "alpha");
        } else if (key == "beta0") {
            f.beta0 = detail::parse_real(val, "beta0");
        } else if (key == "alpha_decay") {
            f.alpha_decay = detail::parse_real(val, "alpha_decay");
        } else if (key == "strict_basic") {
            f.strict_basic = detail::parse_bool(val, "strict_basic");
        } else if (key == "data_dir") {
            f.data_dir = val;
        } else if (key == "output_dir") {
            f.output_dir = val;
        } else if (key == "format") {
            f.format = val;
        } else if (key == "jobs") {
            f.jobs = detail::parse_u64(val, "jobs");
        } else if (key == "quiet") {
            f.quiet = detail::parse_bool(val, "quiet");
        }
    }
    return datasets;
}

inline run_config to_run_config(const flag_set& f, const std::string& dataset) {
    run_config cfg;
    cfg.dataset = dataset;
    cfg.data_dir = f.data_dir;
    if (f.k < 1) throw config_error("k must be >= 1");
    cfg.abe.k_analogies = f.k;
    cfg.abe.similarity = detail::parse_similarity(f.similarity);
    cfg.abe.solution = detail::parse_solution(f.solution);
    if (f.corr_threshold < 0.0 || f.corr_threshold > 1.0)
        throw config_error("corr-threshold must be in [0,1]");
    cfg.corr_threshold = f.corr_threshold;
    if (f.pop < 1) throw config_error("pop must be >= 1");
    cfg.fa.n_pop = f.pop;
    cfg.fa.iters = f.iters;
    if (!(f.gamma > 0.0)) throw config_error("gamma must be > 0");
    if (!(f.beta0 > 0.0)) throw config_error("beta0 must be > 0");
    if (!(f.alpha >= 0.0)) throw config_error("alpha must be >= 0");
    if (!(f.alpha_decay > 0.0 && f.alpha_decay <= 1.0))
        throw config_error("alpha-decay must be in (0,1]");
    cfg.fa.gamma = f.gamma;
    cfg.fa.alpha = f.alpha;
    cfg.fa.beta0 = f.beta0;
    cfg.fa.alpha_decay = f.alpha_decay;
    cfg.strict_basic = f.strict_basic;

    if (!f.seeds.empty()) {
        cfg.seeds = detail::parse_seed_list(f.seeds);
        cfg.repeats = cfg.seeds.size();
    } else if (f.repeats > 0) {
        cfg.repeats = f.repeats;
    } else {
        cfg.seeds = {f.seed};
        cfg.repeats = 1;
    }
    resolve_seeds(cfg);
    return cfg;
}

inline void check_format(const std::string& format) {
    if (format != "text" && format != "json" && format != "csv")
        throw config_error("unknown format '" + format + "' (text|json|csv)");
}

// Interleaved per-seed rows (ABE, FAABE) for the text table.
inline std::vector<comparison_row> seed_rows(const dataset_result& ds) {
    std::vector<comparison_row> rows;
    for (const auto& run : ds.runs) {
        rows.push_back(run.abe.row);
        rows.push_back(run.faabe.row);
    }
    return rows;
}

inline void print_suite(const suite_result& suite, const std::string& format,
                        std::ostream& out) {
    if (format == "json") {
        out << suite_to_json(suite).dump(2) << '\n';
    } else if (format == "csv") {
        out << suite_to_csv(suite);
    } else {
        const auto rows = median_rows(suite);
        if (!rows.empty()) out << render_table(rows);
        for (const auto& ds : suite.datasets)
            if (ds.failed)
                out << ds.dataset << "  FAILED: " << ds.error << '\n';
    }
}

inline int suite_exit_code(const suite_result& suite) {
    int worst = exit_code::ok;
    for (const auto& ds : suite.datasets)
        if (ds.failed) worst = std::max(worst, ds.error_code);
    return worst;
}

inline int cmd_run(const flag_set& f) {
    check_format(f.format);
    const run_config cfg = to_run_config(f, f.dataset);
    if (!f.quiet)
        std::cerr << "[faabe] running " << cfg.dataset << " ("
                  << cfg.seeds.size() << " seed" << (cfg.seeds.size() > 1 ? "s" : "")
                  << ")\n";
    const suite_result suite = run_suite({cfg}, 1);
    if (suite.datasets[0].failed) {
        std::cerr << "error: " << suite.datasets[0].error << '\n';
        return suite.datasets[0].error_code;
    }
    write_suite_outputs(suite, {cfg}, f.output_dir);
    const auto& ds = suite.datasets[0];
    if (f.format == "text") {
        std::cout << render_table(seed_rows(ds));
        if (ds.runs.size() > 1) {
            std::cout << "\nMedians over " << ds.runs.size() << " seeds:\n";
            print_suite(suite, "text", std::cout);
        }
    } else {
        print_suite(suite, f.format, std::cout);
    }
    if (!f.quiet)
        std::cerr << "[faabe] results written to " << f.output_dir << "/"
                  << ds.dataset << "/\n";
    return exit_code::ok;
}

inline int cmd_suite(const flag_set& f, const std::vector<std::string>& datasets) {
    check_format(f.format);
    std::vector<run_config> cfgs;
    for (const auto& name : datasets) cfgs.push_back(to_run_config(f, name));
    if (!f.quiet)
        std::cerr << "[faabe] suite over " << cfgs.size() << " dataset(s), "
                  << cfgs.front().seeds.size() << " seed(s), jobs=" << f.jobs << '\n';
    const suite_result suite = run_suite(cfgs, f.jobs);
    write_suite_outputs(suite, cfgs, f.output_dir);
    print_suite(suite, f.format, std::cout);
    if (!f.quiet) {
        for (const auto& ds : suite.datasets)
            if (ds.failed)
                std::cerr << "[faabe] " << ds.dataset << " failed: " << ds.error << '\n';
        std::cerr << "[faabe] results written to " << f.output_dir << "/\n";
    }
    return suite_exit_code(suite);
}

inline int cmd_describe(const flag_set& f) {
    check_format(f.format);
    std::vector<std::string> names = parse_dataset_list(f.dataset);
    ordered_json all = ordered_json::object();
    std::ostringstream text;
    text << "Dataset      Projects  Features  Effort min  Effort max  Effort median\n";
    for (const auto& name : names) {
        run_config probe;
        probe.dataset = name;
        probe.data_dir = f.data_dir;
        const auto paths = resolve_dataset(probe);
        const dataset d = load_csv(paths.csv, paths.manifest);
        const describe_summary s = describe(d);
        all[d.name] = describe_to_json(d);
        char line[160];
        std::snprintf(line, sizeof line, "%-12s %8zu  %8zu  %10.6g  %10.6g  %13.6g\n",
                      d.name.c_str(), s.projects, s.features, s.effort_min,
                      s.effort_max, s.effort_median);
        text << line;
    }
    if (f.format == "json")
        std::cout << all.dump(2) << '\n';
    else
        std::cout << text.str();
    return exit_code::ok;
}

// Embedded spot checks of the worked examples; no data files needed.
inline int cmd_selftest() {
    int failures = 0;
    auto check = [&](const char* what, bool ok) {
        std::cout << (ok ? "PASS  " : "FAIL  ") << what << '\n';
        if (!ok) ++failures;
    };
    auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

    const std::vector<feature_kind> num2{feature_kind::numeric, feature_kind::numeric};
    project a{{1.0, 0.5}, 10.0}, b{{1.0, 0.5}, 20.0};
    check("identical projects, euclidean similarity = 100",
          similarity(a, b, num2, {1.0, 1.0}, similarity_kind::euclidean) == 100.0);
    check("identical projects, manhattan similarity = 10000",
          similarity(a, b, num2, {1.0, 1.0}, similarity_kind::manhattan) == 10000.0);

    const std::vector<feature_kind> num1{feature_kind::numeric};
    project p3{{3.0}, 1.0}, p1{{1.0}, 1.0};
    check("one feature, |3-1|, euclidean = 1/sqrt(2.0001)",
          near(similarity(p3, p1, num1, {1.0}, similarity_kind::euclidean),
               0.7070891041799028, 1e-15));

    const std::vector<analogy> iwm_neigh{{0, 3.0}, {1, 1.0}};
    check("IWM sims [3,1], efforts [100,200] = 125",
          solve(iwm_neigh, {100.0, 200.0}, solution_kind::inverse_weighted_mean) == 125.0);

    const metrics_report m1 = compute_metrics({100.0}, {150.0});
    check("metrics [100] vs [150] = 0.5/50/2500/50",
          m1.mmre == 0.5 && m1.mae == 50.0 && m1.mse == 2500.0 && m1.rmse == 50.0);
    const metrics_report m2 = compute_metrics({10.0, 20.0}, {20.0, 10.0});
    check("metrics [10,20] vs [20,10] = 0.75/10/100/10",
          m2.mmre == 0.75 && m2.mae == 10.0 && m2.mse == 100.0 && m2.rmse == 10.0);

    check("pearson of reversed series = -1",
          near(*pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15));
    check("pearson worked example",
          near(*pearson({1, 2, 3, 4}, {2, 4, 5, 4}), 0.7181848464596078, 1e-13));

    const split sp = make_split(15, 7);
    check("15 projects split 5/5/5",
          sp.test.size() == 5 && sp.basic.size() == 5 && sp.train.size() == 5);

    const auto flat = [](const weight_vector& w) {
        return 1.0 / (std::abs(w[0] - 0.25) + std::abs(w[1] - 0.75) + 1e-9);
    };
    fa_config fa;
    fa.n_pop = 1;
    fa.iters = 0;
    fa.seed = 3;
    const fa_result deg = optimize(flat, 2, fa, {{1.0, 1.0}});
    check("degenerate FA (N=1, T=0) returns the seeded position",
          deg.best_position == weight_vector({1.0, 1.0}));

    fa_config full;
    full.beta0 = 1.0;
    full.gamma = 1e-12;
    full.alpha = 0.0;
    rng_engine rng(1);
    const firefly dim{{0.2, 0.4}, 1.0};
    const firefly bright{{0.8, 0.6}, 2.0};
    const weight_vector moved = move(dim, bright, full, 0.0, rng);
    check("move with alpha=0, gamma~0, beta0=1 lands on the brighter firefly",
          near(moved[0], 0.8, 1e-12) && near(moved[1], 0.6, 1e-12));

    std::cout << (failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: FAILURES\n");
    return failures == 0 ? exit_code::ok : exit_code::internal;
}

// Build the CLI11 application; `out` receives the parsed command state.
struct cli_state {
    flag_set run_flags, suite_flags, describe_flags;
    CLI::App* run_cmd = nullptr;
    CLI::App* suite_cmd = nullptr;
    CLI::App* describe_cmd = nullptr;
    CLI::App* selftest_cmd = nullptr;
};

inline void build_app(CLI::App& app, cli_state& st) {
    app.require_subcommand(1);
    app.fallthrough(false);

    st.run_cmd = app.add_subcommand("run", "Run ABE and FAABE on one dataset");
    st.run_cmd->add_option("--dataset", st.run_flags.dataset,
                           "Dataset name (under --data-dir) or a CSV path")
        ->required();
    add_common_flags(st.run_cmd, st.run_flags, false);

    st.suite_cmd = app.add_subcommand("suite", "Run the full comparison suite");
    st.suite_cmd->add_option("--config", st.suite_flags.config_path,
                             "Config file (key = value lines)");
    st.suite_cmd->add_option("--datasets", st.suite_flags.dataset,
                             "Comma-separated dataset names, or 'all'");
    add_common_flags(st.suite_cmd, st.suite_flags, true);

    st.describe_cmd = app.add_subcommand("describe", "Print dataset statistics");
    st.describe_cmd->add_option("--dataset", st.describe_flags.dataset,
                                "Dataset name, CSV path, or 'all'")
        ->required();
    st.describe_cmd->add_option("--data-dir", st.describe_flags.data_dir,
                                "Directory holding <name>.csv and <name>.manifest")
        ->capture_default_str();
    st.describe_cmd->add_option("--format", st.describe_flags.format,
                                "Stdout rendering: text or json")
        ->capture_default_str();

    st.selftest_cmd = app.add_subcommand("selftest",
                                         "Run the embedded example checks");
}

inline int dispatch(const CLI::App& app, cli_state& st) {
    if (app.got_subcommand(st.run_cmd)) return cmd_run(st.run_flags);
    if (app.got_subcommand(st.suite_cmd)) {
        flag_set& f = st.suite_flags;
        std::vector<std::string> datasets;
        if (!f.dataset.empty()) datasets = parse_dataset_list(f.dataset);
        if (!f.config_path.empty()) {
            const auto kv = parse_config_file(f.config_path);
            auto file_datasets = apply_config_file(f, kv);
            if (datasets.empty()) datasets = std::move(file_datasets);
        }
        if (datasets.empty()) datasets = canonical_datasets;
        // suite default: 10 repeats when nothing chose the seeds
        if (f.seeds.empty() && f.repeats == 0 && !f.given("seed")) f.repeats = 10;
        return cmd_suite(f, datasets);
    }
    if (app.got_subcommand(st.describe_cmd)) return cmd_describe(st.describe_flags);
    if (app.got_subcommand(st.selftest_cmd)) return cmd_selftest();
    throw internal_error("no subcommand dispatched");
}

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"faabe - analogy-based effort estimation with firefly-optimized "
                 "feature weights"};
    cli_state st;
    build_app(app, st);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, returns 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the error message
        return exit_code::config;
    }
    try {
        return dispatch(app, st);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return exit_code::data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

}  // namespace faabe::cli
