#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faabe/errors.hpp"
#include "faabe/experiment.hpp"

// Rendering and persistence. All numeric output flows from two places:
// full-precision values go into JSON (shortest round-trip form, courtesy of
// the JSON library), and human tables show the same values through
// format_sig4(). Nothing time-dependent is ever written to JSON, so repeated
// runs with one seed produce byte-identical files; wall times go to a
// separate timings.csv sidecar.
//
// Result tree, one directory per (dataset, seed):
//
//   <out>/<dataset>/<seed>/metrics.json     both method rows + split + selection
//   <out>/<dataset>/<seed>/weights.json     baseline and optimized weights
//   <out>/<dataset>/<seed>/trace.csv        FAABE convergence trace
//   <out>/<dataset>/<seed>/config.resolved  the fully-resolved run config
//   <out>/summary.{txt,json,csv}            per-dataset medians
//   <out>/timings.csv                       wall times (informational)

namespace faabe {

using ordered_json = nlohmann::ordered_json;

// 4 significant figures, the table display precision.
inline std::string format_sig4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
}

inline ordered_json metrics_to_json(const metrics_report& m) {
    return ordered_json{{"mmre", m.mmre},
                        {"mae", m.mae},
                        {"mse", m.mse},
                        {"rmse", m.rmse},
                        {"n", m.n}};
}

inline ordered_json selection_to_json(const selection_result& sel) {
    ordered_json dropped = ordered_json::array();
    for (const auto& [name, corr] : sel.dropped) {
        ordered_json e{{"name", name}};
        if (corr) e["correlation"] = *corr;
        else e["correlation"] = nullptr;
        dropped.push_back(e);
    }
    return ordered_json{{"threshold", sel.threshold},
                        {"kept", sel.kept},
                        {"dropped", dropped}};
}

inline ordered_json split_to_json(const split& sp) {
    return ordered_json{{"seed", sp.seed},
                        {"basic", sp.basic},
                        {"train", sp.train},
                        {"test", sp.test}};
}

inline ordered_json describe_to_json(const dataset& d) {
    const describe_summary s = describe(d);
    return ordered_json{{"projects", s.projects},
                        {"features", s.features},
                        {"effort_min", s.effort_min},
                        {"effort_max", s.effort_max},
                        {"effort_median", s.effort_median}};
}

inline ordered_json run_to_json(const run_artifacts& art) {
    ordered_json j{{"method", art.row.method},
                   {"metrics", metrics_to_json(art.row.metrics)},
                   {"predictions", art.predictions},
                   {"train_fitness", art.train_fitness}};
    return j;
}

// Aligned Table-2-style text: one line per row, dataset named once per
// group, the better value of each metric within a group marked with '*'.
inline std::string render_table(const std::vector<comparison_row>& rows) {
    if (rows.empty()) throw internal_error("render_table: no rows");

    // group rows by dataset, keeping first-appearance order
    std::vector<std::pair<std::string, std::vector<const comparison_row*>>> groups;
    for (const auto& r : rows) {
        if (groups.empty() || groups.back().first != r.dataset) {
            bool found = false;
            for (auto& g : groups)
                if (g.first == r.dataset) {
                    g.second.push_back(&r);
                    found = true;
                }
            if (!found) groups.push_back({r.dataset, {&r}});
        } else {
            groups.back().second.push_back(&r);
        }
    }

    auto metric = [](const comparison_row& r, int m) {
        switch (m) {
            case 0: return r.metrics.mmre;
            case 1: return r.metrics.mae;
            case 2: return r.metrics.mse;
            default: return r.metrics.rmse;
        }
    };

    std::vector<std::vector<std::string>> cells;
    for (const auto& [name, grp] : groups) {
        // lowest value per metric within the group gets the mark
        double best[4];
        for (int m = 0; m < 4; ++m) {
            best[m] = metric(*grp[0], m);
            for (const auto* r : grp) best[m] = std::min(best[m], metric(*r, m));
        }
        bool first = true;
        for (const auto* r : grp) {
            std::vector<std::string> row;
            row.push_back(first ? name : "");
            row.push_back(r->method);
            for (int m = 0; m < 4; ++m) {
                std::string cell = format_sig4(metric(*r, m));
                if (grp.size() > 1 && metric(*r, m) == best[m]) cell += '*';
                row.push_back(cell);
            }
            cells.push_back(std::move(row));
            first = false;
        }
    }

    const char* headers[6] = {"Dataset", "Method", "MMRE", "MAE", "MSE", "RMSE"};
    std::size_t width[6];
    for (int c = 0; c < 6; ++c) {
        width[c] = std::string(headers[c]).size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (int c = 0; c < 6; ++c) {
            out << row[c];
            if (c < 5) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    };
    emit({headers[0], headers[1], headers[2], headers[3], headers[4], headers[5]});
    for (const auto& row : cells) emit(row);
    return out.str();
}

// Fully-resolved config as the documented key=value grammar.
inline std::string render_config(const run_config& cfg) {
    std::ostringstream out;
    out << "dataset = " << cfg.dataset << '\n';
    out << "data_dir = " << cfg.data_dir << '\n';
    out << "seeds = ";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
        out << (i ? "," : "") << cfg.seeds[i];
    out << '\n';
    out << "repeats = " << cfg.repeats << '\n';
    out << "k = " << cfg.abe.k_analogies << '\n';
    out << "similarity = " << to_string(cfg.abe.similarity) << '\n';
    out << "solution = " << to_string(cfg.abe.solution) << '\n';
    out << "corr_threshold = " << detail::format_double(cfg.corr_threshold) << '\n';
    out << "pop = " << cfg.fa.n_pop << '\n';
    out << "iters = " << cfg.fa.iters << '\n';
    out << "beta0 = " << detail::format_double(cfg.fa.beta0) << '\n';
    out << "gamma = " << detail::format_double(cfg.fa.gamma) << '\n';
    out << "alpha = " << detail::format_double(cfg.fa.alpha) << '\n';
    out << "alpha_decay = " << detail::format_double(cfg.fa.alpha_decay) << '\n';
    out << "strict_basic = " << (cfg.strict_basic ? "true" : "false") << '\n';
    return out.str();
}

// Write-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw internal_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string trace_to_csv(const std::vector<double>& trace) {
    std::ostringstream out;
    out << "iteration,best_brightness\n";
    for (std::size_t t = 0; t < trace.size(); ++t)
        out << t << ',' << detail::format_double(trace[t]) << '\n';
    return out.str();
}

// Per-(dataset, seed) artifact directory.
inline void write_run_outputs(const std::filesystem::path& out_dir,
                              const run_config& cfg, const split& sp,
                              const selection_result& sel,
                              const run_artifacts& abe,
                              const run_artifacts& faabe) {
    const std::filesystem::path dir =
        out_dir / abe.row.dataset / std::to_string(abe.row.seed);
    ordered_json metrics{{"dataset", abe.row.dataset},
                         {"seed", abe.row.seed},
                         {"abe", run_to_json(abe)},
                         {"faabe", run_to_json(faabe)},
                         {"selection", selection_to_json(sel)},
                         {"split", split_to_json(sp)}};
    write_file_atomic(dir / "metrics.json", metrics.dump(2) + "\n");

    ordered_json weights{{"dataset", abe.row.dataset},
                         {"seed", abe.row.seed},
                         {"features", sel.kept},
                         {"abe", abe.weights},
                         {"faabe", faabe.weights},
                         {"train_fitness",
                          ordered_json{{"abe", abe.train_fitness},
                                       {"faabe", faabe.train_fitness}}}};
    write_file_atomic(dir / "weights.json", weights.dump(2) + "\n");
    write_file_atomic(dir / "trace.csv", trace_to_csv(faabe.trace));
    write_file_atomic(dir / "config.resolved", render_config(cfg));
}

inline ordered_json suite_to_json(const suite_result& suite) {
    ordered_json datasets = ordered_json::array();
    for (const auto& ds : suite.datasets) {
        ordered_json e{{"name", ds.dataset}};
        if (ds.failed) {
            e["failed"] = true;
            e["error"] = ds.error;
            datasets.push_back(e);
            continue;
        }
        ordered_json seeds = ordered_json::array();
        for (const auto& r : ds.runs) seeds.push_back(r.abe.row.seed);
        e["seeds"] = seeds;
        e["abe"] = metrics_to_json(ds.abe_median);
        e["faabe"] = metrics_to_json(ds.faabe_median);
        datasets.push_back(e);
    }
    return ordered_json{{"datasets", datasets}};
}

inline std::vector<comparison_row> median_rows(const suite_result& suite) {
    std::vector<comparison_row> rows;
    for (const auto& ds : suite.datasets) {
        if (ds.failed) continue;
        rows.push_back({ds.dataset, "ABE", ds.abe_median, 0, 0.0});
        rows.push_back({ds.dataset, "FAABE", ds.faabe_median, 0, 0.0});
    }
    return rows;
}

inline std::string suite_to_csv(const suite_result& suite) {
    std::ostringstream out;
    out << "dataset,method,mmre,mae,mse,rmse\n";
    for (const auto& ds : suite.datasets) {
        if (ds.failed) continue;
        auto line = [&](const char* method, const metrics_report& m) {
            out << ds.dataset << ',' << method << ','
                << detail::format_double(m.mmre) << ','
                << detail::format_double(m.mae) << ','
                << detail::format_double(m.mse) << ','
                << detail::format_double(m.rmse) << '\n';
        };
        line("ABE", ds.abe_median);
        line("FAABE", ds.faabe_median);
    }
    return out.str();
}

inline std::string suite_timings_csv(const suite_result& suite) {
    std::ostringstream out;
    out << "dataset,method,seed,wall_time_seconds\n";
    for (const auto& ds : suite.datasets) {
        if (ds.failed) continue;
        for (const auto& run : ds.runs) {
            for (const auto* r : {&run.abe, &run.faabe}) {
                out << ds.dataset << ',' << r->row.method << ',' << r->row.seed
                    << ',' << detail::format_double(r->row.wall_time) << '\n';
            }
        }
    }
    return out.str();
}

// Persist the full result tree for a finished suite. `cfgs` must be the
// resolved configs the suite ran with, in the same order.
inline void write_suite_outputs(const suite_result& suite,
                                const std::vector<run_config>& cfgs,
                                const std::filesystem::path& out_dir) {
    if (cfgs.size() != suite.datasets.size())
        throw internal_error("write_suite_outputs: config/result count mismatch");
    for (std::size_t i = 0; i < suite.datasets.size(); ++i) {
        const auto& ds = suite.datasets[i];
        if (ds.failed) continue;
        for (const auto& run : ds.runs)
            write_run_outputs(out_dir, cfgs[i], run.sp, run.selection, run.abe,
                              run.faabe);
    }
    const auto rows = median_rows(suite);
    if (!rows.empty())
        write_file_atomic(out_dir / "summary.txt", render_table(rows));
    write_file_atomic(out_dir / "summary.json", suite_to_json(suite).dump(2) + "\n");
    write_file_atomic(out_dir / "summary.csv", suite_to_csv(suite));
    write_file_atomic(out_dir / "timings.csv", suite_timings_csv(suite));
}

}  // namespace faabe
