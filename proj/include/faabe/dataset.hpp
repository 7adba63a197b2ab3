#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "faabe/errors.hpp"

// Dataset ingestion and normalization. Datasets arrive as a CSV file with a
// header row plus a small manifest file naming the effort column and the
// non-numeric columns:
//
//     effort  = actual
//     nominal = language, hardware
//     ordinal = resource
//
// Columns not listed are numeric. Ordinal columns hold numbers and behave
// numerically everywhere; the kind is kept so reports can name it. Rows with
// missing values are rejected at load (no imputation).

namespace faabe {

enum class feature_kind { numeric, ordinal, nominal };

inline const char* to_string(feature_kind k) {
    switch (k) {
        case feature_kind::numeric: return "numeric";
        case feature_kind::ordinal: return "ordinal";
        case feature_kind::nominal: return "nominal";
    }
    return "?";
}

// Numeric/ordinal values hold a double; nominal values hold their label.
using feature_value = std::variant<double, std::string>;

struct feature_def {
    std::string name;
    feature_kind kind = feature_kind::numeric;
};

struct feature_schema {
    std::vector<feature_def> features;  // independent features, file order
    std::string effort_column;

    std::size_t k() const { return features.size(); }
};

struct project {
    std::vector<feature_value> values;  // aligned to schema order
    double effort = 0.0;                // strictly positive
};

struct dataset {
    std::string name;
    feature_schema schema;
    std::vector<project> projects;
    bool normalized = false;
};

struct manifest_spec {
    std::string effort_column;
    std::set<std::string> nominal;
    std::set<std::string> ordinal;
};

// Median with the midpoint-of-two-middles convention for even counts.
inline double median_midpoint(std::vector<double> v) {
    if (v.empty()) throw internal_error("median of empty sequence");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& tok, const std::string& where) {
    const std::string t = strip(tok);
    if (t.empty()) throw data_error("missing value " + where);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
        throw data_error("non-numeric token '" + t + "' " + where);
    return v;
}

// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace detail

inline manifest_spec parse_manifest_text(const std::string& text,
                                         const std::string& origin) {
    manifest_spec m;
    std::istringstream in(text);
    std::string line;
    auto listed = [](const std::string& v) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream items(v);
        while (std::getline(items, item, ',')) {
            item = detail::strip(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    };
    while (std::getline(in, line)) {
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw data_error(origin + ": manifest line without '=': " + line);
        const std::string key = detail::strip(line.substr(0, eq));
        const std::string val = detail::strip(line.substr(eq + 1));
        if (key == "effort") {
            m.effort_column = val;
        } else if (key == "nominal") {
            for (auto& c : listed(val)) m.nominal.insert(c);
        } else if (key == "ordinal") {
            for (auto& c : listed(val)) m.ordinal.insert(c);
        } else {
            throw data_error(origin + ": unknown manifest key '" + key + "'");
        }
    }
    if (m.effort_column.empty())
        throw data_error(origin + ": manifest does not name an effort column");
    return m;
}

inline manifest_spec parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open manifest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str(), path);
}

// Load a CSV with header against a manifest. Row order is preserved; every
// load error names the offending row and column.
inline dataset load_csv_text(const std::string& text, const manifest_spec& m,
                             const std::string& name) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw data_error(name + ": empty file");
    const auto header = detail::split_csv_line(line);

    dataset d;
    d.name = name;
    std::size_t effort_idx = header.size();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string col = detail::strip(header[i]);
        if (col.empty()) throw data_error(name + ": empty header column");
        if (!seen.insert(col).second)
            throw data_error(name + ": duplicate column '" + col + "'");
        if (col == m.effort_column) {
            effort_idx = i;
            continue;
        }
        feature_kind kind = feature_kind::numeric;
        if (m.nominal.count(col)) kind = feature_kind::nominal;
        else if (m.ordinal.count(col)) kind = feature_kind::ordinal;
        d.schema.features.push_back({col, kind});
    }
    if (effort_idx == header.size())
        throw data_error(name + ": effort column '" + m.effort_column +
                         "' not in CSV header");
    for (const auto& c : m.nominal)
        if (!seen.count(c))
            throw data_error(name + ": manifest names unknown column '" + c + "'");
    for (const auto& c : m.ordinal)
        if (!seen.count(c))
            throw data_error(name + ": manifest names unknown column '" + c + "'");
    d.schema.effort_column = m.effort_column;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::strip(line).empty()) continue;
        const auto toks = detail::split_csv_line(line);
        if (toks.size() != header.size())
            throw data_error(name + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(toks.size()) + " fields, expected " +
                             std::to_string(header.size()));
        project p;
        p.values.reserve(d.schema.k());
        std::size_t f = 0;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const std::string where =
                "at row " + std::to_string(line_no) + ", column '" +
                detail::strip(header[i]) + "'";
            if (i == effort_idx) {
                p.effort = detail::parse_double(toks[i], where);
                continue;
            }
            if (d.schema.features[f].kind == feature_kind::nominal) {
                const std::string v = detail::strip(toks[i]);
                if (v.empty()) throw data_error("missing value " + where);
                p.values.emplace_back(v);
            } else {
                p.values.emplace_back(detail::parse_double(toks[i], where));
            }
            ++f;
        }
        if (!(p.effort > 0.0))
            throw data_error(name + ": non-positive effort at row " +
                             std::to_string(line_no));
        d.projects.push_back(std::move(p));
    }
    if (d.projects.empty()) throw data_error(name + ": no projects");
    return d;
}

inline dataset load_csv(const std::string& csv_path, const manifest_spec& m,
                        std::string name = "") {
    std::ifstream in(csv_path);
    if (!in) throw data_error("cannot open dataset: " + csv_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (name.empty()) {
        name = csv_path;
        const auto slash = name.find_last_of('/');
        if (slash != std::string::npos) name = name.substr(slash + 1);
        const auto dot = name.rfind(".csv");
        if (dot != std::string::npos) name = name.substr(0, dot);
    }
    return load_csv_text(buf.str(), m, name);
}

inline dataset load_csv(const std::string& csv_path,
                        const std::string& manifest_path) {
    return load_csv(csv_path, parse_manifest(manifest_path));
}

// Serialize back to CSV (features in schema order, then the effort column).
// Numbers print in shortest round-trip form, so load(to_csv(d)) == d.
inline std::string to_csv(const dataset& d) {
    std::ostringstream out;
    for (const auto& f : d.schema.features) out << f.name << ',';
    out << d.schema.effort_column << '\n';
    for (const auto& p : d.projects) {
        for (const auto& v : p.values) {
            if (std::holds_alternative<double>(v))
                out << detail::format_double(std::get<double>(v));
            else
                out << std::get<std::string>(v);
            out << ',';
        }
        out << detail::format_double(p.effort) << '\n';
    }
    return out.str();
}

struct describe_summary {
    std::size_t projects = 0;
    std::size_t features = 0;
    double effort_min = 0.0;
    double effort_max = 0.0;
    double effort_median = 0.0;
};

inline describe_summary describe(const dataset& d) {
    describe_summary s;
    s.projects = d.projects.size();
    s.features = d.schema.k();
    std::vector<double> eff;
    eff.reserve(d.projects.size());
    for (const auto& p : d.projects) eff.push_back(p.effort);
    s.effort_min = *std::min_element(eff.begin(), eff.end());
    s.effort_max = *std::max_element(eff.begin(), eff.end());
    s.effort_median = median_midpoint(std::move(eff));
    return s;
}

// Per-feature min/max for min-max scaling; nullopt for nominal columns.
using column_ranges = std::vector<std::optional<std::pair<double, double>>>;

inline column_ranges compute_ranges(const dataset& d,
                                    const std::vector<std::size_t>& rows) {
    if (rows.empty()) throw internal_error("compute_ranges: no rows");
    column_ranges ranges(d.schema.k());
    for (std::size_t f = 0; f < d.schema.k(); ++f) {
        if (d.schema.features[f].kind == feature_kind::nominal) continue;
        double lo = std::get<double>(d.projects[rows[0]].values[f]);
        double hi = lo;
        for (const std::size_t r : rows) {
            const double v = std::get<double>(d.projects[r].values[f]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ranges[f] = std::make_pair(lo, hi);
    }
    return ranges;
}

// Min-max scale every numeric/ordinal column by the given ranges, clamping
// to [0,1] (rows outside the fitted range can occur when ranges come from a
// subset). Constant columns map to 0. Nominals and effort are untouched.
inline dataset normalize_with_ranges(const dataset& d, const column_ranges& ranges) {
    dataset out = d;
    for (auto& p : out.projects) {
        for (std::size_t f = 0; f < out.schema.k(); ++f) {
            if (!ranges[f]) continue;
            const auto [lo, hi] = *ranges[f];
            double& v = std::get<double>(p.values[f]);
            if (hi == lo) {
                v = 0.0;
            } else {
                v = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
            }
        }
    }
    out.normalized = true;
    return out;
}

// Whole-dataset min-max normalization (the ranges come from the dataset
// itself, so no clamping can trigger).
inline dataset normalize(const dataset& d) {
    if (d.normalized) throw data_error(d.name + ": already normalized");
    std::vector<std::size_t> all(d.projects.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return normalize_with_ranges(d, compute_ranges(d, all));
}

}  // namespace faabe
