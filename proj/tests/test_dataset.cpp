#include <catch2/catch_amalgamated.hpp>

#include <faabe/dataset.hpp>

#include <string>
#include <variant>

using namespace faabe;

namespace {

const std::string data_dir = FAABE_TEST_DATA_DIR;

dataset load_named(const std::string& name) {
    return load_csv(data_dir + "/" + name + ".csv",
                    data_dir + "/" + name + ".manifest");
}

const char* tiny_manifest = "effort = effort\nnominal = type\n";

const char* tiny_csv =
    "size,team,type,effort\n"
    "10,2,web,100\n"
    "20,4,batch,250\n"
    "30,6,web,500\n";

dataset tiny() {
    return load_csv_text(tiny_csv, parse_manifest_text(tiny_manifest, "tiny"),
                         "tiny");
}

}  // namespace

TEST_CASE("manifest declares effort, nominal, and ordinal columns", "[dataset]") {
    const manifest_spec m = parse_manifest_text(
        "# comment\neffort = actual\nnominal = mode, lang\nordinal = rely\n", "m");
    CHECK(m.effort_column == "actual");
    CHECK(m.nominal.count("mode") == 1);
    CHECK(m.nominal.count("lang") == 1);
    CHECK(m.ordinal.count("rely") == 1);
}

TEST_CASE("manifest rejects unknown keys and missing effort", "[dataset]") {
    CHECK_THROWS_AS(parse_manifest_text("effort = e\nbogus = 1\n", "m"), data_error);
    CHECK_THROWS_AS(parse_manifest_text("nominal = a\n", "m"), data_error);
}

TEST_CASE("csv loads projects in file order with typed features", "[dataset]") {
    const dataset d = tiny();
    REQUIRE(d.projects.size() == 3);
    REQUIRE(d.schema.k() == 3);
    CHECK(d.schema.features[0].name == "size");
    CHECK(d.schema.features[0].kind == feature_kind::numeric);
    CHECK(d.schema.features[2].name == "type");
    CHECK(d.schema.features[2].kind == feature_kind::nominal);
    CHECK(d.schema.effort_column == "effort");
    CHECK(std::get<double>(d.projects[1].values[0]) == 20.0);
    CHECK(std::get<std::string>(d.projects[1].values[2]) == "batch");
    CHECK(d.projects[2].effort == 500.0);
    CHECK_FALSE(d.normalized);
}

TEST_CASE("csv loader rejects malformed inputs", "[dataset]") {
    const manifest_spec m = parse_manifest_text(tiny_manifest, "tiny");
    SECTION("unknown manifest column") {
        const manifest_spec bad =
            parse_manifest_text("effort = effort\nnominal = nosuch\n", "m");
        CHECK_THROWS_AS(load_csv_text(tiny_csv, bad, "t"), data_error);
    }
    SECTION("missing effort column") {
        CHECK_THROWS_AS(load_csv_text("size,team\n1,2\n", m, "t"), data_error);
    }
    SECTION("duplicate column name") {
        CHECK_THROWS_AS(load_csv_text("size,size,effort\n1,2,3\n", m, "t"),
                        data_error);
    }
    SECTION("row width mismatch") {
        CHECK_THROWS_AS(
            load_csv_text("size,team,type,effort\n1,2,web\n", m, "t"), data_error);
    }
    SECTION("non-numeric token in numeric column") {
        CHECK_THROWS_AS(
            load_csv_text("size,team,type,effort\nbig,2,web,10\n", m, "t"),
            data_error);
    }
    SECTION("missing value") {
        CHECK_THROWS_AS(
            load_csv_text("size,team,type,effort\n1,,web,10\n", m, "t"), data_error);
    }
    SECTION("non-positive effort") {
        CHECK_THROWS_AS(
            load_csv_text("size,team,type,effort\n1,2,web,0\n", m, "t"), data_error);
        CHECK_THROWS_AS(
            load_csv_text("size,team,type,effort\n1,2,web,-5\n", m, "t"), data_error);
    }
    SECTION("no projects") {
        CHECK_THROWS_AS(load_csv_text("size,team,type,effort\n", m, "t"), data_error);
    }
}

TEST_CASE("csv writer round-trips exactly", "[dataset]") {
    const dataset d = load_named("kemerer");
    const dataset back = load_csv_text(
        to_csv(d),
        parse_manifest_text("effort = effort_mm\nnominal = language, hardware\n",
                            "m"),
        d.name);
    REQUIRE(back.projects.size() == d.projects.size());
    REQUIRE(back.schema.k() == d.schema.k());
    for (std::size_t i = 0; i < d.projects.size(); ++i) {
        CHECK(back.projects[i].effort == d.projects[i].effort);
        for (std::size_t f = 0; f < d.schema.k(); ++f)
            CHECK(back.projects[i].values[f] == d.projects[i].values[f]);
    }
}

TEST_CASE("median uses the midpoint of the two middles", "[dataset]") {
    CHECK(median_midpoint({3.0}) == 3.0);
    CHECK(median_midpoint({5.0, 1.0, 3.0}) == 3.0);
    CHECK(median_midpoint({4.0, 1.0}) == 2.5);
    CHECK(median_midpoint({1.0, 2.0, 3.0, 10.0}) == 2.5);
}

TEST_CASE("benchmark datasets match their published statistics", "[dataset]") {
    struct expect {
        const char* name;
        std::size_t projects, features;
        double min, max, median;
    };
    const expect table[] = {
        {"cocomo81", 64, 16, 5.9, 11400.0, 102.0},
        {"desharnais", 81, 12, 546.0, 23940.0, 3647.0},
        {"china", 499, 14, 26.0, 54620.0, 1829.0},
        {"albrecht", 24, 8, 0.5, 105.2, 11.5},
        {"kemerer", 15, 7, 23.2, 1107.3, 130.3},
        {"maxwell", 62, 27, 583.0, 63694.0, 5189.5},
    };
    for (const auto& e : table) {
        INFO(e.name);
        const describe_summary s = describe(load_named(e.name));
        CHECK(s.projects == e.projects);
        CHECK(s.features == e.features);
        CHECK(s.effort_min == e.min);
        CHECK(s.effort_max == e.max);
        CHECK(s.effort_median == e.median);
    }
}

TEST_CASE("normalization maps numeric features onto [0,1]", "[dataset]") {
    const dataset d = tiny();
    const dataset n = normalize(d);
    CHECK(n.normalized);
    CHECK(std::get<double>(n.projects[0].values[0]) == 0.0);
    CHECK(std::get<double>(n.projects[1].values[0]) == 0.5);
    CHECK(std::get<double>(n.projects[2].values[0]) == 1.0);
    // nominal column and efforts pass through untouched
    CHECK(std::get<std::string>(n.projects[1].values[2]) == "batch");
    CHECK(n.projects[1].effort == 250.0);
    // a second normalization is a usage bug
    CHECK_THROWS_AS(normalize(n), data_error);
}

TEST_CASE("range computation can exclude held-out rows", "[dataset]") {
    const dataset d = tiny();
    const column_ranges r = compute_ranges(d, {0, 1});  // rows 0 and 1 only
    REQUIRE(r[0].has_value());
    CHECK(r[0]->first == 10.0);
    CHECK(r[0]->second == 20.0);
    CHECK_FALSE(r[2].has_value());  // nominal has no range

    const dataset n = normalize_with_ranges(d, r);
    // row 2 is outside the fitted range and clamps to 1
    CHECK(std::get<double>(n.projects[2].values[0]) == 1.0);
    CHECK(std::get<double>(n.projects[1].values[0]) == 1.0);
    CHECK(std::get<double>(n.projects[0].values[0]) == 0.0);
}

TEST_CASE("constant columns normalize to zero", "[dataset]") {
    const manifest_spec m = parse_manifest_text("effort = e\n", "m");
    const dataset d =
        load_csv_text("a,b,e\n5,1,10\n5,2,20\n5,3,30\n", m, "const");
    const dataset n = normalize(d);
    for (const auto& p : n.projects)
        CHECK(std::get<double>(p.values[0]) == 0.0);
}

TEST_CASE("doubles serialize with shortest round-trip form", "[dataset]") {
    CHECK(detail::format_double(0.5) == "0.5");
    CHECK(detail::format_double(11400.0) == "11400");
    CHECK(detail::format_double(0.1) == "0.1");
    const double v = 1.0 / 3.0;
    CHECK(detail::parse_double(detail::format_double(v), "here") == v);
}
