#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "polytrop/cli.hpp"

using namespace polytrop;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(POLYTROP_DATA_DIR) + "/" + name; }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ValidationError;
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("polytrop_test_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

cli::JobResult run(const std::string& sub, std::vector<std::string> inputs, Integer level = 2) {
    cli::JobConfig c;
    c.subcommand = sub;
    c.inputs = std::move(inputs);
    c.level = level;
    return cli::run_job(c);
}

json random_fan_json(std::mt19937& rng) {
    // complete rank-2 fan from sorted primitive rays around the circle
    std::uniform_int_distribution<int> coord(-4, 4);
    std::vector<std::pair<double, IntVec>> rays;
    while (rays.size() < 3 || rays.size() < 3 + rng() % 4) {
        IntVec r{coord(rng), coord(rng)};
        if (is_zero(r)) continue;
        r = make_primitive(r);
        double a = std::atan2(static_cast<double>(r[1]), static_cast<double>(r[0]));
        bool dup = false;
        for (const auto& q : rays) dup = dup || q.second == r;
        if (!dup) rays.emplace_back(a, r);
    }
    std::sort(rays.begin(), rays.end());
    // consecutive gaps must stay below pi for strictly convex cones
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        double gap = rays[(i + 1) % rays.size()].first - rays[i].first;
        if (gap <= 0) gap += 2 * pi;
        if (gap >= pi - 1e-9) return random_fan_json(rng);
    }
    json j;
    j["rank"] = 2;
    j["rays"] = json::array();
    j["maximal_cones"] = json::array();
    for (std::size_t i = 0; i < rays.size(); ++i) {
        j["rays"].push_back(io::to_json(rays[i].second));
        j["maximal_cones"].push_back(json::array({i, (i + 1) % rays.size()}));
    }
    return j;
}

json random_polynomial_json(std::mt19937& rng) {
    std::size_t n = 2 + rng() % 3;
    std::size_t count = 1 + rng() % 5;
    json terms = json::array();
    std::set<std::vector<int>> seen;
    for (std::size_t t = 0; t < count; ++t) {
        std::vector<int> e(n);
        for (auto& x : e) x = static_cast<int>(rng() % 5);
        if (!seen.insert(e).second) continue;
        json tj;
        tj["exp"] = e;
        tj["val"] = to_string(Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4)));
        if (rng() % 2) tj["coef"] = json::array({io::format_double(0.5 + (rng() % 100) / 37.0), io::format_double(-1.25)});
        terms.push_back(tj);
    }
    json j;
    j["vars"] = n;
    j["terms"] = terms;
    return j;
}

} // namespace

TEST(Parse, QuadrantFanHasFourCones) {
    Fan f = io::parse_fan(data("quadrant_fan.json"));
    EXPECT_EQ(f.maximal_cones().size(), 4u);
    EXPECT_TRUE(f.complete());
}

TEST(Parse, NodalIncidenceIsALoop) {
    auto f = io::parse_incidence(data("nodal_cubic_incidence.json"));
    EXPECT_EQ(f.mode, ComplexMode::Analytic);
    auto c = from_incidence(f.data, f.mode);
    EXPECT_EQ(c.f_vector(), (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(c.cell(1, 0).vertices, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(io::parse_complex(data("nodal_cubic_incidence.json")).f_vector(), c.f_vector());
}

TEST(Parse, MalformedExponentNamesTheTerm) {
    auto j = io::parse_text(R"({"vars": 2, "terms": [{"exp": [1, 0]}, {"exp": [0, 1]}, {"exp": [2, "x"]}]})");
    try {
        io::polynomial_from_json(j);
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("term 2"), std::string::npos) << e.what();
    }
    auto short_exp = io::parse_text(R"({"vars": 2, "terms": [{"exp": [1]}]})");
    EXPECT_EQ(kind_of([&] { io::polynomial_from_json(short_exp); }), ErrorKind::ParseError);
}

TEST(Parse, SyntaxErrorsReportLineAndColumn) {
    try {
        io::parse_text("{\n  \"rank\": 2,\n  \"rays\": [,]\n}", "f.json");
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Parse, RationalsAreExact) {
    auto j = io::parse_text(R"({"vars": 1, "terms": [{"exp": [1], "val": "123456789012345678901234567890/7"}]})");
    auto f = io::polynomial_from_json(j);
    EXPECT_EQ(f.terms()[0].val, parse_rational("123456789012345678901234567890/7"));
}

TEST(Parse, DomainErrorsBecomeValidationErrors) {
    auto overlap = io::parse_text(R"({"rank": 2, "rays": [["1","0"],["0","1"],["1","1"]], "maximal_cones": [[0,1],[2,1]]})");
    EXPECT_EQ(kind_of([&] { io::fan_from_json(overlap); }), ErrorKind::ValidationError);
    auto big = io::parse_text(R"({"rank": 5, "rays": [], "maximal_cones": []})");
    EXPECT_EQ(kind_of([&] { io::fan_from_json(big); }), ErrorKind::RankCap);
}

TEST(RoundTrip, DataFilesAreStable) {
    for (const auto& name : {"quadrant_fan.json"}) {
        auto once = io::dump(io::fan_to_json(io::parse_fan(data(name))));
        EXPECT_EQ(io::dump(io::fan_to_json(io::fan_from_json(io::parse_text(once)))), once);
    }
    auto poly = io::dump(io::polynomial_to_json(io::parse_polynomial(data("nodal_cubic.json"))));
    EXPECT_EQ(poly, io::read_file(data("nodal_cubic.json")));
    auto inc = io::dump(io::incidence_to_json(io::parse_incidence(data("nodal_cubic_incidence.json"))));
    EXPECT_EQ(inc, io::read_file(data("nodal_cubic_incidence.json")));
}

TEST(RoundTrip, RandomCanonicalInputsAreByteIdentical) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto fan = io::dump(io::fan_to_json(io::fan_from_json(random_fan_json(rng))));
        EXPECT_EQ(io::dump(io::fan_to_json(io::fan_from_json(io::parse_text(fan)))), fan) << "trial " << trial;

        auto pj = random_polynomial_json(rng);
        if (pj["terms"].empty()) continue;
        auto poly = io::dump(io::polynomial_to_json(io::polynomial_from_json(pj)));
        EXPECT_EQ(io::dump(io::polynomial_to_json(io::polynomial_from_json(io::parse_text(poly)))), poly);

        std::size_t m = 1 + trial % 5;
        auto cx = scale_subdivide(trial % 2 ? cycle_complex(m) : standard_simplex(m % 4), 1 + trial % 3);
        auto text = io::dump(io::complex_to_json(cx));
        auto back = io::complex_from_json(io::parse_text(text));
        EXPECT_EQ(back.f_vector(), cx.f_vector());
        EXPECT_EQ(io::dump(io::complex_to_json(back)), text) << "trial " << trial;
    }
}

TEST(RoundTrip, DoublesSurviveExactly) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng);
        EXPECT_EQ(io::double_of(json(io::format_double(x)), "x"), x);
    }
}

TEST(Run, PtropOnTheNodalCubic) {
    auto r = run("ptrop", {data("nodal_cubic.json")});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    EXPECT_EQ(r.report["ptrop"]["points"], json::array({"[1:2]", "[2:1]"}));
    EXPECT_TRUE(r.report["routes_agree"].get<bool>());
    EXPECT_EQ(r.report["oracle"]["clusters"].size(), 2u);
    EXPECT_LT(io::double_of(r.report["oracle"]["max_distance"], "d"), 1e-2);
    EXPECT_EQ(r.report["input"]["sha256"], io::sha256_hex(io::read_file(data("nodal_cubic.json"))));
}

TEST(Run, SubdivideI3GivesI6) {
    auto r = run("subdivide", {data("i3_cycle.json")}, 2);
    ASSERT_EQ(r.exit_code, 0) << r.text;
    auto i6 = io::complex_from_json(io::parse_text(r.artifact));
    EXPECT_EQ(i6.f_vector(), (std::vector<std::size_t>{6, 6}));
    for (const auto& e : i6.cells(1)) EXPECT_NE(e.vertices[0], e.vertices[1]);
    EXPECT_EQ(i6.euler_characteristic(), 0);
    EXPECT_TRUE(r.report["ratio_is_N_to_the_m"].get<bool>());
}

TEST(Run, MapFibersFlagsTheK3Mismatch) {
    auto r = run("map-fibers", {data("k3_type3.json")});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    const auto& f = r.report["fibers"][0];
    EXPECT_EQ(f["chi"], "1");
    EXPECT_EQ(f["supplied_chi"], "2");
    EXPECT_TRUE(f["mismatch"].get<bool>());
    EXPECT_TRUE(r.report["mismatch"].get<bool>());
    EXPECT_NE(r.text.find("MISMATCH"), std::string::npos);
}

TEST(Run, FunctorialityDatasets) {
    auto flop = run("map-fibers", {data("atiyah_flop.json")});
    ASSERT_EQ(flop.exit_code, 0) << flop.text;
    EXPECT_EQ(flop.report["fibers"][0]["dim"], 1);
    EXPECT_EQ(flop.report["fibers"][0]["chi"], "1");
    auto easy = run("map-fibers", {data("affine_quadric.json")});
    ASSERT_EQ(easy.exit_code, 0) << easy.text;
    EXPECT_EQ(easy.report["fibers"][0]["dim"], 1); // doubled endpoint: a segment
    EXPECT_EQ(easy.report["fibers"][1]["dim"], 0); // other endpoint: a point
    auto toric = run("toric-fiber", {data("flop_toric.json")});
    ASSERT_EQ(toric.exit_code, 0) << toric.text;
    EXPECT_EQ(toric.report["f_vector"], json::array({3, 2}));
}

TEST(Run, GalaxyClassifiesAlongTheTower) {
    auto r = run("galaxy", {data("i3_tower.json")});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    const auto& pts = r.report["points"];
    std::vector<std::size_t> open_levels;
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(pts[i]["kind"], "Open");
        open_levels.push_back(pts[i]["level"].get<std::size_t>());
    }
    EXPECT_EQ(open_levels, (std::vector<std::size_t>{0, 1, 2, 4}));
    EXPECT_EQ(pts[4]["kind"], "Closed");
    EXPECT_EQ(pts[5]["kind"], "Closed");
    auto slots = run("galaxy", {data("i3_cycle.json")}, 2);
    EXPECT_EQ(slots.report["open_slots"].size(), 6u);
}

TEST(Run, OtherSubcommands) {
    EXPECT_EQ(run("fan-validate", {data("quadrant_fan.json")}).report["maximal_cones"], 4);
    EXPECT_EQ(run("refine", {data("quadrant_stellar_tower.json")}).report["levels"].size(), 3u);
    EXPECT_EQ(run("fiber-rank", {data("fiber_sqrt2.json")}).report["fiber_dim"], 0);
    auto dual = run("dualcx", {data("nodal_cubic_incidence.json")});
    EXPECT_EQ(dual.report["complex"]["f_vector"], json::array({1, 1}));
    EXPECT_FALSE(dual.svg.empty());
    EXPECT_EQ(run("rational-points", {data("i3_cycle.json")}, 2).report["count"], 6);
    auto lim = run("limit-point", {data("golden_limit.json")});
    ASSERT_EQ(lim.exit_code, 0) << lim.text;
    EXPECT_FALSE(lim.report["resolved"].get<bool>());
    auto trop = run("trop", {data("nodal_cubic.json")});
    EXPECT_EQ(trop.report["convention"], "min-plus");
}

TEST(Run, ExitCodes) {
    EXPECT_EQ(run("trop", {temp_file("bad_syntax.json", "{\"vars\": 2,")}).exit_code, cli::kParse);
    EXPECT_EQ(run("trop", {temp_file("bad_exp.json", R"({"vars": 2, "terms": [{"exp": [1, -1]}]})")}).exit_code,
              cli::kParse);
    auto invalid = temp_file("invalid_fan.json",
                             R"({"rank": 2, "rays": [["1","0"],["0","1"],["1","1"]], "maximal_cones": [[0,1],[2,1]]})");
    auto r = run("fan-validate", {invalid});
    EXPECT_EQ(r.exit_code, cli::kValidation);
    EXPECT_FALSE(r.report["violations"].empty());
    EXPECT_EQ(run("fan-validate", {temp_file("rank5.json", R"({"rank": 5, "rays": [], "maximal_cones": []})")}).exit_code,
              cli::kResource);
    EXPECT_EQ(run("fan-validate", {"/nonexistent/polytrop.json"}).exit_code, cli::kParse);
    EXPECT_EQ(run("nope", {data("quadrant_fan.json")}).exit_code, cli::kValidation);
    cli::JobConfig deep;
    deep.subcommand = "refine";
    deep.inputs = {data("quadrant_stellar_tower.json")};
    deep.depth = 65;
    EXPECT_EQ(cli::run_job(deep).exit_code, cli::kResource);
    deep.depth.reset();
    deep.cluster_threshold = -1;
    EXPECT_EQ(cli::run_job(deep).exit_code, cli::kValidation);
    auto incomplete = temp_file("incomplete.json", R"({"elliptic": {"m": 3, "degrees": [2]}, "points": ["1/5"]})");
    auto g = run("galaxy", {incomplete});
    EXPECT_EQ(g.exit_code, cli::kValidation);
    EXPECT_EQ(g.report["points"][0]["kind"], "IncompleteTower");
}

TEST(Run, Deterministic) {
    for (const auto& [sub, file] : std::vector<std::pair<std::string, std::string>>{
             {"ptrop", "nodal_cubic.json"}, {"subdivide", "i3_cycle.json"}, {"map-fibers", "k3_type3.json"}}) {
        auto a = run(sub, {data(file)});
        auto b = run(sub, {data(file)});
        EXPECT_EQ(io::dump(a.report), io::dump(b.report)) << sub;
        EXPECT_EQ(a.artifact, b.artifact);
        EXPECT_EQ(a.text, b.text);
    }
}

TEST(Run, ParallelBatchIsOrderedByPath) {
    std::vector<std::string> files = {data("k3_type3.json"), data("atiyah_flop.json"), data("affine_quadric.json")};
    cli::JobConfig c;
    c.subcommand = "map-fibers";
    c.inputs = files;
    c.parallel = 1;
    auto serial = cli::run_job(c);
    std::reverse(c.inputs.begin(), c.inputs.end());
    c.parallel = 3;
    auto parallel = cli::run_job(c);
    EXPECT_EQ(io::dump(serial.report), io::dump(parallel.report));
    ASSERT_EQ(serial.report["batch"].size(), 3u);
    EXPECT_EQ(serial.report["batch"][0]["input"]["path"], data("affine_quadric.json"));
}

TEST(RunProperty, IdenticalInputsGiveIdenticalReports) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        bool fan = trial % 2 == 0;
        json j = fan ? random_fan_json(rng) : random_polynomial_json(rng);
        if (!fan && j["terms"].empty()) j = random_fan_json(rng), fan = true;
        auto path = temp_file("determinism.json", io::dump(j));
        std::string sub = fan ? "fan-validate" : "trop";
        auto a = run(sub, {path});
        auto b = run(sub, {path});
        EXPECT_EQ(io::dump(a.report), io::dump(b.report)) << "trial " << trial;
        EXPECT_EQ(a.text, b.text);
        EXPECT_EQ(a.exit_code, b.exit_code);
        EXPECT_EQ(a.report["input"]["sha256"], io::sha256_hex(io::read_file(path)));
    }
}
