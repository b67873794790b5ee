#include "phonolase/analyze.hpp"
#include "phonolase/config.hpp"
#include "phonolase/contours.hpp"
#include "phonolase/sweep.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace phonolase;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

Config load(const char* name) { return load_config(std::string(PHONOLASE_CONFIG_DIR) + "/" + name); }

std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

Grid analytic_grid(std::size_t n, double lo, double hi, double (*f)(double, double)) {
    Grid g;
    g.x_name = "x";
    g.y_name = "y";
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        g.xs.push_back(t);
        g.ys.push_back(t);
    }
    g.fields = {"v"};
    g.values.assign(1, std::vector<std::vector<double>>(n, std::vector<double>(n)));
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) g.values[0][iy][ix] = f(g.xs[ix], g.ys[iy]);
    return g;
}

} // namespace

TEST_CASE("config parsing") {
    const std::string good = R"({"delta1": 20, "delta2": 100, "lambda1": 9.94, "lambda2": 49.99,
        "phi_d1": 3.14, "phi_d2": 0, "j_hop": 0.1, "g0": 0.002, "kappa": 0.05, "gamma_m": 0.001})";
    const Config c = parse_config(std::string_view(good));
    CHECK(c.params.delta2 == 100.0);
    CHECK(c.params.omega_m == 1.0);
    CHECK(c.options.n_plus == 1.0);

    CHECK_THROWS_AS(parse_config(std::string_view(R"({"delta1": 1})")), InvalidConfig);
    CHECK_THROWS_AS(parse_config(std::string_view("{not json")), InvalidConfig);
    CHECK_THROWS_AS(parse_config(std::string_view("[]")), InvalidConfig);

    auto j = nlohmann::json::parse(good);
    j["detla1"] = 1.0;
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("detla1"));

    j = nlohmann::json::parse(good);
    j["g0"] = "0.002";
    CHECK_THROWS_AS(parse_config(j), InvalidConfig);

    j = nlohmann::json::parse(good);
    j["options"] = {{"f1_hi", 20.0}, {"n_plus", 3.0}};
    const Config o = parse_config(j);
    CHECK(o.options.regime.f1_hi == 20.0);
    CHECK(o.options.n_plus == 3.0);
    j["options"]["bogus"] = 1;
    CHECK_THROWS_AS(parse_config(j), InvalidConfig);
}

TEST_CASE("shipped configs load and validate") {
    for (const char* name : {"tms_working_point.json", "bs_laser.json", "tms_sum_resonance.json", "bs_diff_resonance.json", "bs_laser_no_opa.json"}) {
        INFO(name);
        CHECK_NOTHROW(validate(load(name).params));
    }
}

TEST_CASE("delta_phi axis moves phi_d1 only") {
    Config c = load("bs_laser.json");
    c.params.phi_d2 = 0.4;
    set_axis(c, "delta_phi", 1.0);
    CHECK(c.params.phi_d2 == 0.4);
    CHECK(c.params.phi_d1 == 1.4);
    CHECK_THROWS_AS(set_axis(c, "nope", 1.0), InvalidConfig);
}

TEST_CASE("sweep spec validation") {
    const Config c = load("bs_laser.json");
    SweepSpec spec;
    spec.axis = {"delta_phi", 0.0, 1.0, 1};
    CHECK_THROWS_AS(run_sweep(c, spec), InvalidConfig);
    spec.axis = {"delta_phi", 0.0, std::nan(""), 5};
    CHECK_THROWS_AS(run_sweep(c, spec), InvalidConfig);
    spec.axis = {"j_hop", 0.0, 1.0, 3};
    spec.outputs = {"f1", "no_such_output"};
    CHECK_THROWS_AS(run_sweep(c, spec), InvalidConfig);
}

TEST_CASE("axis samples hit both endpoints exactly") {
    const SweepAxis a{"delta_phi", 0.0, 2.0 * pi, 7};
    const auto v = a.values();
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 2.0 * pi);
    CHECK(v.size() == 7);
}

TEST_CASE("sweep rows equal single-point results") {
    const Config base = load("tms_working_point.json");
    SweepSpec spec;
    spec.axis = {"delta_phi", 0.0, 2.0 * pi, 9};
    const Table t = run_sweep(base, spec);
    REQUIRE(t.rows.size() == 9);
    REQUIRE(t.header.size() == point_columns().size() + 1);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Config c = base;
        set_axis(c, "delta_phi", spec.axis.value(static_cast<int>(i)));
        const auto point = evaluate_point(c);
        for (std::size_t k = 0; k < point_columns().size(); ++k)
            CHECK(t.rows[i][k + 1] == point_columns()[k].render(point));
    }
}

TEST_CASE("sweep output selection keeps the documented order") {
    SweepSpec spec;
    spec.axis = {"j_hop", 0.0, 0.1, 3};
    spec.outputs = {"f2", "bs_w1", "f1"};
    const Table t = run_sweep(load("bs_laser.json"), spec);
    CHECK(t.header == std::vector<std::string>{"axis_j_hop", "f1", "f2", "bs_w1"});
}

TEST_CASE("per-point failures become sentinels") {
    SweepSpec spec;
    spec.axis = {"lambda2", 49.0, 51.0, 5}; // crosses |delta2|/2 = 50
    const Table t = run_sweep(load("bs_laser.json"), spec);
    const auto err = std::find(t.header.begin(), t.header.end(), "error") - t.header.begin();
    const auto f1 = std::find(t.header.begin(), t.header.end(), "f1") - t.header.begin();
    CHECK(t.rows[0][err].empty());
    CHECK(t.rows[2][err] == "Stage1Unstable");
    CHECK(t.rows[4][err] == "Stage1Unstable");
    CHECK(t.rows[4][f1] == "nan");
}

TEST_CASE("TMS instability is reported per point without losing BS columns") {
    Config c = load("tms_working_point.json");
    c.params.j_hop = 5.0;
    const auto point = evaluate_point(c);
    CHECK(point.ok());
    CHECK_FALSE(point.tms);
    CHECK(point.tms_error == "TmsUnstable");
    CHECK(point.bs);
    CHECK(find_column("error")->render(point) == "TmsUnstable");
    CHECK(find_column("tms_w1")->render(point) == "nan");
}

TEST_CASE("threaded evaluation is order preserving") {
    SweepSpec spec;
    spec.axis = {"delta_phi", 0.0, 2.0 * pi, 64};
    const Config c = load("bs_laser.json");
    const std::string serial = csv(run_sweep(c, spec));
    spec.threads = 4;
    CHECK(csv(run_sweep(c, spec)) == serial);
}

TEST_CASE("CSV numbers carry 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::stod(format_double(pi)) == pi);
}

TEST_CASE("grid marks the stage-1 unstable region with NaN") {
    SweepSpec spec;
    spec.axis = {"lambda1", 1995.0, 2001.0, 7}; // crosses |delta1|/2 = 2000
    spec.second = SweepAxis{"delta_phi", 0.0, 2.0 * pi, 5};
    spec.outputs = {"f1", "f2", "tms_g1", "tms_g2", "tms_eta"};
    const Grid g = run_grid(load("tms_working_point.json"), spec);
    const auto& f1 = g.field("f1");
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
        CHECK(std::isfinite(f1[iy][0]));
        CHECK(std::isnan(f1[iy][5])); // lambda1 = 2000
        CHECK(std::isnan(f1[iy][6]));
    }
}

TEST_CASE("grid CSV round trip") {
    SweepSpec spec;
    spec.axis = {"lambda1", 198.1, 199.6, 4};
    spec.second = SweepAxis{"delta_phi", 0.0, 2.0 * pi, 3};
    const Grid g = run_grid(load("tms_sum_resonance.json"), spec);
    std::ostringstream os;
    write_grid_csv(os, g);
    std::istringstream is(os.str());
    const Grid back = read_grid_csv(is);
    CHECK(back.x_name == g.x_name);
    CHECK(back.y_name == g.y_name);
    CHECK(back.xs == g.xs);
    CHECK(back.ys == g.ys);
    CHECK(back.fields == g.fields);
    for (std::size_t f = 0; f < g.fields.size(); ++f)
        for (std::size_t iy = 0; iy < g.ys.size(); ++iy)
            for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
                const double a = g.values[f][iy][ix], b = back.values[f][iy][ix];
                CHECK((a == b || (std::isnan(a) && std::isnan(b))));
            }
}

TEST_CASE("grid f2 changes sign on the sum-resonance set") {
    SweepSpec spec;
    spec.axis = {"lambda1", 198.1, 199.6, 16};
    spec.second = SweepAxis{"delta_phi", 0.0, 2.0 * pi, 9};
    const Grid g = run_grid(load("tms_sum_resonance.json"), spec);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : g.field("f2"))
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    CHECK(lo < 0.0);
    CHECK(hi > 0.0);
}

TEST_CASE("constant field has no contour") {
    const Grid g = analytic_grid(5, 0.0, 1.0, [](double, double) { return 2.0; });
    const auto set = extract_contours(g, "v", {1.0, 2.5});
    REQUIRE(set.levels.size() == 2);
    CHECK(set.levels[0].status == ContourStatus::EmptyContour);
    CHECK(set.levels[0].polylines.empty());
    CHECK(set.levels[1].status == ContourStatus::EmptyContour);
}

TEST_CASE("unit circle contour is within a cell diagonal of the exact circle") {
    const std::size_t n = 41;
    const Grid g = analytic_grid(n, -2.0, 2.0, [](double x, double y) { return x * x + y * y; });
    const double h = 4.0 / static_cast<double>(n - 1);
    const auto set = extract_contours(g, "v", {1.0});
    REQUIRE(set.levels[0].status == ContourStatus::Ok);
    REQUIRE(set.levels[0].polylines.size() == 1);
    const auto& line = set.levels[0].polylines[0];
    CHECK(line.front().x == line.back().x); // closed loop
    CHECK(line.front().y == line.back().y);
    CHECK(line.size() > 40);
    for (const auto& p : line) CHECK(std::abs(std::hypot(p.x, p.y) - 1.0) <= std::sqrt(2.0) * h);
}

TEST_CASE("contours skip cells with NaN corners and stay in the box") {
    Grid g = analytic_grid(21, -2.0, 2.0, [](double x, double y) { return x * x + y * y; });
    g.values[0][10][10] = std::nan("");
    const auto set = extract_contours(g, "v", {0.5, 3.0});
    for (const auto& lvl : set.levels)
        for (const auto& line : lvl.polylines)
            for (const auto& p : line) {
                CHECK(p.x >= -2.0);
                CHECK(p.x <= 2.0);
                CHECK(p.y >= -2.0);
                CHECK(p.y <= 2.0);
            }
    CHECK_THROWS_AS(extract_contours(g, "nope", {1.0}), InvalidConfig);
}

TEST_CASE("analyze report for the reference points") {
    auto value = [](const Table& t, const std::string& key) {
        for (const auto& r : t.rows)
            if (r[0] == key) return r[1];
        return std::string("<missing>");
    };
    const Table tms = analyze(load("tms_working_point.json"));
    CHECK(value(tms, "branch") == "TwoModeSqueezing");
    CHECK(std::stod(value(tms, "tms_g2")) > 0.05);

    Config bare = load("bs_laser.json");
    bare.params.lambda1 = bare.params.lambda2 = 0.0;
    bare.params.j_hop = 0.0;
    const Table b = analyze(bare);
    CHECK(std::stod(value(b, "bs_g2")) == bare.params.g0);
    CHECK(std::stod(value(b, "g_p2")) == 0.0);
    CHECK(value(b, "branch") == "BeamSplitter");
}
