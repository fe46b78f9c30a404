#include "triad/errors.hpp"
#include "triad/io.hpp"
#include "triad/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace triad;
using nlohmann::json;

namespace {

const std::string kData = TRIAD_TEST_DATA;

json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return json::parse(in);
}

std::string where_of(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.where;
    }
    return "";
}

}  // namespace

TEST_CASE("minimal config and defaults") {
    const json doc = {{"hydrolysis", "first_order"},
                      {"k0", 1},
                      {"k1", 2},
                      {"k2", 1},
                      {"k3", 1},
                      {"D", 1},
                      {"X0in", 1},
                      {"S1in", 1},
                      {"S2in", 1},
                      {"mu1", {{"kind", "monod"}, {"m", 2}, {"K", 1}}},
                      {"mu2", {{"kind", "haldane"}, {"m", 2}, {"K", 1}, {"KI", 4}}}};
    const RunConfig cfg = parse_config(doc);
    CHECK(cfg.model.alpha1 == 1.0);
    CHECK(cfg.model.a1 == 0.0);
    CHECK(cfg.model.k_hyd == 0.0);
    CHECK_FALSE(cfg.sim);
    CHECK_FALSE(cfg.scan);

    const json rep = equilibria_report(cfg.model);
    CHECK(rep["equilibria"][0]["label"] == "E00");
    CHECK(rep["equilibria"][0]["exists"] == true);
    CHECK(rep["removal_rates"]["D1"] == 1.0);
    CHECK(rep["max_residual"].get<double>() <= 1e-9);
}

TEST_CASE("schema errors name the field") {
    const json base = load_json(kData + "/first_order.json");
    json d = base;
    d["gamma"] = 1;
    CHECK(where_of(d) == "/gamma");
    d = base;
    d["mu1"]["q"] = 1;
    CHECK(where_of(d) == "/mu1/q");
    d = base;
    d["sim"]["initial"]["X3"] = 1;
    CHECK(where_of(d) == "/sim/initial/X3");
    d = base;
    d.erase("D");
    CHECK(where_of(d) == "/D");
    d = base;
    d["k0"] = "half";
    CHECK(where_of(d) == "/k0");
    d = base;
    d["mu2"]["kind"] = "tessier";
    CHECK(where_of(d) == "/mu2/kind");
    d = base;
    d["hydrolysis"] = "enzymatic";
    CHECK(where_of(d) == "/hydrolysis");
    d = base;
    d["scan"] = {{"x", {{"param", "k1"}, {"lo", 0}, {"hi", 1}, {"n", 3}}}};
    CHECK(where_of(d) == "/scan/x/param");
    d = base;
    d["scan"] = {{"x", {{"param", "D"}, {"lo", 0.1}, {"hi", 1}, {"n", 2.5}}}};
    CHECK(where_of(d) == "/scan/x/n");
    d = base;
    d["k1"] = 1.5;  // model invariant, re-checked on load
    CHECK_THROWS_AS(parse_config(d), ConfigError);
    d = base;
    d["mu1"]["m"] = -1;
    CHECK(where_of(d) == "/mu1");
}

TEST_CASE("syntax errors report line and column") {
    try {
        load_config(kData + "/bad_syntax.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.where == "line 3, column 13");
    }
    CHECK_THROWS_AS(load_config(kData + "/does_not_exist.json"), ConfigError);
}

TEST_CASE("config round trip") {
    for (const char* f : {"/first_order.json", "/biomass_scan.json"}) {
        const RunConfig a = load_config(kData + f);
        const RunConfig b = parse_config_text(to_json(a).dump());
        CHECK(a.model == b.model);
        CHECK(to_json(a) == to_json(b));
    }
    Rng rng(99);
    for (int n = 0; n < 200; ++n) {
        RunConfig a;
        a.model = random_params(rng, n % 2 ? Hydrolysis::FirstOrder : Hydrolysis::BiomassDependent);
        a.seed = n;
        const RunConfig b = parse_config_text(to_json(a).dump());
        CHECK(a.model == b.model);
        CHECK(b.seed == a.seed);
    }
}

TEST_CASE("format_double round-trips at full precision") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> e(-300, 300);
    for (int n = 0; n < 2000; ++n) {
        const double v = std::pow(10.0, e(rng)) * (n % 2 ? -1 : 1);
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        char g17[40];
        std::snprintf(g17, sizeof g17, "%.17g", v);
        CHECK(s.size() <= std::strlen(g17));
    }
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("trajectory and grid CSV parse back losslessly") {
    const RunConfig cfg = load_config(kData + "/first_order.json");
    const Trajectory tr = integrate(cfg.model, *cfg.initial, *cfg.sim);
    std::stringstream ss;
    write_trajectory_csv(ss, tr);
    const CsvTable t = read_csv(ss);
    CHECK(t.header == std::vector<std::string>{"t", "X0", "S1", "X1", "S2", "X2", "Z"});
    REQUIRE(t.rows.size() == tr.times.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(std::stod(t.rows[i][0]) == tr.times[i]);
        for (int c = 0; c < 5; ++c) CHECK(std::stod(t.rows[i][c + 1]) == tr.states[i][c]);
        CHECK(std::stod(t.rows[i][6]) == tr.z_values[i]);
    }

    const RunConfig bc = load_config(kData + "/biomass_scan.json");
    const DiagramGrid g = scan(*bc.scan);
    std::stringstream gs;
    write_grid_csv(gs, g);
    const CsvTable gt = read_csv(gs);
    CHECK(gt.header == std::vector<std::string>{"x", "y", "signature", "n_value"});
    REQUIRE(gt.rows.size() == g.cells.size());
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        CHECK(std::stod(gt.rows[i][0]) == g.cells[i].x);
        CHECK(std::stod(gt.rows[i][1]) == *g.cells[i].y);
        CHECK(gt.rows[i][2] == g.cells[i].signature);
        CHECK(std::stoi(gt.rows[i][3]) == *g.cells[i].n_value);
    }
}

TEST_CASE("CSV reader handles quotes") {
    std::stringstream ss("a,b\n\"x,\"\"y\"\"\",2\n");
    const CsvTable t = read_csv(ss);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "x,\"y\"");
    CHECK(t.rows[0][1] == "2");
}

TEST_CASE("classical removal rates reduce to D") {
    const RunConfig cfg = load_config(kData + "/first_order.json");
    const json rep = equilibria_report(cfg.model);
    CHECK(rep["removal_rates"]["D1"] == cfg.model.D);
    CHECK(rep["removal_rates"]["D2"] == cfg.model.D);
    for (const auto& e : rep["equilibria"]) {
        if (!e["exists"].get<bool>()) continue;
        CHECK(e["residual"].get<double>() <= 1e-9);
        CHECK(e["stability"]["agreement"] == true);
    }
    const json brep = equilibria_report(load_config(kData + "/biomass_scan.json").model);
    CHECK(brep.contains("multiplicity"));
    for (const auto& e : brep["equilibria"]) {
        if (e["exists"].get<bool>() && e["j"] == 1) CHECK(e["stability"].contains("routh"));
    }
}

TEST_CASE("validation summary is deterministic and trivial at zero draws") {
    const ValidationSummary z = run_validation(0, 1);
    CHECK(z.disagreements() == 0);
    CHECK(z.first_order.existing == 0);
    const json a = run_validation(50, 123).to_json();
    const json b = run_validation(50, 123).to_json();
    CHECK(a == b);
    CHECK(a["disagreements"] == 0);
    CHECK(run_validation(50, 124).to_json() != a);
}

TEST_CASE("CLI output files" * doctest::skip(std::getenv("TRIAD_CLI_OUT") == nullptr)) {
    const std::string dir = std::getenv("TRIAD_CLI_OUT");

    const json rep = load_json(dir + "/eq.json");
    CHECK(rep["equilibria"][0]["exists"] == true);
    CHECK(rep["max_residual"].get<double>() <= 1e-9);

    std::ifstream tin(dir + "/traj.csv");
    REQUIRE(tin);
    const CsvTable tr = read_csv(tin);
    CHECK(tr.header.size() == 7);
    REQUIRE(tr.rows.size() > 2);
    CHECK(std::stod(tr.rows.back()[0]) == 300.0);

    std::ifstream gin(dir + "/grid.csv");
    const CsvTable g = read_csv(gin);
    CHECK(g.rows.size() == 21 * 11);
    const std::regex fmt(R"(^E[01][012](k[12])?:[SUM](,E[01][012](k[12])?:[SUM])*$)");
    for (const auto& r : g.rows) CHECK(std::regex_match(r[2], fmt));

    std::ifstream bin(dir + "/bounds.csv");
    const CsvTable b = read_csv(bin);
    CHECK(b.header == std::vector<std::string>{"from", "to", "x", "y"});
    CHECK_FALSE(b.rows.empty());
}
