#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "lhk/config.hpp"
#include "lhk/report.hpp"
#include "lhk/suites.hpp"

using namespace lhk;
using namespace lhk::harness;

namespace {

// small, fast grids: determinism and plumbing only
Config small_config() {
    Config c;
    c.grid = {3.5, 3.5, 64, 64, 1e-5, 6.0, 48, 32};
    c.conv = {3.0, 3.0, 24, 24, 8, 24, 1e-2, 2.0, 16, 12};
    c.atoms.radii = {0.5, 1.0};
    c.atoms.nx = 96;
    c.atoms.nt = 64;
    c.atoms.n_lambda = 48;
    c.atoms.m_max = 32;
    c.multiplier.radii = {0.5, 1.0};
    c.multiplier.shell_m_max = 64;
    c.multiplier.shell_n_lambda = 40;
    c.validate();
    return c;
}

} // namespace

TEST_CASE("config: parsing, defaults, validation") {
    Config c = parse_config(R"({"alpha": 1.0, "grid": {"nx": 96}})");
    CHECK(c.alpha == 1.0);
    CHECK(c.grid.nx == 96);
    CHECK(c.grid.nt == 200); // default kept
    CHECK(c.format == "json");

    CHECK_THROWS_AS(parse_config(R"({"alpha": -1.0})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"lambda_min": 0.0}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"suites": ["nope"]})"), std::invalid_argument);

    // oscillation rule: doubling lambda_max without raising nt warns
    Config base = parse_config(R"({})");
    CHECK(base.warnings.empty());
    Config warned = parse_config(R"({"grid": {"lambda_max": 24.0}})");
    REQUIRE(warned.warnings.size() == 1);
    CHECK(warned.warnings[0].find("oscillation") != std::string::npos);

    // digest changes with the config
    CHECK(config_digest(base) != config_digest(warned));
    CHECK(config_digest(base) == config_digest(parse_config(R"({})")));
}

TEST_CASE("report formatting: 17 significant digits, fixed orders") {
    EstimateReport r;
    r.suite = "demo";
    r.config_digest = "abc";
    r.add_pass_fail("metric_a", 1.0 / 3.0, 0.0, 1e-3, true, "note");
    r.add_measured("metric_b", M_PI);
    const std::string j = report_to_json(r);
    CHECK(j.find("0.33333333333333331") != std::string::npos);
    CHECK(j.find("3.1415926535897931") != std::string::npos);
    CHECK(j.find("\"suite\": \"demo\"") != std::string::npos);
    CHECK(j.find("\"all_pass\": true") != std::string::npos);
    CHECK(j.find("atomic proxy") != std::string::npos); // substitution stated in every header

    const std::string c = report_to_csv(r);
    CHECK(c.rfind("suite,name,value,reference,tolerance,status,note\n", 0) == 0);

    r.add_pass_fail("metric_c", 2.0, 1.0, 0.1, false);
    CHECK_FALSE(r.all_pass());
    CHECK(r.fail_count() == 1);

    CHECK_THROWS_AS(emit_report(r, "xml", "/tmp/x"), std::invalid_argument);
    CHECK_THROWS_AS(emit_report(r, "json", "/nonexistent_dir_zz/x.json"), std::runtime_error);
}

TEST_CASE("csv dumps carry the fixed headers") {
    auto g = quad::build_physical_grid(0.0, 1.0, 1.0, 16, 16);
    auto f = quad::zero_function(g);
    CHECK(grid_to_csv(f).rfind("x,t,re,im\n", 0) == 0);
    auto sg = quad::build_spectral_grid(0.0, 0.1, 1.0, 4, 2);
    auto F = quad::zero_spectral(sg);
    CHECK(spectral_to_csv(F).rfind("lambda,m,re,im\n", 0) == 0);
}

TEST_CASE("verify_core is byte-deterministic across runs and thread counts") {
    Config c = small_config();
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const std::string a = report_to_json(verify_core(c));
#ifdef _OPENMP
    omp_set_num_threads(omp_get_num_procs());
#endif
    const std::string b = report_to_json(verify_core(c));
    CHECK(a == b);
    CHECK(a.find("\"suite\": \"core\"") != std::string::npos);
}

TEST_CASE("suite selection") {
    Config c = small_config();
    c.suites = {"core"};
    auto reports = verify_all(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].suite == "core");
}
