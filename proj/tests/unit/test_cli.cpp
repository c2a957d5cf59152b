#include <albaxter/cli.hpp>

#include <doctest.h>

using namespace albaxter;
using namespace albaxter::cli;
using nlohmann::json;

TEST_CASE("config parsing keeps defaults and rejects unknown fields") {
    const RunConfig c = run_config_from_json(json::object());
    CHECK(c.N == 2);
    CHECK(c.m == 1);
    CHECK(c.alpha == cplx(0.5));
    CHECK(c.seed == 7);
    CHECK_THROWS_AS(run_config_from_json(json{{"Nsites", 3}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(json{{"tolerances", {{"abs", 1e-3}}}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(json{{"alpha", 0.5}, {"eta", 1.0}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(json{{"alpha", 1.5}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(json{{"format", "xml"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(json{{"N", "two"}}), ConfigError);
    const RunConfig e = run_config_from_json(json{{"eta", 1.0}, {"mu", json::array({0.2, 0.1})}});
    CHECK(std::abs(e.alpha - 0.5) < 1e-16);
    CHECK(e.mu == cplx(0.2, 0.1));
    const RunConfig rt = run_config_from_json(to_json(e));
    CHECK(to_json(rt) == to_json(e));
}

TEST_CASE("reports obey pass iff residual below tolerance and are reproducible") {
    RunConfig c;
    const Report a = run_verify("classical", c), b = run_verify("classical", c);
    for (const CheckRecord& r : a.checks) CHECK(r.pass == (r.residual < r.tolerance));
    CHECK(report_to_json(a, false).dump() == report_to_json(b, false).dump());
    CHECK(report_to_json(a, true).contains("timing"));
    CHECK_FALSE(report_to_json(a, false).contains("timing"));
    CHECK_THROWS_AS(run_verify("nothing", c), ConfigError);
}

TEST_CASE("residual override applies to identity checks only") {
    RunConfig c;
    c.tolerances.residual = 1e-30;
    const Report r = run_verify("classical", c);
    for (const CheckRecord& x : r.checks) {
        if (x.check_id == "classical.rk4_order")
            CHECK(x.tolerance == 0.5);
        else
            CHECK(x.tolerance == 1e-30);
    }
}

TEST_CASE("csv writers") {
    Report r;
    r.suite = "x";
    r.checks.push_back({"a.b", json{{"k", "v,w"}}, 1e-3, 1e-2, true, "", 0.0});
    const std::string csv = report_to_csv(r);
    CHECK(csv.rfind("# albaxter.report.csv/1\n", 0) == 0);
    CHECK(csv.find("\"{\"\"k\"\":\"\"v,w\"\"}\"") != std::string::npos);
    const json roots = json::array({{{"k", 0}, {"root", {1.0, 0.0}}, {"residual", 0.0}}});
    CHECK(roots_to_csv(roots) == "# albaxter.roots.csv/1\nk,re,im,residual\n0,1,0,0\n");
}

TEST_CASE("bt driver and trajectories") {
    BtRequest req;
    req.config.N = 3;
    req.mus = {0.05, 0.1, 0.2};
    req.canonicity = false;
    const json out = run_bt(req);
    REQUIRE(out["records"].size() == 3);
    for (const json& rec : out["records"]) {
        CHECK(rec["residuals"]["conservation"].get<double>() < 1e-10);
        CHECK(rec["target"]["q"].size() == 3);
    }
    const json deg{{"N", 1}, {"q", {2.0}}, {"r", {0.5}}};
    req.state = deg;
    CHECK_THROWS_AS(run_bt(req), DomainError);

    EvolveRequest ev;
    ev.zero_state = true;
    ev.steps = 2;
    const std::string csv = run_evolve(ev);
    CHECK(csv.find("1,0.01,0,0,0,0,0,0,0,0,1,0,0,0,1,0,1,0,0") != std::string::npos);
}
