#include "helpers.hpp"

#include "levycouple/cli.hpp"
#include "levycouple/errors.hpp"
#include "levycouple/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

using namespace lc;

namespace {

json small_config() {
    ExperimentConfig c = builtin_config("normal-tempered-1.5");
    json j = c.to_json();
    j["t_grid"] = {0.25, 0.125, 0.0625, 0.03125};
    j["n_paths"] = 300;
    return j;
}

std::string csv(const RateTable& t) {
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

ErrorKind parse_kind(const json& j) {
    try {
        parse_experiment(j);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Degenerate;
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "levycouple");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("log-log fit on synthetic rows") {
    std::vector<double> t, flat, power;
    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd;
    for (int k = 2; k <= 16; ++k) {
        double x = std::ldexp(1.0, -k);
        t.push_back(x);
        flat.push_back(0.7);
        power.push_back(std::cbrt(x) * (1.0 + 0.01 * nd(rng)));
    }
    CHECK(std::fabs(fit_loglog(t, flat).slope) < 1e-12);
    RateFit f = fit_loglog(t, power);
    CHECK(f.slope >= 0.3);
    CHECK(f.slope <= 0.37);
    CHECK(f.used == 15);
    try {
        fit_loglog({0.1, 0.01, 0.001}, {1, 2, 3});
        FAIL("expected insufficient data");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientData);
    }
}

TEST_CASE("experiment config validation") {
    json j = small_config();
    CHECK_NOTHROW(parse_experiment(j));
    json bad = j;
    bad["unexpected"] = 1;
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad["q"] = 0.0;
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad["t_grid"] = {0.5, 1.5};
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad["n_paths"] = 10.5;
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad["cutoffs"]["delta"] = -1.0;
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad["coupling"] = "gaussian";
    CHECK(parse_kind(bad) == ErrorKind::Config);
    bad = j;
    bad.erase("seed");
    CHECK(parse_kind(bad) == ErrorKind::Config);
    CHECK_THROWS_AS(load_experiment("/nonexistent/config.json"), Error);
    // the grid is stored in decreasing order
    json inc = j;
    inc["t_grid"] = {0.01, 0.1, 0.05};
    ExperimentConfig c = parse_experiment(inc);
    CHECK(c.t_grid == std::vector<double>{0.1, 0.05, 0.01});
}

TEST_CASE("config digest ignores name and output") {
    ExperimentConfig a = parse_experiment(small_config());
    json j = small_config();
    j["name"] = "other";
    j["output"] = "x.csv";
    CHECK(parse_experiment(j).digest() == a.digest());
    j["seed"] = 99;
    CHECK(parse_experiment(j).digest() != a.digest());
    // round trip through JSON
    CHECK(parse_experiment(a.to_json()).digest() == a.digest());
}

TEST_CASE("rate table bytes are reproducible across thread counts") {
    ExperimentConfig c = parse_experiment(small_config());
    RunOptions o1, o3;
    o1.threads = 1;
    o3.threads = 3;
    o1.zmoment_draws = o3.zmoment_draws = 2000;
    std::string a = csv(estimate_wq_curve(c, o1));
    CHECK(a == csv(estimate_wq_curve(c, o3)));
    std::istringstream is(a);
    std::string l1, l2, l3;
    std::getline(is, l1);
    std::getline(is, l2);
    std::getline(is, l3);
    CHECK(l1.rfind("# digest=" + c.digest(), 0) == 0);
    CHECK(l2 == "t,mean,ci99,upper,lower,residual,n");
    CHECK(l3.rfind("2.50000000000000000e-01,", 0) == 0);
}

TEST_CASE("self config gives an all-zero table and passes") {
    ExperimentConfig c = builtin_config("self");
    c.n_paths = 50;
    RateTable t = estimate_wq_curve(c);
    for (const auto& r : t.rows) {
        CHECK(r.mean == 0.0);
        CHECK(r.upper == 0.0);
        CHECK(r.lower == 0.0);
        CHECK(r.residual == 0.0);
    }
    CHECK(verify_sandwich(t).pass);
}

TEST_CASE("sandwich flags rows that break an inequality") {
    RateTable t;
    t.q = 1.0;
    for (int k = 1; k <= 5; ++k) {
        RateRow r;
        r.t = std::ldexp(1.0, -k);
        r.mean = 1.0;
        r.ci99 = 0.01;
        r.upper = 2.0;
        r.lower = 0.5;
        r.n = 10;
        t.rows.push_back(r);
    }
    CHECK(verify_sandwich(t).pass);
    t.rows[2].lower = 1.2;
    SandwichReport rep = verify_sandwich(t);
    CHECK(!rep.pass);
    CHECK(!rep.rows[2].lower_ok);
    t.rows[2].lower = 0.5;
    t.rows[3].upper = 0.9;
    CHECK(!verify_sandwich(t).rows[3].upper_ok);
    t.rows[3].residual = 0.2;
    CHECK(verify_sandwich(t).rows[3].upper_ok);
}

TEST_CASE("analytic slopes agree at q = 1") {
    ExperimentConfig c = builtin_config("normal-tempered-1.5");
    std::vector<double> up, lo;
    for (double t : c.t_grid) {
        up.push_back(analytic_upper(c, t));
        lo.push_back(analytic_lower(c, t, 0.0));
    }
    double su = fit_loglog(c.t_grid, up).slope, sl = fit_loglog(c.t_grid, lo).slope;
    CHECK(std::fabs(su - sl) < 0.1);
    for (size_t i = 0; i < up.size(); ++i) CHECK(lo[i] <= up[i]);
}

TEST_CASE("two-scale rows follow the table") {
    RateTable t;
    t.q = 1.0;
    for (int k = 1; k <= 4; ++k) {
        RateRow r;
        r.t = std::ldexp(1.0, -k);
        r.mean = 0.5;
        t.rows.push_back(r);
    }
    auto rows = two_scale_rows(t, SlowVarSpec::log_power(1, {1.0}), 1.5, 1.0);
    CHECK(rows.size() == 3);  // the largest t has no 2t partner
    for (const auto& r : rows) CHECK(r.holds);
}

TEST_CASE("command line exit codes") {
    CHECK(cli({"rate", "--config", "missing.json"}) == 2);
    CHECK(cli({"nonsense"}) == 2);
    CHECK(cli({"rate", "--builtin", "no-such-config"}) == 2);
    std::string out = "cli_test_figure1.csv";
    CHECK(cli({"figure1", "--out", out}) == 0);
    std::ifstream in(out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "beta,upper_exponent,lower_exponent");
    CHECK(first == "1,0.5,0.5");
    std::remove(out.c_str());

    std::string cfg = "cli_test_self.json";
    {
        ExperimentConfig c = builtin_config("self");
        json j = c.to_json();
        j["n_paths"] = 20;
        std::ofstream f(cfg);
        f << j.dump();
    }
    std::string rep = "cli_test_report.json";
    CHECK(cli({"verify", "--config", cfg, "--out", rep}) == 0);
    {
        std::ofstream f(cfg);
        f << R"({"process": {}})";
    }
    CHECK(cli({"verify", "--config", cfg}) == 2);
    std::remove(cfg.c_str());
    std::remove(rep.c_str());
}
