#include "helpers.hpp"

#include "levycouple/bounds.hpp"
#include "levycouple/coupling.hpp"
#include "levycouple/errors.hpp"
#include "levycouple/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace lc;

TEST_CASE("self pair couples to zero distance") {
    StableSpec Z = lct::stable(1.5, lct::sym_sigma());
    LevyFamily Zf = LevyFamily::from_stable(Z);
    CoupledPathPair a = sample_thinning_pair(Zf, Z, 0.1, 1e-2, 11);
    a.check_invariants();
    CHECK(!a.events.empty());
    CHECK(sup_q_distance(a, 1.0) == 0.0);
    for (const auto& e : a.events) CHECK(e.shared);
    CoupledPathPair b = sample_comonotonic_pair(Zf, Z, 0.1, 200.0, 11);
    b.check_invariants();
    CHECK(sup_q_distance(b, 1.0) == 0.0);
    ComonotonicOptions o;
    ComonotonicPlan plan(Zf, Z, 0.1, o);
    for (double x : {1e-3, 1.0, 50.0})
        for (size_t k = 0; k < plan.natoms(); ++k) CHECK(plan.R_diff(x, k) == 0.0);
}

TEST_CASE("samplers are deterministic in the seed") {
    LevyFamily X = lct::tempered(1.5, 1.0);
    StableSpec Z = lct::stable(1.5);
    auto dump = [](const CoupledPathPair& p) {
        std::ostringstream os;
        write_events_csv(p, os);
        return os.str();
    };
    std::string a = dump(sample_thinning_pair(X, Z, 0.01, 1e-2, 5));
    CHECK(a == dump(sample_thinning_pair(X, Z, 0.01, 1e-2, 5)));
    CHECK(a != dump(sample_thinning_pair(X, Z, 0.01, 1e-2, 6)));
    CHECK(a.rfind("time,abs_jump_X,abs_jump_Z,direction_index,shared\n", 0) == 0);
    CHECK(dump(sample_comonotonic_pair(X, Z, 0.01, 100.0, 5)) == dump(sample_comonotonic_pair(X, Z, 0.01, 100.0, 5)));
}

TEST_CASE("sup distance on a hand-built skeleton") {
    CoupledPathPair p;
    p.d = 1;
    p.directions = {Vec::Ones(1)};
    p.drift_X = Vec::Constant(1, -1.0);
    p.drift_Z = Vec::Zero(1);
    p.compensator_X = p.compensator_Z = Vec::Zero(1);
    PathEvent e;
    e.time = 0.5;
    e.mag_X = 2.0;
    e.mag_Z = 0.0;
    p.events = {e};
    // X - Z = -s + 2 1{s >= 1/2}: sup of |.| is 1.5 at s = 1/2
    CHECK(sup_q_distance(p, 1.0) == doctest::Approx(1.5));
    CHECK(sup_q_distance(p, 2.0) == doctest::Approx(2.25));
    CHECK(p.endpoint_X()(0) == doctest::Approx(1.0));
}

TEST_CASE("thinning conditioning pieces") {
    LevyFamily X = lct::tempered(0.5, 1.0);
    StableSpec Z = lct::stable(0.5);
    ThinningOptions o;
    o.delta = 1e-6;
    o.difference_only = true;
    ThinningPlan plan(X, Z, 1e-4, o);
    double m = plan.expected_events();
    CHECK(m > 0.0);
    CHECK(m < 1.0);
    // m counts envelope events, so a conditioned draw may still come back empty after thinning.
    // P(nonempty) computed plainly and through the split must agree.
    int plain = 0, cond = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        Rng r1 = make_rng(1, static_cast<std::uint64_t>(i));
        if (!plan.sample(r1).events.empty()) ++plain;
        Rng r2 = make_rng(2, static_cast<std::uint64_t>(i));
        if (!plan.sample_given_event(r2).events.empty()) ++cond;
    }
    double p1 = -std::expm1(-m);
    double a = plain / double(n), b = p1 * cond / double(n);
    double se = std::sqrt(a * (1 - a) / n + p1 * b * (1 - b / p1) / n);
    CHECK(a > 0.0);
    CHECK(cond > plain);
    CHECK(std::fabs(a - b) < 4.0 * se);
    Rng r3 = make_rng(3);
    CHECK(plan.sample_empty(r3).events.empty());
}

TEST_CASE("thinning first moment sits below the W_q bound") {
    LevyFamily X = lct::tempered(1.5, 1.0, lct::sym_sigma());
    StableSpec Z = lct::stable(1.5, lct::sym_sigma());
    const double t = 0.05, delta = 1e-4;
    ThinningOptions o;
    o.delta = delta;
    o.difference_only = true;
    ThinningPlan plan(X, Z, t, o);
    const int n = 4000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        Rng r = make_rng(9, static_cast<std::uint64_t>(i));
        double v = sup_q_distance(plan.sample(r), 1.0);
        s += v;
        s2 += v * v;
    }
    double mean = s / n, ci = 2.576 * std::sqrt((s2 / n - mean * mean) / n);
    double bound = thinning_bound_wq(X, Z, t, 0.1, 1.0).total;
    CHECK(mean - 3 * ci <= bound);
    CHECK(mean > 0.0);
}

TEST_CASE("marginal characteristic function checks") {
    const int n = 100000;
    std::vector<Vec> grid = log_u_grid({Vec::Ones(1)}, 0.05, 3.0, 12);
    CHECK(grid.size() >= 20);
    LevyFamily B = parse_family({{"kind", "BrownianPlusJumps"}, {"gaussian", {{1.0}}}, {"dim", 1}});
    CHECK(marginal_cf_test(B, 0.5, n, grid, 17) < 5.0 / std::sqrt(double(n)));
    LevyFamily D = parse_family(
        {{"kind", "CompoundPoissonPerturbation"}, {"dim", 1}, {"drift", "explicit"}, {"gamma", {0.7}}});
    CHECK(marginal_cf_test(D, 0.5, 1000, grid, 17) < 1e-12);
    CHECK(cf_u_max(0.0, n, 0.5, 4.0) == 4.0);
    CHECK(cf_u_max(1e-2, 10000, 1.0, 100.0) == doctest::Approx(1.0));
}

TEST_CASE("coupling construction errors") {
    LevyFamily X = lct::tempered(1.5, 1.0);
    StableSpec Z = lct::stable(1.5);
    ThinningOptions o;
    CHECK_THROWS_AS(ThinningPlan(X, Z, 0.0, o), Error);
    o.delta = 1e-12;
    o.max_expected_events = 1e3;
    try {
        ThinningPlan(X, Z, 0.5, o);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}
