#include "helpers.hpp"

#include "levycouple/bounds.hpp"
#include "levycouple/core.hpp"
#include "levycouple/errors.hpp"
#include "levycouple/pair_measure.hpp"

#include <doctest.h>

#include <cmath>
#include <tuple>

using namespace lc;
using lct::rel;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Degenerate;  // nothing thrown
}

}  // namespace

TEST_CASE("W2 small-jump term, tempered against tempered, Riemann oracle") {
    const double alpha = 1.5;
    LevyFamily X = lct::tempered(alpha, 1.0), Y = lct::tempered(alpha, 2.0);
    ScaledView A(X, 1.0, 1.0), B(Y, 1.0, 1.0);
    // int y^2 |nu_X - nu_Y|(dy) = Gamma(2 - a)(1 - 2^{a - 2})
    double closed = std::tgamma(2.0 - alpha) * (1.0 - std::pow(2.0, alpha - 2.0));
    double la = std::log(1e-14), lb = std::log(80.0);
    const int n = 2000000;
    double h = (lb - la) / n, riemann = 0.0;
    for (int i = 0; i < n; ++i) {
        double y = std::exp(la + (i + 0.5) * h);
        riemann += y * y * (std::exp(-y) - std::exp(-2 * y)) * std::pow(y, -alpha - 1) * y;
    }
    riemann *= h;
    CHECK(rel(riemann, closed) < 1e-6);
    PairMeasure pm(A, B);
    CHECK(rel(pm.abs_diff_moment_all(2.0, 0.0, INFINITY), riemann) < 1e-6);
    BoundReport r = thinning_bound_w2(A, B, 0.1);
    CHECK(rel(r.term(kTermSmall), 2.0 * std::sqrt(riemann)) < 1e-6);
    CHECK(r.term(kTermBig) == 0.0);
    double sum = 0.0;
    for (const auto& [k, v] : r.terms) sum += v;
    CHECK(r.total == doctest::Approx(sum).epsilon(1e-15));
}

TEST_CASE("bounds vanish for a process equal to its target") {
    StableSpec Z = lct::stable(1.5, lct::sym_sigma());
    LevyFamily Zf = LevyFamily::from_stable(Z);
    for (double t : {0.5, 1e-3}) {
        CHECK(thinning_bound_wq(Zf, Z, t, 0.1, 1.0).total == 0.0);
        CHECK(thinning_bound_wq(Zf, Z, t, 0.1, 0.5).total == 0.0);
        CHECK(comono_bound_wq(Zf, Z, t, 1.0, 1.0).total == 0.0);
    }
    auto grid = log_u_grid({Vec::Ones(1), -Vec::Ones(1)}, 1e-2, 1e2, 10);
    CHECK(toscani_lower(Zf, Zf, 1.0, 0.01, grid) == 0.0);
}

TEST_CASE("upper bound regime errors") {
    LevyFamily X = lct::tempered(1.5, 1.0);
    StableSpec Z = lct::stable(1.5);
    CHECK(kind_of([&] { thinning_bound_wq(X, Z, 0.1, 0.1, 1.5); }) == ErrorKind::Unsupported);
    CHECK(kind_of([&] { comono_bound_wq(X, Z, 0.1, 1.0, 1.5); }) == ErrorKind::Unsupported);
    CHECK(kind_of([&] { comono_bound_wq(lct::tempered(0.8, 1.0), lct::stable(0.8), 0.1, 1.0, 0.9); }) ==
          ErrorKind::InfiniteMoment);
    LevyFamily S = lct::stable_family(0.5);
    CHECK(kind_of([&] { thinning_bound_w2(S, lct::stable(0.5), 0.1, 0.1); }) == ErrorKind::InfiniteMoment);
}

TEST_CASE("rate exponent table") {
    struct Row {
        RateRegime reg;
        double alpha, q, p, delta, beta;
        double exponent;
        bool log;
        double log_power;
    };
    const Row rows[] = {
        {RateRegime::NormalThinning, 1.5, 1.0, 1.0, 1.0, 0.0, 1.0 / 3.0, false, 0.0},
        {RateRegime::NormalThinning, 1.5, 0.25, 1.0, 1.0, 0.0, 1.0 / 12.0, false, 0.0},
        {RateRegime::NormalThinning, 1.5, 1.0, 0.5, 1.0, 0.0, 1.0 / 6.0, true, 1.0},     // p + q = alpha
        {RateRegime::NormalThinning, 1.5, 0.25, 0.5, 1.0, 0.0, 1.0 / 24.0, true, 0.25},  // p + 1 = alpha
        {RateRegime::NormalThinning, 1.8, 1.0, 2.0, 1.0, 0.0, 4.0 / 9.0, false, 0.0},
        {RateRegime::NormalThinning, 0.5, 0.25, 1.0, 1.0, 0.0, 0.5, false, 0.0},
        {RateRegime::NormalThinning, 0.9, 0.2, 0.5, 1.0, 0.0, 5.0 / 18.0, false, 0.0},
        {RateRegime::NormalComonotonic, 1.5, 1.0, 1.0, 1.0, 0.0, 1.0 / 3.0, false, 0.0},
        {RateRegime::NormalComonotonic, 0.5, 0.25, 1.0, 1.0, 0.0, 0.5, false, 0.0},
        {RateRegime::NonNormal, 1.5, 1.0, 1.0, 1.0, 0.0, 0.0, true, 1.0},
        {RateRegime::Gaussian, 2.0, 1.0, 1.0, 1.0, 1.6, 0.125, false, 0.0},
        {RateRegime::Gaussian, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, false, 0.0},
    };
    for (const auto& r : rows) {
        CAPTURE(rate_regime_name(r.reg));
        CAPTURE(r.alpha);
        CAPTURE(r.q);
        CAPTURE(r.p);
        RatePrediction rp = rate_exponent_upper(r.reg, r.alpha, r.q, r.p, r.delta, r.beta);
        CHECK(rp.exponent == doctest::Approx(r.exponent).epsilon(1e-14));
        CHECK(rp.log_factor == r.log);
        if (r.log) CHECK(rp.log_power == r.log_power);
    }
    // alpha < p + q keeps r = 0 in the thinning branch; alpha > p + q gives a positive exponent r
    CHECK(*rate_exponent_upper(RateRegime::NormalThinning, 0.5, 0.25, 1.0, 1.0, 0.0).r == 0.0);
    CHECK(*rate_exponent_upper(RateRegime::NormalThinning, 0.9, 0.2, 0.5, 1.0, 0.0).r ==
          doctest::Approx(0.5 / (0.9 * 0.4)));
    CHECK(kind_of([] { rate_exponent_upper(RateRegime::NonNormal, 1.5, 1.0, 0.5, 1.0, 0.0); }) ==
          ErrorKind::Unsupported);
    CHECK(parse_rate_regime(rate_regime_name(RateRegime::Gaussian)) == RateRegime::Gaussian);
}

TEST_CASE("q = 1 upper and lower exponents coincide") {
    // needs p / 2 >= alpha - 1
    for (double alpha : {1.2, 1.5, 1.9}) {
        double up = rate_exponent_upper(RateRegime::NormalThinning, alpha, 1.0, 2.0, 1.0, 0.0).exponent;
        CHECK(up == doctest::Approx(1.0 - 1.0 / alpha).epsilon(1e-14));
    }
}

TEST_CASE("Toscani lower bound is symmetric in its arguments") {
    LevyFamily X = lct::tempered(1.5, 1.0, lct::sym_sigma());
    LevyFamily Z = lct::stable_family(1.5, lct::sym_sigma());
    auto grid = log_u_grid({Vec::Ones(1), -Vec::Ones(1)}, 1e-2, 1e2, 10);
    for (double t : {0.1, 1e-4}) {
        double a = toscani_lower(X, Z, 1.0, t, grid, 1.5), b = toscani_lower(Z, X, 1.0, t, grid, 1.5);
        CHECK(a > 0.0);
        CHECK(rel(a, b) < 1e-12);
    }
    CHECK(exp_gap(cplx(0.3, 0.1), cplx(0.3, 0.1)) == 0.0);
    CHECK(exp_gap(cplx(0.0, 0.0), cplx(1e-10, 0.0)) == doctest::Approx(1e-10).epsilon(1e-8));
}

TEST_CASE("two-scale check arithmetic") {
    SlowVarSpec G = SlowVarSpec::log_power(1, {1.0});
    double t = 1e-4, a = G.a(t);
    TwoScaleCheck c = two_scale_lower_check(0.2, 0.3, G, 1.0, t, 0.9, 1.5);
    CHECK(c.lhs == doctest::Approx(std::pow(2.0, 1.0 - 1.0 / 1.5) * 0.2 + a * 0.3));
    CHECK(c.rhs == doctest::Approx(std::fabs(1.0 - a) * 0.9));
    CHECK(c.holds);
    CHECK(lower_bound_nonnormal(SlowVarSpec::constant(1.0), 1.0, t, 1.0) == 0.0);
}

TEST_CASE("Gaussian lower bounds") {
    LevyFamily B = parse_family({{"kind", "BrownianPlusJumps"}, {"gaussian", {{1.0}}}, {"dim", 1}});
    GaussianLowerParams prm;
    prm.u_star = {Vec::Ones(1)};
    prm.ray = Vec::Ones(1);
    CHECK(lower_bound_gaussian(B, 0.01, GaussianVariant::A, prm) == 0.0);
    LevyFamily BJ = parse_family({{"kind", "BrownianPlusJumps"},
                                  {"alpha", 0.5},
                                  {"c_alpha", 1.0},
                                  {"sigma", lct::sym_sigma()},
                                  {"profile", "tempered"},
                                  {"lambda", 1.0},
                                  {"gaussian", {{1.0}}},
                                  {"drift", "zero-natural-drift"}});
    double a1 = lower_bound_gaussian(BJ, 1e-2, GaussianVariant::A, prm);
    double a2 = lower_bound_gaussian(BJ, 1e-4, GaussianVariant::A, prm);
    CHECK(a1 > 0.0);
    CHECK(a2 / a1 == doctest::Approx(0.1).epsilon(1e-2));  // sqrt(t) scaling at fixed u
}

TEST_CASE("stable q-moment estimate is reproducible") {
    StableSpec Z = lct::stable(1.5, lct::sym_sigma());
    MomentEstimate a = stable_q_moment(Z, 0.5, 5000, 3), b = stable_q_moment(Z, 0.5, 5000, 3);
    CHECK(a.estimate == b.estimate);
    CHECK(a.estimate > 0.0);
    CHECK(a.ci_halfwidth < 0.1 * a.estimate);
}
