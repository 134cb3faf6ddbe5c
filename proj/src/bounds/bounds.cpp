#include "levycouple/bounds.hpp"

#include "levycouple/core.hpp"
#include "levycouple/numerics.hpp"
#include "levycouple/coupling.hpp"
#include "levycouple/errors.hpp"
#include "levycouple/pair_measure.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void finalize(BoundReport& r) {
    r.total = 0.0;
    for (const auto& [k, v] : r.terms) r.total += v;
}

double gaussian_term(const ScaledView& A, const ScaledView& B, double q) {
    double n = (A.gaussian() - B.gaussian()).norm();
    if (n == 0.0) return 0.0;
    return std::pow(2.0, q) * std::pow(static_cast<double>(A.dim()), q / 2.0) * std::pow(n, q);
}

void require_moment(const ScaledView& v, double p, const char* who) {
    if (!std::isfinite(v.moment_all(p, 1.0, kInf)))
        fail(ErrorKind::InfiniteMoment, fmt::format("{}: the {}-th moment of the big jumps is infinite", who, p));
}

}  // namespace

double BoundReport::term(const std::string& label) const {
    for (const auto& [k, v] : terms)
        if (k == label) return v;
    for (const auto& [k, v] : info)
        if (k == label) return v;
    return 0.0;
}

json BoundReport::to_json() const {
    json j;
    j["total"] = total;
    json t = json::object();
    for (const auto& [k, v] : terms) t[k] = v;
    j["terms"] = t;
    json in = json::object();
    for (const auto& [k, v] : info) in[k] = v;
    j["info"] = in;
    j["regime"] = {{"coupling", regime.coupling},
                   {"cutoff_name", regime.cutoff_name},
                   {"cutoff", regime.cutoff},
                   {"q", regime.q},
                   {"t", regime.t}};
    return j;
}

BoundReport thinning_bound_wq(const ScaledView& A, const ScaledView& B, double kappa, double q) {
    if (q > 1.0) fail(ErrorKind::Unsupported, "thinning W_q bound: requires q <= 1");
    if (!(q > 0)) fail(ErrorKind::Domain, "thinning W_q bound: q must be positive");
    if (!(kappa > 0)) fail(ErrorKind::Domain, "thinning W_q bound: kappa must be positive");
    require_moment(A, q, "thinning W_q bound");
    require_moment(B, q, "thinning W_q bound");
    PairMeasure pm(A, B);
    BoundReport r;
    r.regime = {"thinning", "kappa", kappa, q, A.t};
    Vec dg = A.gamma_kappa(kappa) - B.gamma_kappa(kappa);
    r.terms.emplace_back(kTermDrift, std::pow(dg.norm(), q));
    r.terms.emplace_back(kTermGaussian, gaussian_term(A, B, q));
    r.terms.emplace_back(kTermSmall, std::pow(4.0 * pm.abs_diff_moment_all(2.0, 0.0, kappa), q / 2.0));
    r.terms.emplace_back(kTermBig, pm.abs_diff_moment_all(q, kappa, kInf));
    if (std::isfinite(A.moment_all(1.0, 1.0, kInf)) && std::isfinite(B.moment_all(1.0, 1.0, kInf)))
        r.info.emplace_back(kTermMeanShift, pm.signed_first_moment(kappa, kInf).norm());
    finalize(r);
    return r;
}

BoundReport thinning_bound_wq(const LevyFamily& X, const StableSpec& target, double t, double kappa, double q) {
    LevyFamily Z = LevyFamily::from_stable(target);
    return thinning_bound_wq(ScaledView(X, t, scale_g(X, target, t)), ScaledView(Z, 1.0, 1.0), kappa, q);
}

BoundReport thinning_bound_w2(const ScaledView& A, const ScaledView& B, double kappa) {
    if (!(kappa > 0)) fail(ErrorKind::Domain, "thinning W_2 bound: kappa must be positive");
    require_moment(A, 2.0, "thinning W_2 bound");
    require_moment(B, 2.0, "thinning W_2 bound");
    PairMeasure pm(A, B);
    BoundReport r;
    r.regime = {"thinning", "kappa", kappa, 2.0, A.t};
    Vec m = pm.signed_first_moment(kappa, kInf);
    Vec dg = A.gamma_kappa(kappa) - B.gamma_kappa(kappa);
    r.terms.emplace_back(kTermDrift, (dg + m).norm());
    double dS = (A.gaussian() - B.gaussian()).norm();
    r.terms.emplace_back(kTermGaussian, 2.0 * std::sqrt(static_cast<double>(A.dim())) * dS);
    r.terms.emplace_back(kTermSmall, 2.0 * std::sqrt(pm.abs_diff_moment_all(2.0, 0.0, kInf)));
    r.terms.emplace_back(kTermBig, 0.0);
    r.info.emplace_back(kTermMeanShift, m.norm());
    finalize(r);
    return r;
}

BoundReport thinning_bound_w2(const LevyFamily& X, const StableSpec& target, double t, double kappa) {
    LevyFamily Z = LevyFamily::from_stable(target);
    return thinning_bound_w2(ScaledView(X, t, scale_g(X, target, t)), ScaledView(Z, 1.0, 1.0), kappa);
}

BoundReport comono_bound_wq(const LevyFamily& X, const StableSpec& target, double t, double eps, double q) {
    if (q > 1.0) fail(ErrorKind::Unsupported, "comonotonic W_q bound: requires q <= 1");
    if (!(q > 0)) fail(ErrorKind::Domain, "comonotonic W_q bound: q must be positive");
    if (!(eps > 0)) fail(ErrorKind::Domain, "comonotonic W_q bound: eps must be positive");
    {
        ScaledView v(X, t, scale_g(X, target, t));
        require_moment(v, q, "comonotonic W_q bound");
        if (!target.gaussian() && q >= target.alpha)
            fail(ErrorKind::InfiniteMoment, "comonotonic W_q bound: q must be below the target index");
    }
    ComonotonicOptions o;
    o.gamma_max = eps;
    o.max_expected_events = kInf;
    ComonotonicPlan plan(X, target, t, o);
    BoundReport r;
    r.regime = {"comonotonic", "eps", eps, q, t};
    r.terms.emplace_back(kTermDrift, std::pow((plan.slope_X() - plan.slope_Z()).norm(), q));
    double gn = plan.gauss_X().size() ? plan.gauss_X().norm() : 0.0;
    r.terms.emplace_back(kTermGaussian,
                         gn > 0 ? std::pow(2.0, q) * std::pow(static_cast<double>(X.d), q / 2.0) * std::pow(gn, q) : 0.0);
    r.terms.emplace_back(kTermSmall, std::pow(plan.residual(), q / 2.0));
    double big = plan.q_diff_integral(q, 0.0, eps);
    for (const auto& m : plan.point_masses()) big += m.mass * std::pow(m.w.norm(), q);
    r.terms.emplace_back(kTermBig, big);
    finalize(r);
    return r;
}

const char* rate_regime_name(RateRegime r) {
    switch (r) {
    case RateRegime::NormalThinning: return "normal-thinning";
    case RateRegime::NormalComonotonic: return "normal-comonotonic";
    case RateRegime::NonNormal: return "nonnormal";
    case RateRegime::Gaussian: return "gaussian";
    }
    return "?";
}

RateRegime parse_rate_regime(const std::string& s) {
    if (s == "normal-thinning") return RateRegime::NormalThinning;
    if (s == "normal-comonotonic") return RateRegime::NormalComonotonic;
    if (s == "nonnormal") return RateRegime::NonNormal;
    if (s == "gaussian") return RateRegime::Gaussian;
    fail(ErrorKind::Config, "unknown rate regime '" + s + "'");
}

namespace {

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

void check_stable_args(double alpha, double q, const char* who) {
    if (!(alpha > 0 && alpha < 2) || alpha == 1.0)
        fail(ErrorKind::Unsupported, fmt::format("{}: alpha must lie in (0,2) and differ from 1", who));
    if (!(q > 0) || q > 1.0 || !(q < alpha))
        fail(ErrorKind::Unsupported, fmt::format("{}: q must lie in (0,1] and below alpha", who));
}

}  // namespace

RatePrediction rate_exponent_upper(RateRegime regime, double alpha, double q, double p, double delta,
                                   double beta_star) {
    RatePrediction rp;
    rp.source = rate_regime_name(regime);
    switch (regime) {
    case RateRegime::NormalThinning: {
        check_stable_args(alpha, q, "normal thinning rate");
        if (!(p > 0)) fail(ErrorKind::Unsupported, "normal thinning rate: p must be positive");
        if (alpha > 1.0) {
            rp.exponent = std::min(p / 2.0, alpha - 1.0) * q / alpha;
            if (near(p + q, alpha)) {
                rp.log_factor = true;
                rp.log_power = 1.0;
            } else if (near(p + 1.0, alpha)) {
                rp.log_factor = true;
                rp.log_power = q;
            }
        } else if (alpha > p + q && !near(alpha, p + q)) {
            rp.r = p / (alpha * (alpha - p));
            rp.exponent = std::min(1.0 - q / alpha, p * q / (alpha * (alpha - p)));
        } else {
            // ties alpha = p + q fall here: the branch without a log factor
            rp.r = std::max(0.0, (alpha - q * (p + 1.0)) / (alpha * q * (p + 1.0 - alpha)));
            rp.exponent = 1.0 - q / alpha;
        }
        return rp;
    }
    case RateRegime::NormalComonotonic:
        check_stable_args(alpha, q, "normal comonotonic rate");
        if (!(p > 0)) fail(ErrorKind::Unsupported, "normal comonotonic rate: p must be positive");
        rp.exponent = alpha < 1.0 ? std::min(p * q / alpha, 1.0 - q / alpha)
                                  : q * std::min(p / alpha, 1.0 - 1.0 / alpha);
        return rp;
    case RateRegime::NonNormal:
        check_stable_args(alpha, q, "non-normal rate");
        if (!(p > 0) || !(delta > 0)) fail(ErrorKind::Unsupported, "non-normal rate: p and delta must be positive");
        if (near(p, alpha - 1.0)) fail(ErrorKind::Unsupported, "non-normal rate: p = alpha - 1 is excluded");
        if (near(q, alpha / (p + 1.0)) || near(q, alpha / (alpha * delta + 1.0)))
            fail(ErrorKind::Unsupported,
                 "non-normal rate: q hits an excluded value; a slightly smaller p or delta avoids it");
        rp.exponent = 0.0;
        rp.log_factor = true;
        rp.log_power = q;  // slowly varying G_2(t)^q
        return rp;
    case RateRegime::Gaussian: {
        if (!(q > 0)) fail(ErrorKind::Unsupported, "gaussian rate: q must be positive");
        if (!(beta_star >= 0) || beta_star > 2.0) fail(ErrorKind::Unsupported, "gaussian rate: beta_* must lie in [0,2]");
        double inv_b = beta_star > 0 ? 1.0 / beta_star : kInf;
        rp.exponent = std::min(q, 1.0) * (std::min(1.0 / q, inv_b) - 0.5);
        return rp;
    }
    }
    fail(ErrorKind::Unsupported, "rate: unknown regime");
}

double exp_gap(cplx a, cplx b) {
    cplx d = a - b;
    if (std::abs(d) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) return 0.0;
    // e^d - 1 = expm1(x) e^{iy} + (e^{iy} - 1)
    cplx em = std::expm1(d.real()) * std::polar(1.0, d.imag()) + cplx(cosm1(d.imag()), std::sin(d.imag()));
    return std::exp(b.real()) * std::abs(em);
}

double toscani_lower(const LevyFamily& A, const LevyFamily& B, double q, double t, const std::vector<Vec>& u_grid,
                     double alpha) {
    if (!(q > 0) || q > 1.0) fail(ErrorKind::Domain, "toscani lower bound: q must lie in (0,1]");
    double s = std::pow(t, 1.0 / alpha);
    double best = 0.0;
    for (const auto& u : u_grid) {
        double un = u.norm();
        if (un == 0.0) continue;
        double gap = exp_gap(t * char_exponent(A, u), t * char_exponent(B, u));
        best = std::max(best, std::pow(2.0, q - 1.0) * gap / std::pow(s * un, q));
    }
    return best;
}

double toscani_lower(const LevyFamily& A, const LevyFamily& B, double q, double t, const std::vector<Vec>& u_grid) {
    double alpha = B.has_co() ? B.alpha : 2.0;
    return toscani_lower(A, B, q, t, u_grid, alpha);
}

std::vector<Vec> log_u_grid(const std::vector<Vec>& dirs, double r0, double r1, int per_decade) {
    std::vector<Vec> out;
    int n = std::max(1, static_cast<int>(std::ceil(std::log10(r1 / r0) * per_decade)));
    for (const auto& d : dirs)
        for (int i = 0; i <= n; ++i) out.push_back(r0 * std::pow(r1 / r0, static_cast<double>(i) / n) * d);
    return out;
}

double lower_bound_nonnormal(const SlowVarSpec& G, double q, double t, double zmoment) {
    if (!(q > 0) || q > 1.0) fail(ErrorKind::Domain, "non-normal lower bound: q must lie in (0,1]");
    if (!(t > 0) || t > 1.0) fail(ErrorKind::Domain, "non-normal lower bound: t must lie in (0,1]");
    double a = G.a(t);
    // |1 - a^q| = |expm1(q log a)| keeps precision when a is close to 1
    return std::fabs(std::expm1(q * std::log(a))) * zmoment / 3.0;
}

double lower_bound_gaussian(const LevyFamily& X, double t, GaussianVariant v, const GaussianLowerParams& prm) {
    LevyFamily S = jump_part(X);
    bool trivial = !S.has_co() && S.perturbation.empty() && ScaledView(S, 1.0, 1.0).gamma_natural().norm() == 0.0;
    if (v == GaussianVariant::A) {
        if (trivial) return 0.0;
        double C = 0.0;
        for (const auto& u : prm.u_star)
            if (u.norm() > 0) C = std::max(C, std::abs(char_exponent(S, u)) / u.norm());
        return C / std::sqrt(2.0) * std::sqrt(t);
    }
    if (!(prm.delta >= 1.0 && prm.delta < 2.0)) fail(ErrorKind::Domain, "gaussian lower bound: delta must lie in [1,2)");
    if (prm.ray.size() != X.d || std::fabs(prm.ray.norm() - 1.0) > 1e-12)
        fail(ErrorKind::Domain, "gaussian lower bound: ray must be a unit vector");
    double c = kInf;
    int n = static_cast<int>(std::ceil(std::log10(prm.r_max) * 40.0));
    for (int i = 0; i <= n; ++i) {
        double r = std::pow(prm.r_max, static_cast<double>(i) / n) * (1.0 + 1e-12);
        c = std::min(c, std::pow(r, -prm.delta) * std::abs(char_exponent(S, r * prm.ray)));
    }
    if (!(c > 0)) fail(ErrorKind::Unsupported, "gaussian lower bound: the infimum constant vanishes");
    double lam = 0.0;
    if (X.gaussian.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Mat> es(X.gaussian * X.gaussian.transpose());
        lam = es.eigenvalues().maxCoeff();
    }
    // any constant below c e^{-lambda/2} is admissible
    double Cs = 0.99 * c * std::exp(-lam / 2.0);
    return Cs / std::sqrt(2.0) * std::pow(t, 1.0 - prm.delta / 2.0);
}

MomentEstimate stable_q_moment(const StableSpec& target, double q, int n, std::uint64_t seed) {
    if (!(q > 0)) fail(ErrorKind::Domain, "stable q-moment: q must be positive");
    if (!target.gaussian() && q >= target.alpha)
        fail(ErrorKind::InfiniteMoment, "stable q-moment: q must be below alpha");
    if (n < 2) fail(ErrorKind::Domain, "stable q-moment: need at least two draws");
    auto xs = sample_marginal(LevyFamily::from_stable(target), 1.0, n, seed);
    double s = 0.0, s2 = 0.0;
    for (const auto& x : xs) {
        double v = std::pow(x.norm(), q);
        s += v;
        s2 += v * v;
    }
    double m = s / n;
    double var = std::max(0.0, (s2 / n - m * m) * n / (n - 1.0));
    return {m, 2.5758293035489004 * std::sqrt(var / n)};
}

TwoScaleCheck two_scale_lower_check(double wq_t, double wq_2t, const SlowVarSpec& G, double q, double t, double zmoment,
                                    double alpha) {
    double a = G.a(t);
    TwoScaleCheck c;
    c.lhs = std::pow(2.0, 1.0 - q / alpha) * wq_t + std::pow(a, q) * wq_2t;
    c.rhs = std::fabs(std::expm1(q * std::log(a))) * zmoment;
    c.holds = c.lhs >= c.rhs;
    return c;
}

}  // namespace lc
