#include "levycouple/core.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double stable_inverse_tail(double u, const Vec& v, const StableSpec& spec) {
    (void)v;
    if (spec.alpha >= 2.0) fail(ErrorKind::Unsupported, "stable_inverse_tail: alpha = 2 has no jump part");
    if (!(u > 0)) fail(ErrorKind::Domain, "stable_inverse_tail: u must be positive");
    return std::pow(spec.c_alpha / spec.alpha, 1.0 / spec.alpha) * std::pow(u, -1.0 / spec.alpha);
}

double radial_inverse_tail(const RadialProfile& profile, double u) { return profile.inverse(u); }

double radial_inverse_tail(const LevyFamily& f, double u, const Vec& v) {
    int j = f.has_co() ? f.sigma.find(v) : -1;
    if (j < 0) return 0.0;
    return f.profiles[static_cast<size_t>(j)].inverse(u);
}

BgIndex bg_index(const LevyFamily& f) {
    BgIndex r;
    if (!f.has_co()) return r;
    r.beta = f.alpha;
    bool finite = std::all_of(f.profiles.begin(), f.profiles.end(), [](const RadialProfile& p) { return p.ibeta_finite(); });
    if (finite) {
        r.beta_plus = r.beta;
    } else {
        double upper = r.beta < 1.0 ? 1.0 : 2.0;
        r.beta_plus = std::min(r.beta + f.beta_eps, 0.5 * (r.beta + upper));
    }
    return r;
}

double small_jump_moment(const LevyFamily& f, double p) { return ScaledView(f, 1.0, 1.0).moment_all(p, 0.0, 1.0); }

LevyFamily jump_part(const LevyFamily& f) {
    LevyFamily s = f;
    s.gaussian = Mat();
    return s;
}

MomentBound sup_moment_bound_terms(const LevyFamily& f, double p, double t) {
    if (!(p > 0)) fail(ErrorKind::Domain, "sup_moment_bound: p must be positive");
    if (!(t > 0) || t > 1) fail(ErrorKind::Domain, "sup_moment_bound: t must lie in (0,1]");
    ScaledView v(f, 1.0, 1.0);
    MomentBound mb;
    BgIndex bg = bg_index(f);
    mb.beta_plus = bg.beta_plus;

    double Ip_big = v.moment_all(p, 1.0, kInf);
    if (!std::isfinite(Ip_big)) fail(ErrorKind::InfiniteMoment, "sup_moment_bound: p-th moment of big jumps is infinite");

    const int d = f.d;
    const double pp = std::max(p - 1.0, 0.0);
    double sig = f.gaussian.size() > 0 ? f.gaussian.norm() : 0.0;
    double Mp = p > 1.0 ? std::pow(p / (p - 1.0), p) * std::pow(2.0, p / 2.0) *
                              std::exp(std::lgamma((d + p) / 2.0) - std::lgamma(d / 2.0))
                        : std::pow(4.0 * d, p / 2.0);
    double C1 = sig > 0 ? std::pow(sig, p) * Mp : 0.0;
    double C2 = 0.0, C3 = 0.0;
    int m = (C1 > 0) ? 1 : 0;
    const int n = static_cast<int>(std::ceil(p));

    if (bg.beta_plus > 0) {
        double bp = bg.beta_plus;
        double I = small_jump_moment(f, bp);
        // drift term
        double dC2 = 0.0, dC3 = 0.0;
        if (bp >= 1.0) {
            double a = v.gamma_kappa(1.0).norm();
            double A = (a > 0 && I > 0) ? std::pow(2.0, pp) : 1.0;
            dC2 = a > 0 ? A * std::pow(a, p) : 0.0;
            dC3 = I > 0 ? A * std::pow(I, p) : 0.0;
        } else {
            double a0 = v.gamma_natural().norm();
            double A = (a0 > 0 && I > 0) ? std::pow(2.0, pp) : 1.0;
            dC2 = a0 > 0 ? A * std::pow(a0, p) : 0.0;
            dC3 = I > 0 ? A * std::pow(I, p) : 0.0;
        }
        if (dC2 > 0 || dC3 > 0) ++m;
        C2 += dC2;
        C3 += dC3;
        // compensated small jumps
        if (I > 0) {
            double ex = std::exp(d * std::exp(std::sqrt(static_cast<double>(d))) * I) * std::pow(2.0, d);
            double Dc = p > 1.0 ? std::pow(p * p / (std::exp(1.0) * (p - 1.0)), p) * ex
                                : std::pow(std::pow(4.0 / std::exp(1.0), 2.0) * ex, p / 2.0);
            C3 += Dc;
            ++m;
        }
        // big jumps
        double nuA1 = v.moment_all(0.0, 1.0, kInf);
        double Imax = small_jump_moment(f, std::max(bp, p));
        double S = 0.0;
        for (int k = 1; k <= n; ++k) S += stirling2(n, k) * std::pow(nuA1 + I, k - 1);
        double J = (Ip_big + Imax) * S;
        if (J > 0) {
            C3 += J;
            ++m;
        }
    } else {
        double g0 = v.gamma_natural().norm();
        if (g0 > 0) {
            C2 = std::pow(g0, p);
            ++m;
        }
        double total = v.moment_all(0.0, 0.0, kInf);
        double mom = v.moment_all(p, 0.0, kInf);
        if (total > 0) {
            double S = 0.0;
            for (int k = 1; k <= n; ++k) S += stirling2(n, k) * std::pow(total, k - 1);
            C3 = std::pow(static_cast<double>(d), p / 2.0) * mom * S;
            ++m;
        }
    }
    double F = m > 1 ? std::pow(static_cast<double>(m), pp) : 1.0;
    mb.C1 = F * C1;
    mb.C2 = F * C2;
    mb.C3 = F * C3;
    double e3 = bg.beta_plus > 0 ? std::min(1.0, p / bg.beta_plus) : 1.0;
    mb.value = mb.C1 * std::pow(t, p / 2.0) + mb.C2 * std::pow(t, p) + mb.C3 * std::pow(t, e3);
    return mb;
}

double sup_moment_bound(const LevyFamily& f, double p, double t) { return sup_moment_bound_terms(f, p, t).value; }

SecondOrder second_order(const RadialProfile& prof) {
    SecondOrder s;
    switch (prof.kind()) {
    case ProfileKind::Stable:
    case ProfileKind::AugmentedG: return s;
    case ProfileKind::Tempered:
        s.K_h = std::max(prof.lambda(), 1.0);
        return s;
    case ProfileKind::Truncated:
        s.p = 2.0;
        s.K_h = std::max(1.0, std::pow(prof.cut(), -2.0));
        return s;
    case ProfileKind::AugmentedH: break;
    }
    fail(ErrorKind::Unsupported, "second_order: constants are not declared for this profile");
}

double htilde_eval(const LevyFamily& f, double x, const Vec& v) {
    if (!(x > 0)) fail(ErrorKind::Domain, "htilde_eval: x must be positive");
    int j = f.has_co() ? f.sigma.find(v) : -1;
    if (j < 0) fail(ErrorKind::Domain, "htilde_eval: direction is not an atom of the family");
    const RadialProfile& prof = f.profiles[static_cast<size_t>(j)];
    double lead = std::pow(prof.c() / prof.alpha(), 1.0 / prof.alpha()) * std::pow(x, -1.0 / prof.alpha()) *
                  f.scale_G(1.0 / x);
    if (!(lead > 0) || !std::isfinite(lead)) fail(ErrorKind::Degenerate, "htilde_eval: leading term vanishes");
    return prof.inverse(x) / lead - 1.0;
}

double htilde_constant(const SecondOrder& so, double c, double alpha) {
    double a = std::pow(c / alpha, so.p / alpha) * so.K_h * std::pow(1.0 + so.K_h, so.p / alpha) *
               std::pow(1.0 + so.K_Q, so.p);
    double b = (so.K_Q + 1.0) * std::pow(1.0 + so.K_h, 1.0 / alpha);
    return std::max({a, b, 1.0});
}

double htilde_bound(const LevyFamily& f, double x, const Vec& v) {
    int j = f.has_co() ? f.sigma.find(v) : -1;
    if (j < 0) fail(ErrorKind::Domain, "htilde_bound: direction is not an atom of the family");
    const RadialProfile& prof = f.profiles[static_cast<size_t>(j)];
    SecondOrder so = second_order(prof);
    double K = htilde_constant(so, prof.c(), prof.alpha());
    double s = std::pow(x, -so.p / prof.alpha()) * std::pow(f.scale_G(1.0 / x), so.p);
    if (so.K_Q > 0) s += std::pow(x, -so.delta);
    return K * std::min(1.0, s);
}

double doa_tail_limit(const LevyFamily& f, const Vec& v, double t, const SlowVarSpec& G) {
    if (!(f.alpha < 2.0)) fail(ErrorKind::Unsupported, "doa_tail_limit: alpha must be below 2");
    if (!(t > 0) || t > 1) fail(ErrorKind::Domain, "doa_tail_limit: t must lie in (0,1]");
    double g = std::pow(t, 1.0 / f.alpha) * G.G(t);
    double s = 0.0;
    for (size_t j = 0; j < f.profiles.size(); ++j) {
        double cj = v.dot(f.sigma.dirs[j]);
        if (cj <= 1e-15) continue;
        s += f.sigma.weights[j] * f.profiles[j].tail(g / cj);
    }
    for (const auto& pm : f.perturbation)
        if (v.dot(pm.w) >= g) s += pm.mass;
    return t * s;
}

double stable_halfspace_mass(const StableSpec& z, const Vec& v) {
    double s = 0.0;
    for (size_t j = 0; j < z.sigma.size(); ++j) {
        double cj = v.dot(z.sigma.dirs[j]);
        if (cj <= 1e-15) continue;
        s += z.sigma.weights[j] * z.c_alpha * std::pow(cj, z.alpha) / z.alpha;
    }
    return s;
}

}  // namespace lc
