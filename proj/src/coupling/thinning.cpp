#include "levycouple/coupling.hpp"

#include "levycouple/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace lc {

namespace {

int find_or_add(std::vector<Vec>& dirs, const Vec& v) {
    for (size_t i = 0; i < dirs.size(); ++i)
        if ((dirs[i] - v).norm() <= 1e-12) return static_cast<int>(i);
    dirs.push_back(v);
    return static_cast<int>(dirs.size()) - 1;
}

}  // namespace

ThinningPlan::ThinningPlan(const LevyFamily& X, const StableSpec& target, double t, const ThinningOptions& opt)
    : opt_(opt), t_(t) {
    if (target.gaussian()) fail(ErrorKind::Unsupported, "thinning: the target must be stable with alpha < 2");
    if (!(t > 0) || t > 1) fail(ErrorKind::Domain, "thinning: t must lie in (0,1]");
    if (!(opt.delta > 0)) fail(ErrorKind::Domain, "thinning: delta must be positive");
    if (X.d != target.dim()) fail(ErrorKind::Config, "thinning: process and target dimensions differ");
    X_ = std::make_shared<LevyFamily>(X);
    Z_ = std::make_shared<LevyFamily>(LevyFamily::from_stable(target));
    g_ = scale_g(*X_, target, t);
    alpha_ = target.alpha;
    ScaledView vX(*X_, t, g_), vZ(*Z_, 1.0, 1.0);
    pm_ = std::make_unique<PairMeasure>(vX, vZ);
    const PairMeasure& pm = *pm_;
    dirs_ = pm.dirs;
    const double delta = opt.delta;

    for (size_t k = 0; k < pm.size(); ++k) {
        if (pm.iz[k] < 0)
            fail(ErrorKind::AssumptionViolation, "thinning: process charges a direction the target does not");
        Atom a;
        a.rate_Z = target.sigma.weights[static_cast<size_t>(pm.iz[k])] * target.c_alpha;
        for (double e = -8.0; e <= 8.0; e += 0.25) {
            double f = pm.ratio(k, std::pow(10.0, e));
            if (f > 1.0 + 1e-9)
                fail(ErrorKind::AssumptionViolation,
                     fmt::format("thinning: density of the process exceeds the dominating measure ({:.6g})", f));
        }
        bool matched = false;
        double K = 0.0, p = 1.0;
        if (pm.ix[k] >= 0 && X.alpha == target.alpha) {
            const RadialProfile& pr = X.profiles[static_cast<size_t>(pm.ix[k])];
            double A = vX.weight(static_cast<size_t>(pm.ix[k])) * std::pow(g_, -alpha_) * pr.c() / a.rate_Z;
            if (std::fabs(A - 1.0) <= 1e-12) {
                switch (pr.kind()) {
                case ProfileKind::Stable: matched = true; K = 0.0; break;
                case ProfileKind::Tempered: matched = true; K = pr.lambda() * g_; p = 1.0; break;
                case ProfileKind::Truncated:
                    matched = true;
                    K = std::pow(g_ / pr.cut(), 2.0);
                    p = 2.0;
                    break;
                default: break;
                }
            }
        }
        if (opt.difference_only && matched) {
            a.env_one = false;
            a.env_K = K;
            a.env_p = p;
            if (K > 0) {
                a.ysplit = std::max(delta, std::pow(K, -1.0 / p));
                double e = p - alpha_;
                a.massA = a.rate_Z * K *
                          (std::fabs(e) < 1e-12 ? std::log(a.ysplit / delta)
                                                : (std::pow(a.ysplit, e) - std::pow(delta, e)) / e);
                a.massB = a.rate_Z * std::pow(a.ysplit, -alpha_) / alpha_;
            }
        } else {
            a.env_one = true;
            a.ysplit = delta;
            a.massB = a.rate_Z * std::pow(delta, -alpha_) / alpha_;
        }
        atoms_.push_back(a);
    }

    Vec small_pm = Vec::Zero(X.d);
    for (const auto& m : vX.point_masses()) {
        pms_.push_back(m);
        pm_dir_.push_back(find_or_add(dirs_, m.w / m.w.norm()));
        if (m.w.norm() < delta) small_pm += m.mass * m.w;
    }
    slope_X_ = vX.gamma_kappa(delta) - small_pm;
    slope_Z_ = vZ.gamma_kappa(delta);
    if (X_->has_gaussian()) gauss_X_ = vX.gaussian();

    if (expected_events() > opt.max_expected_events)
        fail(ErrorKind::Resource, fmt::format("thinning: expected {:.3g} events per path exceeds the cap {:.3g}",
                                              expected_events(), opt.max_expected_events));
    for (size_t k = 0; k < pm.size(); ++k) residual_ += 4.0 * pm.abs_diff_moment(k, 2.0, 0.0, delta);
}

double ThinningPlan::expected_events() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.massA + a.massB;
    for (const auto& m : pms_) s += m.mass;
    return s;
}

double ThinningPlan::expected_abs_unshared() const {
    return pm_->abs_diff_moment_all(1.0, opt_.delta, std::numeric_limits<double>::infinity()) +
           pm_->pert_moment(1.0, 0.0, opt_.delta);
}

double ThinningPlan::envelope(const Atom& a, double y) const {
    if (a.env_one) return 1.0;
    return std::min(1.0, a.env_K * std::pow(y, a.env_p));
}

double ThinningPlan::draw_envelope(const Atom& a, bool pieceA, Rng& rng) const {
    double u = uniform_open(rng);
    if (!pieceA) return a.ysplit * std::pow(u, -1.0 / alpha_);
    double d = opt_.delta, e = a.env_p - alpha_;
    if (std::fabs(e) < 1e-12) return d * std::pow(a.ysplit / d, u);
    double lo = std::pow(d, e), hi = std::pow(a.ysplit, e);
    return std::pow(lo + u * (hi - lo), 1.0 / e);
}

CoupledPathPair ThinningPlan::sample(Rng& rng) const { return draw(rng, Mode::Plain); }

CoupledPathPair ThinningPlan::sample_given_event(Rng& rng) const { return draw(rng, Mode::AtLeastOne); }

CoupledPathPair ThinningPlan::sample_empty(Rng& rng) const { return draw(rng, Mode::Empty); }

namespace {

// Poisson(m) conditioned on being positive, by inversion
long zero_truncated_poisson(double m, Rng& rng) {
    double u = uniform_open(rng) * -std::expm1(-m);
    double p = std::exp(-m) * m, acc = p;
    long k = 1;
    while (acc < u && k < 100000000) {
        ++k;
        p *= m / static_cast<double>(k);
        acc += p;
        if (p == 0.0) break;
    }
    return k;
}

}  // namespace

CoupledPathPair ThinningPlan::draw(Rng& rng, Mode mode) const {
    CoupledPathPair p;
    p.coupling = CouplingKind::Thinning;
    p.d = X_->d;
    p.directions = dirs_;
    p.drift_X = slope_X_;
    p.drift_Z = slope_Z_;
    p.compensator_X = Vec::Zero(p.d);
    p.compensator_Z = Vec::Zero(p.d);
    p.legs_complete = !opt_.difference_only;
    const PairMeasure& pm = *pm_;

    // sources: two envelope pieces per atom, then the point masses
    const size_t na = atoms_.size();
    std::vector<double> mass;
    for (const auto& a : atoms_) {
        mass.push_back(a.massA);
        mass.push_back(a.massB);
    }
    for (const auto& m : pms_) mass.push_back(m.mass);
    std::vector<long> count(mass.size(), 0);
    if (mode == Mode::Plain) {
        for (size_t i = 0; i < mass.size(); ++i)
            if (mass[i] > 0) count[i] = std::poisson_distribution<long>(mass[i])(rng);
    } else if (mode == Mode::AtLeastOne) {
        double total = expected_events();
        if (!(total > 0)) fail(ErrorKind::Domain, "thinning: no events to condition on");
        long n = zero_truncated_poisson(total, rng);
        for (long i = 0; i < n; ++i) {
            double u = uniform_open(rng) * total, acc = 0.0;
            size_t s = 0;
            for (; s + 1 < mass.size(); ++s) {
                acc += mass[s];
                if (u < acc) break;
            }
            ++count[s];
        }
    }

    for (size_t k = 0; k < na; ++k) {
        const Atom& a = atoms_[k];
        for (int piece = 0; piece < 2; ++piece) {
            long n = count[2 * k + static_cast<size_t>(piece)];
            for (long i = 0; i < n; ++i) {
                double time = uniform_open(rng);
                double y = draw_envelope(a, piece == 0, rng);
                double theta = uniform_open(rng);
                double f = pm.ratio(k, y);
                if (f > 1.0 + 1e-9) fail(ErrorKind::AssumptionViolation, "thinning: density ratio exceeds 1");
                PathEvent e;
                e.time = time;
                e.dir = static_cast<int>(k);
                e.mag_Z = y;
                if (opt_.difference_only) {
                    // thin the envelope down to the Z-only intensity (1 - f) nu_Z
                    if (theta * envelope(a, y) > 1.0 - f) continue;
                } else if (theta <= f) {
                    e.mag_X = y;
                    e.shared = true;
                }
                p.events.push_back(e);
            }
        }
    }
    for (size_t i = 0; i < pms_.size(); ++i)
        for (long c = 0; c < count[2 * na + i]; ++c) {
            PathEvent e;
            e.time = uniform_open(rng);
            e.mag_X = pms_[i].w.norm();
            e.dir = pm_dir_[i];
            p.events.push_back(e);
        }
    if (gauss_X_.size() > 0) {
        p.gauss_X = gauss_X_;
        p.brownian = draw_brownian(p.d, opt_.grid_n, rng);
    }
    finish_events(p.events);
    p.residual.l2_bound = residual_;
    p.residual.description = fmt::format("compensated small jumps below delta = {:.6g}", opt_.delta);
    return p;
}

CoupledPathPair sample_thinning_pair(const LevyFamily& X, const StableSpec& target, double t, double delta,
                                     std::uint64_t seed) {
    ThinningOptions opt;
    opt.delta = delta;
    ThinningPlan plan(X, target, t, opt);
    Rng rng = make_rng(seed);
    return plan.sample(rng);
}

}  // namespace lc
