#include "levycouple/coupling.hpp"

#include "levycouple/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

namespace {

int dir_index(std::vector<Vec>& dirs, const Vec& u) {
    for (size_t i = 0; i < dirs.size(); ++i)
        if ((dirs[i] - u).norm() <= 1e-12) return static_cast<int>(i);
    dirs.push_back(u);
    return static_cast<int>(dirs.size()) - 1;
}

}  // namespace

GaussianPlan::GaussianPlan(const LevyFamily& X, double t, const GaussianOptions& opt) : opt_(opt), t_(t) {
    if (!(t > 0) || t > 1) fail(ErrorKind::Domain, "gaussian coupling: t must lie in (0,1]");
    if (!(opt.kappa > 0)) fail(ErrorKind::Domain, "gaussian coupling: kappa must be positive");
    if (!X.has_gaussian()) fail(ErrorKind::Config, "gaussian coupling: the family needs a Brownian part");
    X_ = std::make_shared<LevyFamily>(X);
    double g = std::sqrt(t);
    v_ = ScaledView(*X_, t, g);
    if (X_->has_co()) dirs_ = X_->sigma.dirs;
    for (size_t j = 0; j < v_.natoms(); ++j) tails_.push_back(v_.tail(j, opt.kappa));
    Vec small_pm = Vec::Zero(X.d);
    for (const auto& m : v_.point_masses()) {
        pms_.push_back(m);
        pm_dir_.push_back(dir_index(dirs_, m.w / m.w.norm()));
        if (m.w.norm() < opt.kappa) small_pm += m.mass * m.w;
    }
    if (dirs_.empty()) dirs_.push_back(Vec::Unit(X.d, 0));
    slope_ = v_.gamma_kappa(opt.kappa) - small_pm;
    gauss_ = v_.gaussian();
    double expected = 0.0;
    for (double m : tails_) expected += m;
    for (const auto& m : pms_) expected += m.mass;
    if (expected > opt.max_expected_events)
        fail(ErrorKind::Resource, fmt::format("gaussian coupling: expected {:.3g} events exceeds the cap", expected));
    for (size_t j = 0; j < v_.natoms(); ++j) residual_ += 4.0 * v_.moment(j, 2.0, 0.0, opt.kappa);
}

double GaussianPlan::expected_abs_jumps(double y) const {
    double s = 0.0;
    for (size_t j = 0; j < v_.natoms(); ++j)
        s += v_.moment(j, 1.0, std::max(y, opt_.kappa), std::numeric_limits<double>::infinity());
    for (const auto& m : pms_)
        if (m.w.norm() >= y) s += m.mass * m.w.norm();
    return s;
}

CoupledPathPair GaussianPlan::sample(Rng& rng) const {
    CoupledPathPair p;
    p.coupling = CouplingKind::Gaussian;
    p.d = X_->d;
    p.directions = dirs_;
    p.drift_X = slope_;
    p.drift_Z = Vec::Zero(p.d);
    p.compensator_X = Vec::Zero(p.d);
    p.compensator_Z = Vec::Zero(p.d);
    const double g = v_.g;
    for (size_t j = 0; j < v_.natoms(); ++j) {
        if (tails_[j] <= 0) continue;
        const RadialProfile& pr = X_->profiles[j];
        double top = pr.tail(g * opt_.kappa);
        long n = std::poisson_distribution<long>(tails_[j])(rng);
        for (long i = 0; i < n; ++i) {
            PathEvent e;
            e.time = uniform_open(rng);
            e.mag_X = pr.inverse_fast(uniform_open(rng) * top) / g;
            e.dir = static_cast<int>(j);
            p.events.push_back(e);
        }
    }
    draw_point_masses(pms_, pm_dir_, rng, p.events);
    p.gauss_X = gauss_;
    p.gauss_Z = gauss_;
    p.brownian = draw_brownian(p.d, opt_.grid_n, rng);
    finish_events(p.events);
    p.residual.l2_bound = residual_;
    p.residual.description = fmt::format("compensated jumps below kappa = {:.6g}", opt_.kappa);
    return p;
}

CoupledPathPair sample_gaussian_pair(const LevyFamily& X, double t, int grid_n, std::uint64_t seed) {
    GaussianOptions opt;
    opt.grid_n = grid_n;
    GaussianPlan plan(X, t, opt);
    Rng rng = make_rng(seed);
    return plan.sample(rng);
}

MarginalPlan::MarginalPlan(const LevyFamily& X, double t, double g, const MarginalOptions& opt) : opt_(opt) {
    if (!(t > 0)) fail(ErrorKind::Domain, "marginal: t must be positive");
    if (!(g > 0)) fail(ErrorKind::Domain, "marginal: scale must be positive");
    if (opt.gamma_max > opt.max_expected_events) fail(ErrorKind::Resource, "marginal: gamma_max exceeds the event cap");
    X_ = std::make_shared<LevyFamily>(X);
    v_ = ScaledView(*X_, t, g);
    double G = opt.gamma_max;
    slope_ = v_.gamma_kappa(1.0);
    double acc = 0.0;
    for (size_t j = 0; j < v_.natoms(); ++j) {
        acc += X_->sigma.weights[j];
        cum_.push_back(acc);
        double r = X_->profiles[j].inverse_fast(G / t) / g;
        if (r > 1.0)
            slope_ += v_.moment(j, 1.0, 1.0, r) * v_.dir(j);
        else if (r < 1.0)
            slope_ -= v_.moment(j, 1.0, r, 1.0) * v_.dir(j);
        double var = v_.moment(j, 2.0, 0.0, r);
        omitted_var_ += var;
        rem_sd_.push_back(opt.gaussian_remainder ? std::sqrt(var) : 0.0);
    }
    for (const auto& m : v_.point_masses()) {
        pms_.push_back(m);
        if (m.w.norm() < 1.0) slope_ -= m.mass * m.w;
    }
    if (X_->has_gaussian()) gauss_ = v_.gaussian();
}

Vec MarginalPlan::sample(Rng& rng) const {
    Vec x = slope_;
    if (!cum_.empty()) {
        std::exponential_distribution<double> ex(1.0);
        double G = 0.0;
        for (;;) {
            G += ex(rng);
            if (G > opt_.gamma_max) break;
            double u = uniform_open(rng) * cum_.back();
            size_t j = static_cast<size_t>(std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
            if (j >= cum_.size()) j = cum_.size() - 1;
            x += X_->profiles[j].inverse_fast(G / v_.t) / v_.g * v_.dir(j);
        }
        if (opt_.gaussian_remainder) {
            std::normal_distribution<double> nd;
            for (size_t j = 0; j < rem_sd_.size(); ++j) x += rem_sd_[j] * nd(rng) * v_.dir(j);
        }
    }
    for (const auto& m : pms_) {
        long n = std::poisson_distribution<long>(m.mass)(rng);
        if (n > 0) x += static_cast<double>(n) * m.w;
    }
    if (gauss_.size() > 0) {
        std::normal_distribution<double> nd;
        Vec z(x.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = nd(rng);
        x += gauss_ * z;
    }
    return x;
}

std::vector<Vec> sample_marginal(const LevyFamily& X, double t, int n, std::uint64_t seed) {
    if (n < 1) fail(ErrorKind::Domain, "sample_marginal: n must be positive");
    MarginalOptions opt;
    opt.gamma_max = 1000.0;
    opt.gaussian_remainder = true;
    MarginalPlan plan(X, t, 1.0, opt);
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        out.push_back(plan.sample(rng));
    }
    return out;
}

}  // namespace lc
