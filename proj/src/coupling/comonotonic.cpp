#include "levycouple/coupling.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ComonotonicPlan::ComonotonicPlan(const LevyFamily& X, const StableSpec& target, double t,
                                 const ComonotonicOptions& opt)
    : opt_(opt), t_(t) {
    if (target.gaussian()) fail(ErrorKind::Unsupported, "comonotonic: the target must be stable with alpha < 2");
    if (!(t > 0) || t > 1) fail(ErrorKind::Domain, "comonotonic: t must lie in (0,1]");
    if (!(opt.gamma_max > 0)) fail(ErrorKind::Domain, "comonotonic: gamma_max must be positive");
    if (X.d != target.dim()) fail(ErrorKind::Config, "comonotonic: cannot merge spherical measures of different dimension");
    X_ = std::make_shared<LevyFamily>(X);
    Z_ = std::make_shared<LevyFamily>(LevyFamily::from_stable(target));
    g_ = scale_g(*X_, target, t);
    vX_ = ScaledView(*X_, t, g_);
    vZ_ = ScaledView(*Z_, 1.0, 1.0);

    for (size_t j = 0; j < Z_->sigma.size(); ++j) {
        dirs_.push_back(Z_->sigma.dirs[j]);
        iz_.push_back(static_cast<int>(j));
        sz_.push_back(Z_->sigma.weights[j]);
        int i = X_->has_co() ? X_->sigma.find(Z_->sigma.dirs[j]) : -1;
        ix_.push_back(i);
        sx_.push_back(i < 0 ? 0.0 : X_->sigma.weights[static_cast<size_t>(i)]);
    }
    for (size_t j = 0; j < X_->profiles.size(); ++j) {
        if (Z_->sigma.find(X_->sigma.dirs[j]) >= 0) continue;
        dirs_.push_back(X_->sigma.dirs[j]);
        ix_.push_back(static_cast<int>(j));
        sx_.push_back(X_->sigma.weights[j]);
        iz_.push_back(-1);
        sz_.push_back(0.0);
    }
    // with no co part the process contributes no mass to the merge
    double wx = X_->has_co() ? 1.0 : 0.0;
    double total = 0.0;
    for (size_t k = 0; k < dirs_.size(); ++k) {
        sm_.push_back(0.5 * (wx * sx_[k] + sz_[k]));
        total += sm_[k];
        cum_.push_back(total);
    }
    for (auto& c : cum_) c /= total;
    if (std::fabs(total - (wx + 1.0) / 2.0) > 1e-9) fail(ErrorKind::Config, "comonotonic: merged measure has wrong mass");
    // epochs run at rate 1 against the normalized merge; rescale so that sm sums to one
    for (auto& s : sm_) s /= total;

    for (const auto& m : vX_.point_masses()) {
        pms_.push_back(m);
        Vec u = m.w / m.w.norm();
        int idx = -1;
        for (size_t i = 0; i < dirs_.size(); ++i)
            if ((dirs_[i] - u).norm() <= 1e-12) idx = static_cast<int>(i);
        if (idx < 0) {
            dirs_.push_back(u);
            idx = static_cast<int>(dirs_.size()) - 1;
        }
        pm_dir_.push_back(idx);
    }

    const double G = opt.gamma_max;
    if (G > opt.max_expected_events)
        fail(ErrorKind::Resource, fmt::format("comonotonic: gamma_max {:.3g} exceeds the event cap", G));
    slope_X_ = vX_.gamma_kappa(1.0);
    slope_Z_ = vZ_.gamma_kappa(1.0);
    for (size_t k = 0; k < sm_.size(); ++k) {
        slope_X_ += signed_mean(vX_, ix_[k], sx_[k], k, G);
        slope_Z_ += signed_mean(vZ_, iz_[k], sz_[k], k, G);
    }
    for (const auto& m : pms_)
        if (m.w.norm() < 1.0) slope_X_ -= m.mass * m.w;
    if (X_->has_gaussian()) gauss_X_ = vX_.gaussian();

    residual_ = sq_diff_integral(G, kInf);
    signal_ = sq_diff_integral(1.0, kInf);
}

double ComonotonicPlan::R_X(double x, size_t k) const {
    if (ix_[k] < 0) return 0.0;
    return X_->profiles[static_cast<size_t>(ix_[k])].inverse_fast(x * sm_[k] / (t_ * sx_[k])) / g_;
}

double ComonotonicPlan::R_Z(double x, size_t k) const {
    if (iz_[k] < 0) return 0.0;
    return Z_->profiles[static_cast<size_t>(iz_[k])].inverse_fast(x * sm_[k] / sz_[k]);
}

// dir_k times the mean of the jumps of magnitude between 1 and R(gamma_max): the signed
// integral of R over [gamma_max, x1], x1 being where R crosses 1
Vec ComonotonicPlan::signed_mean(const ScaledView& v, int j, double sx, size_t k, double a) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(dirs_[k].size()));
    if (j < 0 || sx <= 0) return out;
    bool isX = v.fam == X_.get();
    double r = isX ? R_X(a, k) : R_Z(a, k);
    if (r > 1.0)
        out = v.moment(static_cast<size_t>(j), 1.0, 1.0, r) * dirs_[k];
    else if (r < 1.0)
        out = -v.moment(static_cast<size_t>(j), 1.0, r, 1.0) * dirs_[k];
    return out;
}

double ComonotonicPlan::R_diff(double x, size_t k) const {
    double a = R_X(x, k), b = R_Z(x, k);
    // agreement up to rounding counts as equality
    if (std::fabs(a - b) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b)))
        return 0.0;
    return a - b;
}

double ComonotonicPlan::sq_diff_integral(double a, double b) const {
    double s = 0.0;
    for (size_t k = 0; k < sm_.size(); ++k)
        s += sm_[k] * integrate_log(
                          [&](double x) {
                              double d = R_diff(x, k);
                              return d * d;
                          },
                          a, b);
    return 4.0 * s;
}

double ComonotonicPlan::q_diff_integral(double q, double a, double b) const {
    double s = 0.0;
    for (size_t k = 0; k < sm_.size(); ++k)
        s += sm_[k] * integrate_log([&](double x) { return std::pow(std::fabs(R_diff(x, k)), q); }, a, b);
    return s;
}

Vec ComonotonicPlan::mean_diff(double a, double b) const {
    Vec out = Vec::Zero(X_->d);
    for (size_t k = 0; k < sm_.size(); ++k) {
        double mx = ix_[k] < 0 ? 0.0 : vX_.moment(static_cast<size_t>(ix_[k]), 1.0, R_X(b, k), R_X(a, k));
        double mz = iz_[k] < 0 ? 0.0 : vZ_.moment(static_cast<size_t>(iz_[k]), 1.0, R_Z(b, k), R_Z(a, k));
        out += (mx - mz) * dirs_[k];
    }
    return out;
}

CoupledPathPair ComonotonicPlan::sample(Rng& rng) const {
    CoupledPathPair p;
    p.coupling = CouplingKind::Comonotonic;
    p.d = X_->d;
    p.directions = dirs_;
    p.drift_X = slope_X_;
    p.drift_Z = slope_Z_;
    p.compensator_X = Vec::Zero(p.d);
    p.compensator_Z = Vec::Zero(p.d);
    std::exponential_distribution<double> ex(1.0);
    double G = 0.0;
    for (;;) {
        G += ex(rng);
        if (G > opt_.gamma_max) break;
        PathEvent e;
        e.time = uniform_open(rng);
        double u = uniform_open(rng);
        size_t k = static_cast<size_t>(std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
        if (k >= cum_.size()) k = cum_.size() - 1;
        e.dir = static_cast<int>(k);
        e.epoch = G;
        e.mag_X = R_X(G, k);
        e.mag_Z = R_diff(G, k) == 0.0 ? e.mag_X : R_Z(G, k);
        e.shared = e.mag_X == e.mag_Z;
        p.events.push_back(e);
    }
    draw_point_masses(pms_, pm_dir_, rng, p.events);
    if (gauss_X_.size() > 0) {
        p.gauss_X = gauss_X_;
        p.brownian = draw_brownian(p.d, opt_.grid_n, rng);
    }
    finish_events(p.events);
    p.residual.l2_bound = residual_;
    p.residual.description = fmt::format("series terms beyond gamma_max = {:.6g}", opt_.gamma_max);
    p.warning = residual_ > opt_.warn_fraction * signal_;
    return p;
}

CoupledPathPair sample_comonotonic_pair(const LevyFamily& X, const StableSpec& target, double t, double gamma_max,
                                        std::uint64_t seed) {
    ComonotonicOptions opt;
    opt.gamma_max = gamma_max;
    ComonotonicPlan plan(X, target, t, opt);
    Rng rng = make_rng(seed);
    return plan.sample(rng);
}

}  // namespace lc
