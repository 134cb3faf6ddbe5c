#include "levycouple/family.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <cmath>
#include <limits>

namespace lc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* family_kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::Stable: return "Stable";
    case FamilyKind::AugmentedStable: return "AugmentedStable";
    case FamilyKind::TemperedStable: return "TemperedStable";
    case FamilyKind::TruncatedStable: return "TruncatedStable";
    case FamilyKind::CompoundPoissonPerturbation: return "CompoundPoissonPerturbation";
    case FamilyKind::BrownianPlusJumps: return "BrownianPlusJumps";
    }
    return "?";
}

const char* drift_mode_name(DriftMode m) {
    switch (m) {
    case DriftMode::ZeroNatural: return "zero-natural-drift";
    case DriftMode::MeanZero: return "mean-zero";
    case DriftMode::Explicit: return "explicit";
    }
    return "?";
}

SphericalMeasure SphericalMeasure::make(int dim, std::vector<Vec> dirs, std::vector<double> weights) {
    SphericalMeasure s;
    s.dim = dim;
    s.dirs = std::move(dirs);
    s.weights = std::move(weights);
    s.validate();
    return s;
}

SphericalMeasure SphericalMeasure::positive_1d() { return make(1, {Vec::Constant(1, 1.0)}, {1.0}); }

SphericalMeasure SphericalMeasure::symmetric_1d() {
    return make(1, {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)}, {0.5, 0.5});
}

int SphericalMeasure::find(const Vec& v) const {
    for (size_t j = 0; j < dirs.size(); ++j)
        if (dirs[j].size() == v.size() && (dirs[j] - v).norm() <= 1e-12) return static_cast<int>(j);
    return -1;
}

void SphericalMeasure::validate() const {
    if (dim < 1) fail(ErrorKind::Config, "spherical measure: dimension must be at least 1");
    if (dirs.empty() || dirs.size() != weights.size())
        fail(ErrorKind::Config, "spherical measure: need matching nonempty direction and weight lists");
    double total = 0.0;
    for (size_t j = 0; j < dirs.size(); ++j) {
        if (dirs[j].size() != dim) fail(ErrorKind::Config, "spherical measure: direction has wrong dimension");
        if (std::fabs(dirs[j].norm() - 1.0) > 1e-12) fail(ErrorKind::Config, "spherical measure: direction not unit");
        if (!(weights[j] > 0)) fail(ErrorKind::Config, "spherical measure: weights must be positive");
        if (dim == 1 && std::fabs(dirs[j](0)) != 1.0)
            fail(ErrorKind::Config, "spherical measure: 1-D directions must be +1 or -1");
        for (size_t i = 0; i < j; ++i)
            if ((dirs[i] - dirs[j]).norm() <= 1e-12) fail(ErrorKind::Config, "spherical measure: repeated direction");
        total += weights[j];
    }
    if (std::fabs(total - 1.0) > 1e-12) fail(ErrorKind::Config, "spherical measure: weights must sum to 1");
}

void StableSpec::validate() const {
    if (!(alpha > 0 && alpha <= 2) || alpha == 1.0)
        fail(ErrorKind::Config, "stable spec: alpha must lie in (0,2] and differ from 1");
    int d = sigma.dim;
    if (alpha == 2.0) {
        if (c_alpha != 0.0) fail(ErrorKind::Config, "stable spec: Gaussian limit requires c_alpha = 0");
        if (sigma_Z.rows() != d || sigma_Z.cols() != d || sigma_Z.norm() == 0.0)
            fail(ErrorKind::Config, "stable spec: Gaussian limit requires a nonzero d x d sigma_Z");
    } else {
        if (!(c_alpha > 0)) fail(ErrorKind::Config, "stable spec: c_alpha must be positive");
        sigma.validate();
        if (sigma_Z.size() > 0 && sigma_Z.norm() != 0.0)
            fail(ErrorKind::Config, "stable spec: sigma_Z must vanish when alpha < 2");
    }
}

LevyFamily LevyFamily::from_stable(const StableSpec& s) {
    s.validate();
    LevyFamily f;
    f.kind = FamilyKind::Stable;
    f.d = s.dim();
    f.alpha = s.alpha;
    f.gamma = Vec::Zero(f.d);
    if (s.gaussian()) {
        f.gaussian = s.sigma_Z;
        f.drift_mode = DriftMode::MeanZero;
        return f;
    }
    f.sigma = s.sigma;
    for (size_t j = 0; j < s.sigma.size(); ++j) f.profiles.push_back(RadialProfile::stable(s.alpha, s.c_alpha));
    f.drift_mode = s.alpha > 1 ? DriftMode::MeanZero : DriftMode::ZeroNatural;
    return f;
}

double LevyFamily::pert_mass() const {
    double m = 0;
    for (const auto& p : perturbation) m += p.mass;
    return m;
}

double LevyFamily::scale_G(double t) const {
    if (profiles.empty()) return 1.0;
    const RadialProfile& p = profiles.front();
    if (p.kind() == ProfileKind::AugmentedG) return p.slowvar().G(t);
    if (p.kind() == ProfileKind::AugmentedH) return p.slowvar().G(p.inverse_fast(1.0 / t));
    return 1.0;
}

void LevyFamily::validate() const {
    if (d < 1) fail(ErrorKind::Config, "family: dimension must be at least 1");
    if (has_co()) {
        sigma.validate();
        if (sigma.dim != d) fail(ErrorKind::Config, "family: spherical measure dimension mismatch");
        if (profiles.size() != sigma.size()) fail(ErrorKind::Config, "family: one radial profile per atom required");
        for (const auto& p : profiles)
            if (p.alpha() != alpha) fail(ErrorKind::Config, "family: profiles must share the index alpha");
    }
    if (gaussian.size() > 0 && (gaussian.rows() != d || gaussian.cols() != d))
        fail(ErrorKind::Config, "family: Gaussian matrix must be d x d");
    if (drift_mode == DriftMode::Explicit && gamma.size() != d)
        fail(ErrorKind::Config, "family: explicit drift needs a d-vector");
    for (const auto& pm : perturbation) {
        if (pm.w.size() != d) fail(ErrorKind::Config, "family: perturbation jump has wrong dimension");
        if (!(pm.mass > 0) || !std::isfinite(pm.mass))
            fail(ErrorKind::Config, "family: perturbation masses must be positive and finite");
        if (pm.w.norm() == 0.0) fail(ErrorKind::Config, "family: perturbation jumps must be nonzero");
    }
    if (has_co()) {
        for (const auto& p : profiles) {
            if (drift_mode == DriftMode::ZeroNatural && !std::isfinite(p.moment(1.0, 0.0, 1.0)))
                fail(ErrorKind::Config, "family: zero natural drift needs finite small-jump first moment");
            if (drift_mode == DriftMode::MeanZero && !std::isfinite(p.moment(1.0, 1.0, kInf)))
                fail(ErrorKind::Config, "family: mean-zero drift needs a finite mean");
        }
    }
    if (beta_eps <= 0) fail(ErrorKind::Config, "family: beta_eps must be positive");
}

double scale_g(const LevyFamily& X, const StableSpec& target, double t) {
    if (target.gaussian()) return std::sqrt(t);
    return std::pow(t, 1.0 / target.alpha) * X.scale_G(t);
}

double ScaledView::moment(size_t j, double p, double a, double b) const {
    if (!(b > a)) return 0.0;
    double m = fam->profiles[j].moment(p, g * a, g * b);
    if (m == 0.0) return 0.0;
    return weight(j) * std::pow(g, -p) * m;
}

double ScaledView::moment_all(double p, double a, double b) const {
    double s = 0.0;
    for (size_t j = 0; j < natoms(); ++j) s += moment(j, p, a, b);
    for (const auto& pm : fam->perturbation) {
        double r = pm.w.norm() / g;
        if (r >= a && r < b) s += t * pm.mass * std::pow(r, p);
    }
    return s;
}

Vec ScaledView::first_moment_vec(double a, double b) const {
    Vec v = Vec::Zero(dim());
    if (!(b > a)) return v;
    for (size_t j = 0; j < natoms(); ++j) v += moment(j, 1.0, a, b) * dir(j);
    for (const auto& pm : fam->perturbation) {
        double r = pm.w.norm() / g;
        if (r >= a && r < b) v += t * pm.mass * pm.w / g;
    }
    return v;
}

Mat ScaledView::gaussian() const {
    if (fam->gaussian.size() == 0) return Mat::Zero(dim(), dim());
    return std::sqrt(t) / g * fam->gaussian;
}

std::vector<PointMass> ScaledView::point_masses() const {
    std::vector<PointMass> out;
    for (const auto& pm : fam->perturbation) out.push_back({pm.w / g, t * pm.mass});
    return out;
}

Vec ScaledView::gamma_kappa(double kappa) const {
    switch (fam->drift_mode) {
    case DriftMode::MeanZero: return -first_moment_vec(kappa, kInf);
    case DriftMode::ZeroNatural: return first_moment_vec(0.0, kappa);
    case DriftMode::Explicit: {
        Vec v = t / g * fam->gamma;
        double cut = 1.0 / g;
        if (kappa < cut)
            v -= first_moment_vec(kappa, cut);
        else
            v += first_moment_vec(cut, kappa);
        return v;
    }
    }
    return Vec::Zero(dim());
}

Vec ScaledView::gamma_natural() const {
    switch (fam->drift_mode) {
    case DriftMode::ZeroNatural: return Vec::Zero(dim());
    case DriftMode::MeanZero: return -first_moment_vec(0.0, kInf);
    case DriftMode::Explicit: return gamma_kappa(1.0) - first_moment_vec(0.0, 1.0);
    }
    return Vec::Zero(dim());
}

cplx char_exponent(const LevyFamily& f, const Vec& u) {
    if (u.size() != f.d) fail(ErrorKind::Domain, "char_exponent: argument has wrong dimension");
    if (u.norm() == 0.0) return {0.0, 0.0};
    ScaledView v(f, 1.0, 1.0);
    Vec g1 = v.gamma_kappa(1.0);
    cplx psi(0.0, g1.dot(u));
    if (f.gaussian.size() > 0) psi -= 0.5 * (f.gaussian.transpose() * u).squaredNorm();
    for (size_t j = 0; j < f.profiles.size(); ++j)
        psi += f.sigma.weights[j] * f.profiles[j].levy_integral(u.dot(f.sigma.dirs[j]));
    for (const auto& pm : f.perturbation) {
        double w = u.dot(pm.w);
        double comp = pm.w.norm() < 1.0 ? w : 0.0;
        psi += pm.mass * cplx(cosm1(w), std::sin(w) - comp);
    }
    return psi;
}

cplx ScaledView::psi(const Vec& u) const { return t * char_exponent(*fam, u / g); }

}  // namespace lc
