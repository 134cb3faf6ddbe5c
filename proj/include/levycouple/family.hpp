#pragma once

#include "levycouple/profile.hpp"
#include "levycouple/slowvar.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace lc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

// Finite atomic probability measure on the unit sphere.
struct SphericalMeasure {
    int dim = 1;
    std::vector<Vec> dirs;
    std::vector<double> weights;

    static SphericalMeasure make(int dim, std::vector<Vec> dirs, std::vector<double> weights);
    static SphericalMeasure positive_1d();
    static SphericalMeasure symmetric_1d();
    size_t size() const { return dirs.size(); }
    // index of an atom with this direction, or -1
    int find(const Vec& v) const;
    void validate() const;
};

// The attracting stable process (alpha < 2) or Gaussian limit (alpha = 2).
struct StableSpec {
    double alpha = 1.5;
    double c_alpha = 1.0;
    SphericalMeasure sigma;
    Mat sigma_Z;  // d x d, Gaussian case only

    int dim() const { return sigma.dim; }
    bool gaussian() const { return alpha == 2.0; }
    void validate() const;
};

enum class FamilyKind {
    Stable,
    AugmentedStable,
    TemperedStable,
    TruncatedStable,
    CompoundPoissonPerturbation,
    BrownianPlusJumps
};
enum class DriftMode { ZeroNatural, MeanZero, Explicit };

const char* family_kind_name(FamilyKind k);
const char* drift_mode_name(DriftMode m);

struct PointMass {
    Vec w;
    double mass = 0.0;
};

// Levy process: drift, Gaussian matrix, jump part sum_j sigma_j delta_{v_j} (x) profiles[j],
// plus an optional finite perturbation given by point masses.
struct LevyFamily {
    FamilyKind kind = FamilyKind::Stable;
    int d = 1;
    double alpha = 1.5;  // index of the co part (0 if absent)
    SphericalMeasure sigma;
    std::vector<RadialProfile> profiles;  // one per atom of sigma; empty = no co part
    Mat gaussian;                         // d x d, zero if absent
    DriftMode drift_mode = DriftMode::MeanZero;
    Vec gamma;  // triplet drift with cutoff 1, explicit mode only
    std::vector<PointMass> perturbation;
    double beta_eps = 0.05;

    static LevyFamily from_stable(const StableSpec& s);

    int dim() const { return d; }
    bool has_co() const { return !profiles.empty(); }
    bool has_gaussian() const { return gaussian.size() > 0 && gaussian.norm() > 0; }
    double pert_mass() const;
    // slowly varying factor of the normalization g(t) = t^{1/alpha} G(t)
    double scale_G(double t) const;
    void validate() const;
};

// Normalization of X_{ts} toward the target: sqrt(t) for Gaussian targets, t^{1/alpha} G(t) otherwise.
double scale_g(const LevyFamily& X, const StableSpec& target, double t);

// The process s -> X_{ts} / g on [0,1] expressed through its own triplet.
struct ScaledView {
    const LevyFamily* fam = nullptr;
    double t = 1.0, g = 1.0;

    ScaledView() = default;
    ScaledView(const LevyFamily& f, double t_, double g_) : fam(&f), t(t_), g(g_) {}

    int dim() const { return fam->d; }
    size_t natoms() const { return fam->profiles.size(); }
    const Vec& dir(size_t j) const { return fam->sigma.dirs[j]; }
    double weight(size_t j) const { return t * fam->sigma.weights[j]; }
    double tail(size_t j, double y) const { return weight(j) * fam->profiles[j].tail(g * y); }
    double density(size_t j, double y) const { return weight(j) * g * fam->profiles[j].density(g * y); }
    // int_a^b y^p nu(dy) along atom j
    double moment(size_t j, double p, double a, double b) const;
    // moment over all atoms and point masses, |y| in [a,b)
    double moment_all(double p, double a, double b) const;
    Vec first_moment_vec(double a, double b) const;
    Mat gaussian() const;
    std::vector<PointMass> point_masses() const;

    // drift with truncation at kappa, i.e. gamma_kappa in X = gamma_kappa s + B + D^kappa + J^kappa
    Vec gamma_kappa(double kappa) const;
    // drift of the uncompensated form (requires finite first moment near 0)
    Vec gamma_natural() const;
    // Levy-Khintchine exponent of X_{t s}/g at s = 1
    cplx psi(const Vec& u) const;
};

// Levy-Khintchine exponent of the unscaled family.
cplx char_exponent(const LevyFamily& f, const Vec& u);

}  // namespace lc
