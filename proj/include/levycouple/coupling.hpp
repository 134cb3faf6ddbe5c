#pragma once

#include "levycouple/family.hpp"
#include "levycouple/pair_measure.hpp"
#include "levycouple/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace lc {

enum class CouplingKind { Thinning, Comonotonic, Gaussian };
const char* coupling_name(CouplingKind k);
CouplingKind parse_coupling(const std::string& s);

struct PathEvent {
    double time = 0.0;
    double mag_X = 0.0, mag_Z = 0.0;  // jump = mag * directions[dir]
    int dir = 0;
    bool shared = false;
    double epoch = 0.0;  // Poisson epoch (comonotonic), 0 otherwise
};

struct TruncationResidual {
    double l2_bound = 0.0;  // bound on E[sup |omitted difference|^2]
    std::string description;
};

// Two coupled cadlag paths on [0,1]: linear slopes, shared event skeleton and, when present,
// a standard Brownian motion sampled on a uniform grid (linear between grid points).
struct CoupledPathPair {
    CouplingKind coupling = CouplingKind::Thinning;
    int d = 1;
    std::vector<Vec> directions;
    std::vector<PathEvent> events;
    Vec drift_X, drift_Z;              // per unit time
    Vec compensator_X, compensator_Z;  // per unit time; the path slope is drift + compensator
    Mat gauss_X, gauss_Z;              // multiply the Brownian skeleton; empty if absent
    std::vector<Vec> brownian;         // B(k/n), k = 0..n
    TruncationResidual residual;
    bool warning = false;
    bool legs_complete = true;  // false when shared events were not materialized

    Vec jump_X(const PathEvent& e) const { return e.mag_X * directions[static_cast<size_t>(e.dir)]; }
    Vec jump_Z(const PathEvent& e) const { return e.mag_Z * directions[static_cast<size_t>(e.dir)]; }
    Vec slope_X() const { return drift_X + compensator_X; }
    Vec slope_Z() const { return drift_Z + compensator_Z; }
    Vec endpoint_X() const;
    Vec endpoint_Z() const;
    // throws InvariantViolation
    void check_invariants() const;
};

// sup_{s in [0,1]} |X_s - Z_s|^q, exact on the event skeleton.
double sup_q_distance(const CoupledPathPair& pair, double q);
// Same for the path  slope*s + sum of (jump_X - jump_Z) over events accepted by `keep`.
double sup_q_filtered(const CoupledPathPair& pair, double q, const std::function<bool(const PathEvent&)>& keep,
                      const Vec& slope);

// CSV columns: time,abs_jump_X,abs_jump_Z,direction_index,shared
void write_events_csv(const CoupledPathPair& pair, std::ostream& os);

// ---- thinning ----

struct ThinningOptions {
    double delta = 1e-3;
    // keep only unshared events (the difference path is unaffected)
    bool difference_only = false;
    int grid_n = 256;
    double max_expected_events = 2e7;
};

class ThinningPlan {
public:
    ThinningPlan(const LevyFamily& X, const StableSpec& target, double t, const ThinningOptions& opt);
    CoupledPathPair sample(Rng& rng) const;
    // E h = e^{-m} E h(empty) + (1 - e^{-m}) E[h | at least one event], m = expected_events()
    CoupledPathPair sample_given_event(Rng& rng) const;
    CoupledPathPair sample_empty(Rng& rng) const;

    double t() const { return t_; }
    double g() const { return g_; }
    double delta() const { return opt_.delta; }
    const PairMeasure& measure() const { return *pm_; }
    double residual() const { return residual_; }
    double expected_events() const;
    // E[sum |jump_X - jump_Z|] over the events produced by the sampler
    double expected_abs_unshared() const;

private:
    struct Atom {
        double rate_Z = 0.0;  // sigma_Z c_Z, so nu_Z = rate_Z y^{-alpha-1}
        double env_K = 0.0, env_p = 1.0;
        bool env_one = true;
        // difference-only envelope pieces on [delta, ysplit) and [ysplit, inf)
        double ysplit = 0.0, massA = 0.0, massB = 0.0;
    };
    std::shared_ptr<LevyFamily> X_, Z_;
    std::unique_ptr<PairMeasure> pm_;
    ThinningOptions opt_;
    double t_, g_, alpha_;
    std::vector<Atom> atoms_;
    std::vector<Vec> dirs_;
    std::vector<PointMass> pms_;
    std::vector<int> pm_dir_;
    Vec slope_X_, slope_Z_;
    Mat gauss_X_;
    double residual_ = 0.0;

    enum class Mode { Plain, AtLeastOne, Empty };
    CoupledPathPair draw(Rng& rng, Mode mode) const;
    double draw_envelope(const Atom& a, bool pieceA, Rng& rng) const;
    double envelope(const Atom& a, double y) const;
};

CoupledPathPair sample_thinning_pair(const LevyFamily& X, const StableSpec& target, double t, double delta,
                                     std::uint64_t seed);

// ---- comonotonic ----

struct ComonotonicOptions {
    double gamma_max = 1e4;
    double warn_fraction = 0.5;
    int grid_n = 256;
    double max_expected_events = 2e7;
};

class ComonotonicPlan {
public:
    ComonotonicPlan(const LevyFamily& X, const StableSpec& target, double t, const ComonotonicOptions& opt);
    CoupledPathPair sample(Rng& rng) const;

    double t() const { return t_; }
    double g() const { return g_; }
    size_t natoms() const { return dirs_.size(); }
    double sigma_merged(size_t k) const { return sm_[k]; }
    // inverse radial tails of X^t and Z along merged atom k
    double R_X(double x, size_t k) const;
    double R_Z(double x, size_t k) const;
    // R_X - R_Z, zero when they agree to rounding
    double R_diff(double x, size_t k) const;
    // 4 sum_k sm_k int_a^b (R_X - R_Z)^2 dx
    double sq_diff_integral(double a, double b) const;
    // sum_k sm_k int_a^b |R_X - R_Z|^q dx
    double q_diff_integral(double q, double a, double b) const;
    // sum_k sm_k dir_k int_a^b (R_X - R_Z) dx, via moments of the radial measures
    Vec mean_diff(double a, double b) const;
    double residual() const { return residual_; }
    double signal() const { return signal_; }
    const Vec& slope_X() const { return slope_X_; }
    const Vec& slope_Z() const { return slope_Z_; }
    const Mat& gauss_X() const { return gauss_X_; }
    const std::vector<PointMass>& point_masses() const { return pms_; }

private:
    std::shared_ptr<LevyFamily> X_, Z_;
    ScaledView vX_, vZ_;
    ComonotonicOptions opt_;
    double t_, g_;
    std::vector<Vec> dirs_;
    std::vector<double> sm_, sx_, sz_;
    std::vector<int> ix_, iz_;
    std::vector<double> cum_;
    std::vector<PointMass> pms_;
    std::vector<int> pm_dir_;
    Vec slope_X_, slope_Z_;
    Mat gauss_X_;
    double residual_ = 0.0, signal_ = 0.0;

    Vec signed_mean(const ScaledView& v, int j, double sx, size_t k, double a) const;
};

CoupledPathPair sample_comonotonic_pair(const LevyFamily& X, const StableSpec& target, double t, double gamma_max,
                                        std::uint64_t seed);

// ---- synchronous Brownian ----

struct GaussianOptions {
    double kappa = 1e-3;  // jumps of the rescaled pure-jump part below kappa are omitted
    int grid_n = 256;
    double max_expected_events = 2e7;
};

class GaussianPlan {
public:
    GaussianPlan(const LevyFamily& X, double t, const GaussianOptions& opt);
    CoupledPathPair sample(Rng& rng) const;

    double t() const { return t_; }
    double kappa() const { return opt_.kappa; }
    double residual() const { return residual_; }
    const ScaledView& view() const { return v_; }
    // E[sum |jumps| >= y] of the rescaled pure-jump part
    double expected_abs_jumps(double y) const;

private:
    std::shared_ptr<LevyFamily> X_;
    ScaledView v_;
    GaussianOptions opt_;
    double t_;
    std::vector<double> tails_;  // per atom, mass above kappa
    std::vector<Vec> dirs_;
    std::vector<PointMass> pms_;
    std::vector<int> pm_dir_;
    Vec slope_;
    Mat gauss_;
    double residual_ = 0.0;
};

CoupledPathPair sample_gaussian_pair(const LevyFamily& X, double t, int grid_n, std::uint64_t seed);

// ---- single process ----

struct MarginalOptions {
    double gamma_max = 200.0;
    // replace the omitted compensated series by a Gaussian with the same covariance
    bool gaussian_remainder = false;
    double max_expected_events = 2e7;
};

class MarginalPlan {
public:
    // X_{t} / g for the given scaling (g = 1 gives X_t itself)
    MarginalPlan(const LevyFamily& X, double t, double g, const MarginalOptions& opt);
    Vec sample(Rng& rng) const;
    // variance of the omitted compensated series, summed over coordinates
    double omitted_variance() const { return omitted_var_; }

private:
    std::shared_ptr<LevyFamily> X_;
    ScaledView v_;
    MarginalOptions opt_;
    std::vector<double> cum_;
    std::vector<PointMass> pms_;
    Vec slope_;
    Mat gauss_;
    std::vector<double> rem_sd_;  // per atom
    double omitted_var_ = 0.0;
};

// Uses gamma_max = 1000 and the Gaussian remainder.
std::vector<Vec> sample_marginal(const LevyFamily& X, double t, int n, std::uint64_t seed);

// helpers shared by the samplers
void draw_point_masses(const std::vector<PointMass>& pms, const std::vector<int>& dir, Rng& rng,
                       std::vector<PathEvent>& out);
std::vector<Vec> draw_brownian(int d, int n, Rng& rng);
void finish_events(std::vector<PathEvent>& ev);

}  // namespace lc
