#pragma once

#include "levycouple/family.hpp"
#include "levycouple/json_io.hpp"
#include "levycouple/slowvar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lc {

// Stable term labels.
inline constexpr const char* kTermDrift = "drift-difference";
inline constexpr const char* kTermGaussian = "gaussian-difference";
inline constexpr const char* kTermSmall = "small-jump";
inline constexpr const char* kTermBig = "big-jump";
inline constexpr const char* kTermMeanShift = "mean-shift";

struct BoundRegime {
    std::string coupling;  // "thinning" or "comonotonic"
    std::string cutoff_name;  // "kappa" or "eps"
    double cutoff = 0.0;
    double q = 1.0;
    double t = 1.0;
};

struct BoundReport {
    double total = 0.0;
    std::vector<std::pair<std::string, double>> terms;  // summed into total
    std::vector<std::pair<std::string, double>> info;   // reported, not summed
    BoundRegime regime;

    double term(const std::string& label) const;
    json to_json() const;
};

// ---- upper bounds ----

// W_q bound (q <= 1) for the thinning coupling of two processes given through scaled views.
BoundReport thinning_bound_wq(const ScaledView& A, const ScaledView& B, double kappa, double q);
// For the rescaled pair (X^t, Z).
BoundReport thinning_bound_wq(const LevyFamily& X, const StableSpec& target, double t, double kappa, double q);

// W_2 bound; throws InfiniteMoment when either process lacks second moments.
BoundReport thinning_bound_w2(const ScaledView& A, const ScaledView& B, double kappa);
BoundReport thinning_bound_w2(const LevyFamily& X, const StableSpec& target, double t, double kappa);

BoundReport comono_bound_wq(const LevyFamily& X, const StableSpec& target, double t, double eps, double q);

// ---- rates ----

enum class RateRegime { NormalThinning, NormalComonotonic, NonNormal, Gaussian };
const char* rate_regime_name(RateRegime r);
RateRegime parse_rate_regime(const std::string& s);

struct RatePrediction {
    double exponent = 0.0;
    bool log_factor = false;
    double log_power = 0.0;  // power of log(1/t) when log_factor
    std::optional<double> r;  // optimal cutoff exponent kappa = t^r, when it applies
    std::optional<double> constant_hint;
    std::string source;
};

RatePrediction rate_exponent_upper(RateRegime regime, double alpha, double q, double p, double delta,
                                   double beta_star);

// ---- lower bounds ----

// |e^a - e^b|, exactly 0 when a and b agree to rounding
double exp_gap(cplx a, cplx b);

// max over u of 2^{q-1} |e^{t psi_A(u)} - e^{t psi_B(u)}| / |s u|^q with s = t^{1/alpha}
double toscani_lower(const LevyFamily& A, const LevyFamily& B, double q, double t, const std::vector<Vec>& u_grid,
                     double alpha);
// alpha taken from B (2 for a Gaussian B)
double toscani_lower(const LevyFamily& A, const LevyFamily& B, double q, double t, const std::vector<Vec>& u_grid);

// log-spaced radii in [r0, r1] times each direction
std::vector<Vec> log_u_grid(const std::vector<Vec>& dirs, double r0, double r1, int per_decade);

double lower_bound_nonnormal(const SlowVarSpec& G, double q, double t, double zmoment);

enum class GaussianVariant { A, C };
struct GaussianLowerParams {
    std::vector<Vec> u_star;  // variant A: candidate u_*, the best is used
    double delta = 1.0;       // variant C
    Vec ray;                  // variant C: unit direction of u_r = r * ray
    double r_max = 1e4;       // variant C: inf over r in (1, r_max] on a log grid
};
// S is the pure-jump part (drift included) of a BrownianPlusJumps family.
double lower_bound_gaussian(const LevyFamily& X, double t, GaussianVariant v, const GaussianLowerParams& prm);

struct MomentEstimate {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;  // 99%
};
MomentEstimate stable_q_moment(const StableSpec& target, double q, int n, std::uint64_t seed);

struct TwoScaleCheck {
    bool holds = false;
    double lhs = 0.0, rhs = 0.0;
    double slack() const { return lhs - rhs; }
};
// 2^{1-q/alpha} W_t + a(t)^q W_2t >= |1 - a(t)^q| E|Z_1|^q
TwoScaleCheck two_scale_lower_check(double wq_t, double wq_2t, const SlowVarSpec& G, double q, double t, double zmoment,
                               double alpha);

}  // namespace lc
