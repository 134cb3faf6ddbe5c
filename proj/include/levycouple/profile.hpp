#pragma once

#include "levycouple/slowvar.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace lc {

enum class ProfileKind { Stable, Tempered, Truncated, AugmentedH, AugmentedG };

const char* profile_kind_name(ProfileKind k);

struct HermiteTable;

// Radial part of a Levy measure along one direction: density Q(x) x^{-alpha-1} on (0, inf).
// The spherical weight is applied by the owner.
//   Stable:     Q = c
//   Tempered:   Q = c exp(-lambda x)
//   Truncated:  Q = c 1{x <= cut}
//   AugmentedH: Q = c H(x)^alpha, H given as a catalog slowly varying function evaluated at x
//   AugmentedG: defined through its inverse tail (c/alpha)^{1/alpha} u^{-1/alpha} G(1/u)
class RadialProfile {
public:
    static RadialProfile stable(double alpha, double c);
    static RadialProfile tempered(double alpha, double c, double lambda);
    static RadialProfile truncated(double alpha, double c, double cut);
    static RadialProfile augmented_h(double alpha, double c, SlowVarSpec H);
    static RadialProfile augmented_g(double alpha, double c, SlowVarSpec G);

    ProfileKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double c() const { return c_; }
    double lambda() const { return lambda_; }
    double cut() const { return cut_; }
    const SlowVarSpec& slowvar() const { return sv_; }

    double Q(double x) const;
    // Q(x) - c without cancellation
    double Q_minus_c(double x) const;
    double density(double x) const;
    // rho([x, inf))
    double tail(double x) const;
    // inf{x : tail(x) <= u}; checked so that tail(result) <= u
    double inverse(double u) const;
    // same value without the final contract check; used inside samplers and quadrature
    double inverse_fast(double u) const;
    // int_a^b x^p rho(dx); +inf when divergent
    double moment(double p, double a, double b) const;
    // rho((0, inf)); +inf for every catalog profile
    double total_mass() const;
    std::vector<double> kinks() const;
    // int_0^inf (e^{i w x} - 1 - i w x 1{x<1}) rho(dx)
    std::complex<double> levy_integral(double omega) const;
    // whether int_0^1 x^alpha rho(dx) < inf
    bool ibeta_finite() const;
    // |Q(x) - c| <= K (1 ^ x^p); K = 0 means Q == c
    double order_p() const;
    double order_K() const;

    bool operator==(const RadialProfile& o) const;

private:
    ProfileKind kind_ = ProfileKind::Stable;
    double alpha_ = 1.5, c_ = 1.0, lambda_ = 0.0, cut_ = 0.0;
    SlowVarSpec sv_;
    std::shared_ptr<HermiteTable> table_;

    double tail_exact(double x) const;
    double inverse_exact(double u) const;
    std::complex<double> levy_integral_quad(double omega) const;
};

}  // namespace lc
