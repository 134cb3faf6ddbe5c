#pragma once

#include "levycouple/family.hpp"
#include "levycouple/slowvar.hpp"

namespace lc {

// (c_alpha/alpha)^{1/alpha} u^{-1/alpha}
double stable_inverse_tail(double u, const Vec& v, const StableSpec& spec);

// Inverse radial tail of atom `atom` of the family (direction v must be one of its atoms).
double radial_inverse_tail(const RadialProfile& profile, double u);
double radial_inverse_tail(const LevyFamily& f, double u, const Vec& v);

struct BgIndex {
    double beta = 0.0;
    double beta_plus = 0.0;
};
BgIndex bg_index(const LevyFamily& f);

// I_p = int_{B(1)} |w|^p nu(dw)
double small_jump_moment(const LevyFamily& f, double p);

struct MomentBound {
    double C1 = 0, C2 = 0, C3 = 0;
    double beta_plus = 0;
    double value = 0;  // C1 t^{p/2} + C2 t^p + C3 t^{min(1, p/beta_plus)}
};
// Constructive bound on E[sup_{s<=t} |X_s|^p].
MomentBound sup_moment_bound_terms(const LevyFamily& f, double p, double t);
double sup_moment_bound(const LevyFamily& f, double p, double t);

// Copy of the family without its Gaussian part.
LevyFamily jump_part(const LevyFamily& f);

// Second-order constants for the inverse-tail perturbation h~.
struct SecondOrder {
    double p = 1.0;
    double delta = 1.0;
    double K_h = 0.0;
    double K_Q = 0.0;
};
SecondOrder second_order(const RadialProfile& prof);

// h~(x,v) with rho^{<-}(x,v) = (c_alpha/alpha)^{1/alpha} x^{-1/alpha} G(1/x) (1 + h~(x,v))
double htilde_eval(const LevyFamily& f, double x, const Vec& v);
// K_h~ = max{(c/alpha)^{p/alpha} K_h (1+K_h)^{p/alpha} (1+K_Q)^p, (K_Q+1)(1+K_h)^{1/alpha}, 1}
double htilde_constant(const SecondOrder& so, double c, double alpha);
// K_h~ (1 ^ (x^{-p/alpha} G(1/x)^p + x^{-delta})), with the x^{-delta} term dropped when K_Q = 0
double htilde_bound(const LevyFamily& f, double x, const Vec& v);

// t nu_X({w : <v,w> >= g(t)}) with g(t) = t^{1/alpha} G(t)
double doa_tail_limit(const LevyFamily& f, const Vec& v, double t, const SlowVarSpec& G);
// nu_Z({w : <v,w> >= 1})
double stable_halfspace_mass(const StableSpec& z, const Vec& v);

}  // namespace lc
