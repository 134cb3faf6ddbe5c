#pragma once

#include <vector>

namespace lc {

// Iterated logarithms: l_1(x) = log(e + x), l_{n+1}(x) = log(e + l_n(x)).
double iterated_log(int n, double x);
// l_n'(x) = (e + x)^{-1} prod_{i<n} (e + l_i(x))^{-1}
double iterated_log_deriv(int n, double x);
// l_n(a) - l_n(b) without cancellation
double iterated_log_diff(int n, double a, double b);

// A slowly varying function G from the built-in catalog.
//   Constant:    G = c
//   LogPower:    G(t) = prod_k l_k(1/t)^{q_k}, k = first, first+1, ...
//   ExpIntegral: G(t) = exp(sign * int_1^{1/t} phi(s)/s ds), phi(s) = l_n(s)^{-k}
struct SlowVarSpec {
    enum class Variant { Constant, LogPower, ExpIntegral };

    Variant variant = Variant::Constant;
    double c = 1.0;
    int first = 1;
    std::vector<double> q;
    int phi_n = 1;
    double phi_k = 1.0;
    int sign = 1;

    static SlowVarSpec constant(double c);
    static SlowVarSpec log_power(int first, std::vector<double> q);
    static SlowVarSpec exp_integral(int phi_n, double phi_k, int sign);

    // Evaluators are defined for every t > 0.
    double G(double t) const;
    double Gprime(double t) const;
    // t G'(t) / G(t), finite for every t > 0
    double dlogG(double t) const;
    // t |G'(t)| / G(t)
    double L(double t) const;
    // G(2t) / G(t), computed without cancellation
    double a(double t) const;
    // log G(xt) - log G(t)
    double log_ratio(double t, double x) const;
    double phi(double s) const;
    bool is_constant() const;
};

struct SlowVarEval {
    double G, Gprime, L, a, g;
};

// Evaluate all quantities at t in (0,1]; g = t^{1/alpha} G(t).
SlowVarEval slowvar_eval(const SlowVarSpec& spec, double t, double alpha);

// (c + l_n(xt)) / (c + l_n(t)) <= 1 + 1{x>1} log x
bool iterated_log_bound_check(int n, double x, double t, double c);

// Log-ratio bound |G(xt)/G(t) - 1| <= (|G~(t)|/G(t)) Sigma(x) |log x| for LogPower specs with
// sign-uniform exponents, where G~ uses the (e+T) l'(T) form at T = 1/t.
struct LogRatioBound {
    double lhs, rhs;
    bool holds;
};
LogRatioBound log_ratio_bound(const SlowVarSpec& spec, double t, double x);

// G_2(t) = prod_{k=1}^n (e + l_k(1/t))^{-1}
double g2_product(int n, double t);

}  // namespace lc
