#include "levycouple/slowvar.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <cmath>

namespace lc {

namespace {
const double kE = std::exp(1.0);
}

double iterated_log(int n, double x) {
    double v = std::log(kE + x);
    for (int k = 2; k <= n; ++k) v = std::log(kE + v);
    return v;
}

double iterated_log_deriv(int n, double x) {
    double d = 1.0 / (kE + x);
    double l = 0.0;
    for (int i = 1; i < n; ++i) {
        l = (i == 1) ? std::log(kE + x) : std::log(kE + l);
        d /= (kE + l);
    }
    return d;
}

double iterated_log_diff(int n, double a, double b) {
    double d = std::log1p((a - b) / (kE + b));
    double lb = std::log(kE + b);
    for (int k = 2; k <= n; ++k) {
        d = std::log1p(d / (kE + lb));
        lb = std::log(kE + lb);
    }
    return d;
}

SlowVarSpec SlowVarSpec::constant(double c) {
    SlowVarSpec s;
    s.variant = Variant::Constant;
    s.c = c;
    return s;
}

SlowVarSpec SlowVarSpec::log_power(int first, std::vector<double> q) {
    SlowVarSpec s;
    s.variant = Variant::LogPower;
    s.first = first;
    s.q = std::move(q);
    return s;
}

SlowVarSpec SlowVarSpec::exp_integral(int phi_n, double phi_k, int sign) {
    SlowVarSpec s;
    s.variant = Variant::ExpIntegral;
    s.phi_n = phi_n;
    s.phi_k = phi_k;
    s.sign = sign >= 0 ? 1 : -1;
    return s;
}

bool SlowVarSpec::is_constant() const {
    if (variant == Variant::Constant) return true;
    if (variant == Variant::LogPower) {
        for (double v : q)
            if (v != 0.0) return false;
        return true;
    }
    return false;
}

double SlowVarSpec::phi(double s) const { return std::pow(iterated_log(phi_n, s), -phi_k); }

double SlowVarSpec::G(double t) const {
    switch (variant) {
    case Variant::Constant: return c;
    case Variant::LogPower: {
        double T = 1.0 / t, lg = 0.0;
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0.0) lg += q[i] * std::log(iterated_log(first + static_cast<int>(i), T));
        return std::exp(lg);
    }
    case Variant::ExpIntegral: {
        double hi = std::log(1.0 / t);
        double I = integrate([this](double r) { return phi(std::exp(r)); }, std::min(0.0, hi), std::max(0.0, hi));
        if (hi < 0) I = -I;
        return std::exp(sign * I);
    }
    }
    return c;
}

double SlowVarSpec::log_ratio(double t, double x) const {
    switch (variant) {
    case Variant::Constant: return 0.0;
    case Variant::LogPower: {
        double T = 1.0 / t, Tx = 1.0 / (x * t), s = 0.0;
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0.0) continue;
            int k = first + static_cast<int>(i);
            s += q[i] * std::log1p(iterated_log_diff(k, Tx, T) / iterated_log(k, T));
        }
        return s;
    }
    case Variant::ExpIntegral: {
        double a = std::log(1.0 / t), b = std::log(1.0 / (x * t));
        Fn f = [this](double r) { return phi(std::exp(r)); };
        double I = (b >= a) ? integrate(f, a, b) : -integrate(f, b, a);
        return sign * I;
    }
    }
    return 0.0;
}

double SlowVarSpec::a(double t) const { return std::exp(log_ratio(t, 2.0)); }

double SlowVarSpec::Gprime(double t) const {
    switch (variant) {
    case Variant::Constant: return 0.0;
    case Variant::LogPower: {
        double T = 1.0 / t, s = 0.0;
        for (size_t i = 0; i < q.size(); ++i) {
            int k = first + static_cast<int>(i);
            s += q[i] * iterated_log_deriv(k, T) / iterated_log(k, T);
        }
        return -G(t) * s / (t * t);
    }
    case Variant::ExpIntegral: return -sign * G(t) * phi(1.0 / t) / t;
    }
    return 0.0;
}

double SlowVarSpec::dlogG(double t) const {
    switch (variant) {
    case Variant::Constant: return 0.0;
    case Variant::LogPower: {
        double T = 1.0 / t, s = 0.0;
        for (size_t i = 0; i < q.size(); ++i) {
            int k = first + static_cast<int>(i);
            s += q[i] * iterated_log_deriv(k, T) / iterated_log(k, T);
        }
        return -T * s;
    }
    case Variant::ExpIntegral: return -sign * phi(1.0 / t);
    }
    return 0.0;
}

double SlowVarSpec::L(double t) const { return std::fabs(dlogG(t)); }

SlowVarEval slowvar_eval(const SlowVarSpec& spec, double t, double alpha) {
    if (!(t > 0.0) || t > 1.0) fail(ErrorKind::Domain, "slowvar_eval: t must lie in (0,1]");
    SlowVarEval e;
    e.G = spec.G(t);
    e.Gprime = spec.Gprime(t);
    e.L = spec.L(t);
    e.a = spec.a(t);
    e.g = std::pow(t, 1.0 / alpha) * e.G;
    return e;
}

bool iterated_log_bound_check(int n, double x, double t, double c) {
    double ratio_m1 = iterated_log_diff(n, x * t, t) / (c + iterated_log(n, t));
    double bound_m1 = x > 1.0 ? std::log(x) : 0.0;
    return ratio_m1 <= bound_m1;
}

LogRatioBound log_ratio_bound(const SlowVarSpec& spec, double t, double x) {
    if (spec.variant != SlowVarSpec::Variant::LogPower || spec.q.empty())
        fail(ErrorKind::Unsupported, "log_ratio_bound: LogPower spec required");
    bool nonneg = true, nonpos = true;
    for (double v : spec.q) {
        nonneg = nonneg && v >= 0;
        nonpos = nonpos && v <= 0;
    }
    if (!((nonneg && spec.q.front() > 0 && spec.q.back() > 0) || (nonpos && spec.q.front() < 0 && spec.q.back() < 0)))
        fail(ErrorKind::Unsupported, "log_ratio_bound: exponents must share one sign with nonzero ends");

    double T = 1.0 / t;
    // G(xt)/G(t) = l(T x')/l(T) with x' = 1/x
    double xp = 1.0 / x;
    double lhs = std::fabs(std::expm1(spec.log_ratio(t, x)));

    double s = 0.0;
    for (size_t i = 0; i < spec.q.size(); ++i) {
        int k = spec.first + static_cast<int>(i);
        s += spec.q[i] * iterated_log_deriv(k, T) / iterated_log(k, T);
    }
    double lt_over_l = (kE + T) * std::fabs(s);

    int m = spec.first + static_cast<int>(spec.q.size()) - 1;
    double qplus = 0, qminus = 0;
    for (double v : spec.q) {
        qplus += std::max(v, 0.0);
        qminus += std::max(-v, 0.0);
    }
    double lx = std::log(xp);
    double Sigma = xp >= 1.0 ? std::pow(1.0 + lx, qplus) : std::pow(1.0 + std::fabs(lx), m + qminus);
    double rhs = lt_over_l * Sigma * std::fabs(lx);
    return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

double g2_product(int n, double t) {
    double p = 1.0;
    for (int k = 1; k <= n; ++k) p /= (kE + iterated_log(k, 1.0 / t));
    return p;
}

}  // namespace lc
