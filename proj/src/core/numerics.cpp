#include "levycouple/numerics.hpp"

#include "levycouple/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

namespace {

constexpr double kEpsAbs = 1e-12;
constexpr double kEpsRel = 1e-10;
constexpr size_t kLimit = 4000;

struct Workspaces {
    gsl_integration_workspace* w = nullptr;
    gsl_integration_workspace* cycle = nullptr;
    Workspaces() {
        gsl_set_error_handler_off();
        w = gsl_integration_workspace_alloc(kLimit);
        cycle = gsl_integration_workspace_alloc(kLimit);
    }
    ~Workspaces() {
        gsl_integration_workspace_free(w);
        gsl_integration_workspace_free(cycle);
    }
};

Workspaces& ws() {
    thread_local Workspaces w;
    return w;
}

double trampoline(double x, void* p) {
    const Fn& f = *static_cast<const Fn*>(p);
    return f(x);
}

void check(int status, double result, double abserr, const char* where) {
    if (!std::isfinite(result)) throw NumericalError(std::string(where) + ": non-finite result", abserr);
    if (status == 0) return;
    if (abserr <= std::max(1e-9, 1e-7 * std::fabs(result))) return;
    throw NumericalError(std::string(where) + ": " + gsl_strerror(status), abserr);
}

double qag_finite(const Fn& f, double a, double b) {
    if (!(b > a)) return 0.0;
    gsl_function F{&trampoline, const_cast<Fn*>(&f)};
    double r = 0, e = 0;
    int st = gsl_integration_qag(&F, a, b, kEpsAbs, kEpsRel, kLimit, GSL_INTEG_GAUSS31, ws().w, &r, &e);
    if (st != 0) {
        // singular endpoints: fall back to the extrapolating rule
        double r2 = 0, e2 = 0;
        int st2 = gsl_integration_qags(&F, a, b, kEpsAbs, kEpsRel, kLimit, ws().w, &r2, &e2);
        if (st2 == 0 || e2 < e) {
            st = st2;
            r = r2;
            e = e2;
        }
    }
    check(st, r, e, "qag");
    return r;
}

std::vector<double> sorted_breaks(const std::vector<double>& br, double a, double b) {
    std::vector<double> out;
    for (double x : br)
        if (std::isfinite(x) && x > a && x < b) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

double integrate(const Fn& f, double a, double b, const std::vector<double>& breaks) {
    if (!(b > a)) return 0.0;
    auto pts = sorted_breaks(breaks, a, b);
    double lo = a, sum = 0.0;
    for (double p : pts) {
        sum += qag_finite(f, lo, p);
        lo = p;
    }
    return sum + qag_finite(f, lo, b);
}

double integrate_log(const Fn& f, double a, double b, const std::vector<double>& breaks) {
    if (!(b > a)) return 0.0;
    Fn g = [&f](double s) {
        double x = std::exp(s);
        if (x == 0.0 || !std::isfinite(x)) return 0.0;
        double v = f(x) * x;
        return std::isfinite(v) ? v : 0.0;
    };
    auto pts = sorted_breaks(breaks, a, b);
    if (pts.empty() && a == 0.0 && std::isinf(b)) pts.push_back(1.0);
    std::vector<double> s;
    for (double p : pts) s.push_back(std::log(p));

    double sum = 0.0;
    gsl_function G{&trampoline, &g};
    double sa = a > 0 ? std::log(a) : -std::numeric_limits<double>::infinity();
    double sb = std::isinf(b) ? std::numeric_limits<double>::infinity() : std::log(b);
    std::vector<double> knots;
    knots.push_back(sa);
    knots.insert(knots.end(), s.begin(), s.end());
    knots.push_back(sb);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        if (!(hi > lo)) continue;
        double r = 0, e = 0;
        int st = 0;
        if (std::isinf(lo) && std::isinf(hi)) {
            st = gsl_integration_qagi(&G, kEpsAbs, kEpsRel, kLimit, ws().w, &r, &e);
            check(st, r, e, "qagi");
        } else if (std::isinf(lo)) {
            st = gsl_integration_qagil(&G, hi, kEpsAbs, kEpsRel, kLimit, ws().w, &r, &e);
            check(st, r, e, "qagil");
        } else if (std::isinf(hi)) {
            st = gsl_integration_qagiu(&G, lo, kEpsAbs, kEpsRel, kLimit, ws().w, &r, &e);
            check(st, r, e, "qagiu");
        } else {
            r = qag_finite(g, lo, hi);
        }
        sum += r;
    }
    return sum;
}

namespace {

double oscillatory(const Fn& f, double omega, double a, double b, enum gsl_integration_qawo_enum kind) {
    if (!(b > a)) return 0.0;
    if (omega == 0.0) return kind == GSL_INTEG_COSINE ? integrate(f, a, b) : 0.0;
    double sign = 1.0;
    if (omega < 0) {
        omega = -omega;
        if (kind == GSL_INTEG_SINE) sign = -1.0;
    }
    gsl_function F{&trampoline, const_cast<Fn*>(&f)};
    double r = 0, e = 0;
    int st;
    if (std::isinf(b)) {
        gsl_integration_qawo_table* t = gsl_integration_qawo_table_alloc(omega, 1.0, kind, 50);
        st = gsl_integration_qawf(&F, a, 1e-11, kLimit, ws().w, ws().cycle, t, &r, &e);
        gsl_integration_qawo_table_free(t);
        check(st, r, e, "qawf");
    } else if (omega * (b - a) < 20.0) {
        Fn h = [&](double x) {
            return f(x) * (kind == GSL_INTEG_COSINE ? std::cos(omega * x) : std::sin(omega * x));
        };
        return sign * integrate(h, a, b);
    } else {
        gsl_integration_qawo_table* t = gsl_integration_qawo_table_alloc(omega, b - a, kind, 50);
        st = gsl_integration_qawo(&F, a, kEpsAbs, kEpsRel, kLimit, ws().w, t, &r, &e);
        gsl_integration_qawo_table_free(t);
        check(st, r, e, "qawo");
    }
    return sign * r;
}

}  // namespace

double integrate_cos(const Fn& f, double omega, double a, double b) {
    return oscillatory(f, omega, a, b, GSL_INTEG_COSINE);
}

double integrate_sin(const Fn& f, double omega, double a, double b) {
    return oscillatory(f, omega, a, b, GSL_INTEG_SINE);
}

double invert_decreasing(const Fn& f, double target, double lo, double hi, double rel_tol) {
    // grow the bracket geometrically until f(lo) > target >= f(hi)
    int guard = 0;
    while (f(lo) <= target) {
        lo *= 0.5;
        if (++guard > 4000 || lo == 0.0) throw NumericalError("invert: cannot bracket from below", lo);
    }
    guard = 0;
    while (f(hi) > target) {
        hi *= 2.0;
        if (++guard > 4000 || !std::isfinite(hi)) throw NumericalError("invert: cannot bracket from above", hi);
    }
    for (int it = 0; it < 400 && hi - lo > rel_tol * hi; ++it) {
        double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

namespace {

// Legendre continued fraction for Gamma(s,z), modified Lentz; good for z >= 1, s <= z.
double gamma_cf(double s, double z) {
    const double tiny = 1e-300;
    double b = z + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-z + s * std::log(z)) * h;
}

}  // namespace

double upper_gamma(double s, double z) {
    if (!(z > 0)) fail(ErrorKind::Domain, "upper_gamma: z must be positive");
    if (s > 0) return boost::math::tgamma(s, z);
    if (s == 0.0) return boost::math::expint(1, z);
    if (z >= 1.0) return gamma_cf(s, z);
    // downward recurrence Gamma(s,z) = (Gamma(s+1,z) - z^s e^{-z}) / s
    double sp = s + 1.0;
    double v = upper_gamma(sp, z);
    return (v - std::pow(z, s) * std::exp(-z)) / s;
}

double stirling2(int n, int k) {
    if (n == 0 && k == 0) return 1.0;
    if (n <= 0 || k <= 0 || k > n) return 0.0;
    std::vector<std::vector<double>> S(n + 1, std::vector<double>(n + 1, 0.0));
    S[0][0] = 1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1];
    return S[n][k];
}

double cosm1(double y) {
    double h = std::sin(0.5 * y);
    return -2.0 * h * h;
}

double sinmx(double y) {
    if (std::fabs(y) < 1e-2) {
        double y2 = y * y;
        return y * y2 * (-1.0 / 6.0 + y2 * (1.0 / 120.0 - y2 / 5040.0));
    }
    return std::sin(y) - y;
}

}  // namespace lc
