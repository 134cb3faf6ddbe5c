#include "levycouple/profile.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace lc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double stable_moment(double c, double alpha, double p, double a, double b) {
    if (!(b > a)) return 0.0;
    double s = p - alpha;
    if (s == 0.0) {
        if (a == 0.0 || std::isinf(b)) return kInf;
        return c * std::log(b / a);
    }
    if (a == 0.0 && s < 0) return kInf;
    if (std::isinf(b) && s > 0) return kInf;
    double hb = std::isinf(b) ? 0.0 : std::pow(b, s);
    double ha = a == 0.0 ? 0.0 : std::pow(a, s);
    return c * (hb - ha) / s;
}

// Solve log tail(e^s) = log u by Newton in log-log coordinates, keeping a bracket.
template <class Tail, class Dens>
double newton_loglog(const Tail& tail, const Dens& dens, double u, double lo, double hi) {
    double lu = std::log(u);
    double slo = std::log(lo), shi = std::log(hi);
    double s = 0.5 * (slo + shi);
    for (int it = 0; it < 200; ++it) {
        double x = std::exp(s);
        double T = tail(x);
        if (!(T > 0)) {
            shi = s;
            s = 0.5 * (slo + shi);
            continue;
        }
        double F = std::log(T) - lu;
        if (F > 0)
            slo = s;
        else
            shi = s;
        double dF = -x * dens(x) / T;
        double sn = (dF < 0) ? s - F / dF : 0.5 * (slo + shi);
        if (!(sn > slo && sn < shi)) sn = 0.5 * (slo + shi);
        if (std::fabs(sn - s) < 1e-15 * std::max(1.0, std::fabs(s)) || shi - slo < 1e-15) {
            s = sn;
            break;
        }
        s = sn;
    }
    return std::exp(s);
}

}  // namespace

struct HermiteTable {
    std::once_flag once;
    double s0 = 0, h = 0;
    std::vector<double> L, m;

    double eval(double s) const {
        double r = (s - s0) / h;
        size_t i = static_cast<size_t>(r);
        if (i + 1 >= L.size()) i = L.size() - 2;
        double w = r - static_cast<double>(i);
        double w2 = w * w, w3 = w2 * w;
        return (2 * w3 - 3 * w2 + 1) * L[i] + (w3 - 2 * w2 + w) * h * m[i] + (-2 * w3 + 3 * w2) * L[i + 1] +
               (w3 - w2) * h * m[i + 1];
    }
    double deriv(double s) const {
        double r = (s - s0) / h;
        size_t i = static_cast<size_t>(r);
        if (i + 1 >= L.size()) i = L.size() - 2;
        double w = r - static_cast<double>(i);
        double w2 = w * w;
        return ((6 * w2 - 6 * w) * L[i] + (-6 * w2 + 6 * w) * L[i + 1]) / h + (3 * w2 - 4 * w + 1) * m[i] +
               (3 * w2 - 2 * w) * m[i + 1];
    }
    bool covers_tail(double lu) const { return lu <= L.front() && lu >= L.back(); }
    // s with eval(s) = lu
    double invert(double lu) const {
        size_t lo = 0, hi = L.size() - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (L[mid] >= lu)
                lo = mid;
            else
                hi = mid;
        }
        double a = s0 + h * static_cast<double>(lo), b = a + h;
        double s = a + h * (L[lo] - lu) / (L[lo] - L[hi]);
        for (int it = 0; it < 60; ++it) {
            double F = eval(s) - lu;
            if (F > 0)
                a = s;
            else
                b = s;
            double d = deriv(s);
            double sn = d < 0 ? s - F / d : 0.5 * (a + b);
            if (!(sn >= a && sn <= b)) sn = 0.5 * (a + b);
            if (std::fabs(sn - s) < 1e-14) return sn;
            s = sn;
        }
        return s;
    }
};

const char* profile_kind_name(ProfileKind k) {
    switch (k) {
    case ProfileKind::Stable: return "stable";
    case ProfileKind::Tempered: return "tempered";
    case ProfileKind::Truncated: return "truncated";
    case ProfileKind::AugmentedH: return "augmented-h";
    case ProfileKind::AugmentedG: return "augmented-g";
    }
    return "?";
}

static void check_alpha(double alpha) {
    if (!(alpha > 0 && alpha < 2) || alpha == 1.0)
        fail(ErrorKind::Config, "profile: alpha must lie in (0,2) and differ from 1");
}

RadialProfile RadialProfile::stable(double alpha, double c) {
    check_alpha(alpha);
    if (!(c > 0)) fail(ErrorKind::Config, "profile: c must be positive");
    RadialProfile p;
    p.kind_ = ProfileKind::Stable;
    p.alpha_ = alpha;
    p.c_ = c;
    return p;
}

RadialProfile RadialProfile::tempered(double alpha, double c, double lambda) {
    RadialProfile p = stable(alpha, c);
    if (!(lambda >= 0)) fail(ErrorKind::Config, "profile: tempering rate must be nonnegative");
    if (lambda == 0.0) return p;
    p.kind_ = ProfileKind::Tempered;
    p.lambda_ = lambda;
    p.table_ = std::make_shared<HermiteTable>();
    return p;
}

RadialProfile RadialProfile::truncated(double alpha, double c, double cut) {
    RadialProfile p = stable(alpha, c);
    if (!(cut > 0)) fail(ErrorKind::Config, "profile: truncation level must be positive");
    if (std::isinf(cut)) return p;
    p.kind_ = ProfileKind::Truncated;
    p.cut_ = cut;
    return p;
}

RadialProfile RadialProfile::augmented_h(double alpha, double c, SlowVarSpec H) {
    RadialProfile p = stable(alpha, c);
    p.kind_ = ProfileKind::AugmentedH;
    p.sv_ = std::move(H);
    p.table_ = std::make_shared<HermiteTable>();
    return p;
}

RadialProfile RadialProfile::augmented_g(double alpha, double c, SlowVarSpec G) {
    RadialProfile p = stable(alpha, c);
    p.kind_ = ProfileKind::AugmentedG;
    p.sv_ = std::move(G);
    return p;
}

bool RadialProfile::operator==(const RadialProfile& o) const {
    if (kind_ != o.kind_ || alpha_ != o.alpha_ || c_ != o.c_ || lambda_ != o.lambda_ || cut_ != o.cut_) return false;
    if (kind_ == ProfileKind::AugmentedH || kind_ == ProfileKind::AugmentedG) {
        const auto &a = sv_, &b = o.sv_;
        return a.variant == b.variant && a.c == b.c && a.first == b.first && a.q == b.q && a.phi_n == b.phi_n &&
               a.phi_k == b.phi_k && a.sign == b.sign;
    }
    return true;
}

double RadialProfile::Q(double x) const {
    switch (kind_) {
    case ProfileKind::Stable: return c_;
    case ProfileKind::Tempered: return c_ * std::exp(-lambda_ * x);
    case ProfileKind::Truncated: return x <= cut_ ? c_ : 0.0;
    case ProfileKind::AugmentedH: return c_ * std::pow(sv_.G(x), alpha_);
    case ProfileKind::AugmentedG: return density(x) * std::pow(x, alpha_ + 1.0);
    }
    return c_;
}

double RadialProfile::Q_minus_c(double x) const {
    switch (kind_) {
    case ProfileKind::Stable: return 0.0;
    case ProfileKind::Tempered: return c_ * std::expm1(-lambda_ * x);
    case ProfileKind::Truncated: return x <= cut_ ? 0.0 : -c_;
    case ProfileKind::AugmentedH: return c_ * std::expm1(alpha_ * std::log(sv_.G(x)));
    case ProfileKind::AugmentedG: return Q(x) - c_;
    }
    return 0.0;
}

namespace {

// d log rho^{<-}(e^s) / ds for the G-defined profile at u = e^s
double phi_prime(const SlowVarSpec& G, double alpha, double u) {
    double T = 1.0 / u;
    // T G'(T) / G(T) vanishes at both ends
    if (T == 0.0 || !std::isfinite(T)) return -1.0 / alpha;
    return -1.0 / alpha - G.dlogG(T);
}

}  // namespace

double RadialProfile::density(double x) const {
    if (!(x > 0)) return 0.0;
    switch (kind_) {
    case ProfileKind::Stable: return c_ * std::pow(x, -alpha_ - 1.0);
    case ProfileKind::Tempered: return c_ * std::exp(-lambda_ * x) * std::pow(x, -alpha_ - 1.0);
    case ProfileKind::Truncated: return x <= cut_ ? c_ * std::pow(x, -alpha_ - 1.0) : 0.0;
    case ProfileKind::AugmentedH: return c_ * std::pow(sv_.G(x), alpha_) * std::pow(x, -alpha_ - 1.0);
    case ProfileKind::AugmentedG: {
        double u = tail(x);
        double d = phi_prime(sv_, alpha_, u);
        if (!(d < 0)) fail(ErrorKind::InvariantViolation, "augmented profile: inverse tail is not decreasing");
        return u / (x * std::fabs(d));
    }
    }
    return 0.0;
}

double RadialProfile::tail(double x) const {
    if (!(x > 0)) return kInf;
    switch (kind_) {
    case ProfileKind::Stable: return c_ * std::pow(x, -alpha_) / alpha_;
    case ProfileKind::Tempered: {
        double z = lambda_ * x;
        if (z > 700.0) return 0.0;
        return c_ * std::pow(lambda_, alpha_) * upper_gamma(-alpha_, z);
    }
    case ProfileKind::Truncated:
        if (x >= cut_) return 0.0;
        return c_ * (std::pow(x, -alpha_) - std::pow(cut_, -alpha_)) / alpha_;
    case ProfileKind::AugmentedH:
    case ProfileKind::AugmentedG: return tail_exact(x);
    }
    return 0.0;
}

double RadialProfile::tail_exact(double x) const {
    if (kind_ == ProfileKind::AugmentedH) {
        return integrate_log([this](double y) { return density(y); }, x, kInf, {1.0});
    }
    // AugmentedG: Newton on log rho^{<-}(e^s) = log x
    double k = std::pow(c_ / alpha_, 1.0 / alpha_);
    double lx = std::log(x);
    double s = std::log(c_ / alpha_) - alpha_ * lx;
    for (int it = 0; it < 200; ++it) {
        double u = std::exp(s);
        double F = std::log(k) - s / alpha_ + std::log(sv_.G(1.0 / u)) - lx;
        double d = phi_prime(sv_, alpha_, u);
        if (!(d < 0)) fail(ErrorKind::InvariantViolation, "augmented profile: inverse tail is not decreasing");
        double step = F / d;
        s -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(s))) break;
    }
    return std::exp(s);
}

double RadialProfile::total_mass() const { return kInf; }

std::vector<double> RadialProfile::kinks() const {
    if (kind_ == ProfileKind::Truncated) return {cut_};
    return {};
}

double RadialProfile::inverse_exact(double u) const {
    switch (kind_) {
    case ProfileKind::Stable: return std::pow(c_ / (alpha_ * u), 1.0 / alpha_);
    case ProfileKind::Truncated: return std::pow(alpha_ * u / c_ + std::pow(cut_, -alpha_), -1.0 / alpha_);
    case ProfileKind::AugmentedG:
        return std::pow(c_ / alpha_, 1.0 / alpha_) * std::pow(u, -1.0 / alpha_) * sv_.G(1.0 / u);
    case ProfileKind::Tempered: {
        double hi = std::pow(c_ / (alpha_ * u), 1.0 / alpha_);
        // below the normal range the tempering is invisible and the stable inverse is the answer
        if (!(hi >= std::numeric_limits<double>::min())) return hi;
        double lo = hi;
        int guard = 0;
        do {
            lo *= 0.5;
            if (++guard > 2000) throw NumericalError("tempered inverse: cannot bracket", lo);
        } while (tail(lo) <= u);
        while (tail(hi) > u) hi = std::max(hi * (1.0 + 1e-12), std::nextafter(hi, kInf));
        return newton_loglog([this](double x) { return tail(x); }, [this](double x) { return density(x); }, u, lo,
                             hi);
    }
    case ProfileKind::AugmentedH: {
        double guess = inverse_fast(u);
        return invert_decreasing([this](double x) { return tail_exact(x); }, u, guess * 0.999, guess * 1.001);
    }
    }
    return 0.0;
}

double RadialProfile::inverse_fast(double u) const {
    if (kind_ != ProfileKind::AugmentedH && kind_ != ProfileKind::Tempered) return inverse_exact(u);
    HermiteTable& tb = *table_;
    std::call_once(tb.once, [this, &tb] {
        const double s0 = std::log(1e-30);
        // tempered tails are exp(-lambda x) small beyond 700/lambda
        const double s1 = kind_ == ProfileKind::Tempered ? std::log(700.0 / lambda_) : std::log(1e15);
        const double h = std::log(10.0) / 80.0;
        size_t n = static_cast<size_t>(std::ceil((s1 - s0) / h)) + 1;
        tb.s0 = s0;
        tb.h = h;
        std::vector<double> T(n);
        auto exact = [this](double x) { return kind_ == ProfileKind::Tempered ? tail(x) : tail_exact(x); };
        T[n - 1] = exact(std::exp(s0 + h * static_cast<double>(n - 1)));
        for (size_t i = n - 1; i-- > 0;) {
            double a = std::exp(s0 + h * static_cast<double>(i)), b = std::exp(s0 + h * static_cast<double>(i + 1));
            if (kind_ == ProfileKind::Tempered)
                T[i] = exact(a);
            else
                T[i] = T[i + 1] + integrate([this](double y) { return density(y); }, a, b);
        }
        tb.L.resize(n);
        tb.m.resize(n);
        for (size_t i = 0; i < n; ++i) {
            double x = std::exp(s0 + h * static_cast<double>(i));
            tb.L[i] = std::log(T[i]);
            tb.m[i] = -x * density(x) / T[i];
        }
    });
    double lu = std::log(u);
    if (!tb.covers_tail(lu)) {
        if (kind_ == ProfileKind::Tempered) return inverse_exact(u);
        // outside the table: exact inversion
        double hi = std::pow(c_ / (alpha_ * u), 1.0 / alpha_);
        return invert_decreasing([this](double x) { return tail_exact(x); }, u, hi * 0.5, hi * 2.0);
    }
    return std::exp(tb.invert(lu));
}

double RadialProfile::inverse(double u) const {
    if (!(u > 0)) fail(ErrorKind::Domain, "radial inverse tail: u must be positive");
    if (u >= total_mass()) return 0.0;
    double x = inverse_exact(u);
    // right-inverse contract: tail(x) <= u
    for (int i = 0; i < 200 && tail(x) > u; ++i) x = (i < 100) ? std::nextafter(x, kInf) : x * (1.0 + 1e-13);
    if (tail(x) > u) fail(ErrorKind::InvariantViolation, "radial inverse tail: tail is not monotone near the root");
    return x;
}

double RadialProfile::moment(double p, double a, double b) const {
    if (!(b > a)) return 0.0;
    switch (kind_) {
    case ProfileKind::Stable: return stable_moment(c_, alpha_, p, a, b);
    case ProfileKind::Truncated: return stable_moment(c_, alpha_, p, a, std::min(b, cut_));
    case ProfileKind::Tempered: {
        double s = p - alpha_;
        if (a == 0.0 && s <= 0) return kInf;
        double pre = c_ * std::pow(lambda_, -s);
        double ga = (a == 0.0) ? boost::math::tgamma(s) : upper_gamma(s, lambda_ * a);
        double gb = std::isinf(b) ? 0.0 : (lambda_ * b > 700.0 ? 0.0 : upper_gamma(s, lambda_ * b));
        double v = pre * (ga - gb);
        if (!(v > 1e-6 * pre * std::fabs(ga)) && a > 0) {
            return integrate_log([this, p](double x) { return std::pow(x, p) * density(x); }, a, b);
        }
        return v;
    }
    case ProfileKind::AugmentedH: {
        if (a == 0.0 && (p < alpha_ || (p == alpha_ && !ibeta_finite()))) return kInf;
        if (std::isinf(b) && p >= alpha_) return kInf;
        return integrate_log([this, p](double x) { return std::pow(x, p) * density(x); }, a, b, {1.0});
    }
    case ProfileKind::AugmentedG: {
        if (a == 0.0 && (p < alpha_ || (p == alpha_ && !ibeta_finite()))) return kInf;
        if (std::isinf(b) && p >= alpha_) return kInf;
        double ulo = std::isinf(b) ? 0.0 : tail(b);
        double uhi = a == 0.0 ? kInf : tail(a);
        return integrate_log([this, p](double u) { return std::pow(inverse_exact(u), p); }, ulo, uhi, {1.0});
    }
    }
    return 0.0;
}

bool RadialProfile::ibeta_finite() const {
    if (kind_ != ProfileKind::AugmentedH && kind_ != ProfileKind::AugmentedG) return false;
    switch (sv_.variant) {
    case SlowVarSpec::Variant::Constant: return false;
    case SlowVarSpec::Variant::LogPower: {
        int last = sv_.first + static_cast<int>(sv_.q.size()) - 1;
        for (int k = 1; k <= last; ++k) {
            double e = (k >= sv_.first) ? alpha_ * sv_.q[static_cast<size_t>(k - sv_.first)] : 0.0;
            if (e < -1.0) return true;
            if (e > -1.0) return false;
        }
        return false;
    }
    case SlowVarSpec::Variant::ExpIntegral:
        if (sv_.sign > 0) return false;
        if (sv_.phi_n >= 2) return true;
        if (sv_.phi_k < 1.0) return true;
        if (sv_.phi_k > 1.0) return false;
        return alpha_ > 1.0;
    }
    return false;
}

double RadialProfile::order_p() const {
    switch (kind_) {
    case ProfileKind::Truncated: return 2.0;
    default: return 1.0;
    }
}

double RadialProfile::order_K() const {
    switch (kind_) {
    case ProfileKind::Stable: return 0.0;
    case ProfileKind::Tempered: return c_ * std::max(lambda_, 1.0);
    case ProfileKind::Truncated: return c_ * std::max(1.0, std::pow(cut_, -2.0));
    default: return kInf;
    }
}

std::complex<double> RadialProfile::levy_integral(double omega) const {
    if (omega == 0.0) return {0.0, 0.0};
    if (omega < 0) return std::conj(levy_integral(-omega));
    using cd = std::complex<double>;
    if (kind_ == ProfileKind::Stable || kind_ == ProfileKind::Tempered) {
        double g = boost::math::tgamma(-alpha_);
        const cd i(0.0, 1.0);
        if (kind_ == ProfileKind::Stable) {
            cd pw = std::pow(omega, alpha_) * std::exp(cd(0.0, -0.5 * kPi * alpha_));
            return c_ * g * pw - i * omega * c_ / (1.0 - alpha_);
        }
        cd base = std::pow(cd(lambda_, -omega), alpha_) - std::pow(lambda_, alpha_);
        if (alpha_ < 1.0) return c_ * g * base - i * omega * moment(1.0, 0.0, 1.0);
        base += i * omega * alpha_ * std::pow(lambda_, alpha_ - 1.0);
        return c_ * g * base + i * omega * moment(1.0, 1.0, kInf);
    }
    return levy_integral_quad(omega);
}

std::complex<double> RadialProfile::levy_integral_quad(double omega) const {
    double a = 1.0 / omega;
    double end = kInf;
    if (kind_ == ProfileKind::Truncated) end = cut_;
    auto k = kinks();
    Fn dens = [this](double x) { return density(x); };
    double a_in = std::min(a, end);
    double re = integrate_log([&](double x) { return cosm1(omega * x) * density(x); }, 0.0, a_in, k);
    double im = integrate_log([&](double x) { return sinmx(omega * x) * density(x); }, 0.0, a_in, k);
    if (end > a) {
        re += integrate_cos(dens, omega, a, end) - tail(a);
        im += integrate_sin(dens, omega, a, end);
    }
    // -omega * int x 1{x<1} over the part not already handled by sinmx
    if (a < 1.0)
        im -= omega * moment(1.0, a, 1.0);
    else if (a > 1.0)
        im += omega * moment(1.0, 1.0, a);
    return {re, im};
}

}  // namespace lc
