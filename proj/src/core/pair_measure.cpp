#include "levycouple/pair_measure.hpp"

#include "levycouple/errors.hpp"
#include "levycouple/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lc {

PairMeasure::PairMeasure(const ScaledView& x, const ScaledView& z) : X(x), Z(z) {
    if (X.dim() != Z.dim()) fail(ErrorKind::Config, "pair: process and target dimensions differ");
    for (size_t j = 0; j < Z.natoms(); ++j) {
        dirs.push_back(Z.dir(j));
        iz.push_back(static_cast<int>(j));
        ix.push_back(X.natoms() ? X.fam->sigma.find(Z.dir(j)) : -1);
    }
    for (size_t j = 0; j < X.natoms(); ++j) {
        if (Z.natoms() && Z.fam->sigma.find(X.dir(j)) >= 0) continue;
        dirs.push_back(X.dir(j));
        ix.push_back(static_cast<int>(j));
        iz.push_back(-1);
    }
    for (const auto& m : X.point_masses()) pm_diff.push_back(m);
    for (const auto& m : Z.point_masses()) {
        bool merged = false;
        for (auto& e : pm_diff)
            if ((e.w - m.w).norm() <= 1e-12 * std::max(1.0, m.w.norm())) {
                e.mass -= m.mass;
                merged = true;
            }
        if (!merged) pm_diff.push_back({m.w, -m.mass});
    }
}

double PairMeasure::density_X(size_t k, double y) const {
    return ix[k] < 0 ? 0.0 : X.density(static_cast<size_t>(ix[k]), y);
}

double PairMeasure::density_Z(size_t k, double y) const {
    return iz[k] < 0 ? 0.0 : Z.density(static_cast<size_t>(iz[k]), y);
}

namespace {

// density of atom j of a view as y^{-alpha-1} (s c + s (Q - c)) with s = weight g^{-alpha}
struct QForm {
    double alpha = 0, sc = 0, dev = 0;
};

bool q_form(const ScaledView& v, int j, double y, QForm& f) {
    if (j < 0) return true;
    const RadialProfile& p = v.fam->profiles[static_cast<size_t>(j)];
    if (p.kind() == ProfileKind::AugmentedG) return false;
    f.alpha = p.alpha();
    double s = v.weight(static_cast<size_t>(j)) * std::pow(v.g, -f.alpha);
    f.sc = s * p.c();
    f.dev = s * p.Q_minus_c(v.g * y);
    return true;
}

}  // namespace

double PairMeasure::density_diff(size_t k, double y) const {
    QForm fx, fz;
    if (q_form(X, ix[k], y, fx) && q_form(Z, iz[k], y, fz)) {
        if (ix[k] < 0) return -(fz.sc + fz.dev) * std::pow(y, -fz.alpha - 1.0);
        if (iz[k] < 0) return (fx.sc + fx.dev) * std::pow(y, -fx.alpha - 1.0);
        if (fx.alpha == fz.alpha) {
            double base = fx.sc - fz.sc;
            // constants equal up to rounding mean identical stable parts
            if (std::fabs(base) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(fx.sc, fz.sc)) base = 0.0;
            return (base + fx.dev - fz.dev) * std::pow(y, -fx.alpha - 1.0);
        }
    }
    return density_X(k, y) - density_Z(k, y);
}

double PairMeasure::ratio(size_t k, double y) const {
    if (iz[k] < 0) fail(ErrorKind::AssumptionViolation, "pair: process charges a direction the target does not");
    if (ix[k] < 0) return 0.0;
    QForm fx, fz;
    if (q_form(X, ix[k], y, fx) && q_form(Z, iz[k], y, fz) && fx.alpha == fz.alpha) return (fx.sc + fx.dev) / (fz.sc + fz.dev);
    return density_X(k, y) / density_Z(k, y);
}

std::vector<double> PairMeasure::breaks(size_t k) const {
    std::vector<double> b;
    if (ix[k] >= 0)
        for (double x : X.fam->profiles[static_cast<size_t>(ix[k])].kinks()) b.push_back(x / X.g);
    if (iz[k] >= 0)
        for (double x : Z.fam->profiles[static_cast<size_t>(iz[k])].kinks()) b.push_back(x / Z.g);
    return b;
}

double PairMeasure::abs_diff_moment(size_t k, double p, double a, double b) const {
    if (!(b > a)) return 0.0;
    std::vector<double> br;
    for (double x : breaks(k))
        if (x > a && x < b) br.push_back(x);
    return integrate_log([&](double y) { return std::pow(y, p) * std::fabs(density_diff(k, y)); }, a, b, br);
}

double PairMeasure::pert_moment(double p, double a, double b) const {
    double s = 0.0;
    for (const auto& pm : pm_diff) {
        double r = pm.w.norm();
        if (r >= a && r < b) s += std::fabs(pm.mass) * std::pow(r, p);
    }
    return s;
}

Vec PairMeasure::signed_first_moment(double a, double b) const {
    Vec v = Vec::Zero(X.dim());
    for (size_t k = 0; k < size(); ++k) {
        if (!(b > a)) break;
        std::vector<double> br;
        for (double x : breaks(k))
            if (x > a && x < b) br.push_back(x);
        double m = integrate_log([&](double y) { return y * density_diff(k, y); }, a, b, br);
        v += m * dirs[k];
    }
    for (const auto& pm : pm_diff) {
        double r = pm.w.norm();
        if (r >= a && r < b) v += pm.mass * pm.w;
    }
    return v;
}

double PairMeasure::abs_diff_moment_all(double p, double a, double b) const {
    double s = pert_moment(p, a, b);
    for (size_t k = 0; k < size(); ++k) s += abs_diff_moment(k, p, a, b);
    return s;
}

}  // namespace lc
