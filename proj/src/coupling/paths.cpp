#include "levycouple/coupling.hpp"

#include "levycouple/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lc {

const char* coupling_name(CouplingKind k) {
    switch (k) {
    case CouplingKind::Thinning: return "thinning";
    case CouplingKind::Comonotonic: return "comonotonic";
    case CouplingKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

CouplingKind parse_coupling(const std::string& s) {
    if (s == "thinning") return CouplingKind::Thinning;
    if (s == "comonotonic") return CouplingKind::Comonotonic;
    if (s == "gaussian") return CouplingKind::Gaussian;
    fail(ErrorKind::Config, "unknown coupling '" + s + "'");
}

namespace {

Vec brownian_at(const std::vector<Vec>& B, double s) {
    int n = static_cast<int>(B.size()) - 1;
    double x = s * n;
    int i = std::min(static_cast<int>(x), n - 1);
    double fr = x - i;
    return (1.0 - fr) * B[static_cast<size_t>(i)] + fr * B[static_cast<size_t>(i + 1)];
}

Vec leg_endpoint(const CoupledPathPair& p, bool x) {
    Vec v = x ? p.slope_X() : p.slope_Z();
    for (const auto& e : p.events) v += x ? p.jump_X(e) : p.jump_Z(e);
    const Mat& G = x ? p.gauss_X : p.gauss_Z;
    if (G.size() > 0 && !p.brownian.empty()) v += G * p.brownian.back();
    return v;
}

double sup_impl(const CoupledPathPair& p, double q, const std::function<bool(const PathEvent&)>* keep, const Vec& slope,
                bool gauss) {
    if (!(q > 0)) fail(ErrorKind::Domain, "sup distance: q must be positive");
    Mat dG;
    if (gauss && !p.brownian.empty()) {
        Mat gx = p.gauss_X.size() ? p.gauss_X : Mat::Zero(p.d, p.d);
        Mat gz = p.gauss_Z.size() ? p.gauss_Z : Mat::Zero(p.d, p.d);
        dG = gx - gz;
        if (dG.norm() == 0.0) dG.resize(0, 0);
    }
    int n = dG.size() ? static_cast<int>(p.brownian.size()) - 1 : 0;
    auto value = [&](double s, const Vec& J) {
        Vec v = s * slope + J;
        if (n > 0) v += dG * brownian_at(p.brownian, s);
        return v.norm();
    };
    Vec J = Vec::Zero(p.d);
    double best = 0.0;
    int gi = 1;
    for (const auto& e : p.events) {
        if (keep && !(*keep)(e)) continue;
        while (gi <= n && static_cast<double>(gi) / n < e.time) {
            best = std::max(best, value(static_cast<double>(gi) / n, J));
            ++gi;
        }
        best = std::max(best, value(e.time, J));
        J += p.jump_X(e) - p.jump_Z(e);
        best = std::max(best, value(e.time, J));
    }
    for (; gi <= n; ++gi) best = std::max(best, value(static_cast<double>(gi) / n, J));
    best = std::max(best, value(1.0, J));
    return std::pow(best, q);
}

}  // namespace

Vec CoupledPathPair::endpoint_X() const {
    if (!legs_complete) fail(ErrorKind::Unsupported, "path pair: legs were not materialized");
    return leg_endpoint(*this, true);
}

Vec CoupledPathPair::endpoint_Z() const {
    if (!legs_complete) fail(ErrorKind::Unsupported, "path pair: legs were not materialized");
    return leg_endpoint(*this, false);
}

void CoupledPathPair::check_invariants() const {
    double prev = 0.0;
    for (const auto& e : events) {
        if (!(e.time > prev) || e.time > 1.0)
            fail(ErrorKind::InvariantViolation, "path pair: event times must increase strictly within (0,1]");
        prev = e.time;
        if (e.dir < 0 || static_cast<size_t>(e.dir) >= directions.size())
            fail(ErrorKind::InvariantViolation, "path pair: bad direction index");
        if (!(e.mag_X >= 0) || !(e.mag_Z >= 0))
            fail(ErrorKind::InvariantViolation, "path pair: magnitudes must be nonnegative");
        if (e.shared && e.mag_X != e.mag_Z)
            fail(ErrorKind::InvariantViolation, "path pair: shared events must have equal jumps");
    }
    if (!(residual.l2_bound >= 0) || !std::isfinite(residual.l2_bound))
        fail(ErrorKind::InvariantViolation, "path pair: residual must be finite and nonnegative");
}

double sup_q_distance(const CoupledPathPair& pair, double q) {
    return sup_impl(pair, q, nullptr, pair.slope_X() - pair.slope_Z(), true);
}

double sup_q_filtered(const CoupledPathPair& pair, double q, const std::function<bool(const PathEvent&)>& keep,
                      const Vec& slope) {
    return sup_impl(pair, q, &keep, slope, false);
}

void write_events_csv(const CoupledPathPair& pair, std::ostream& os) {
    os << "time,abs_jump_X,abs_jump_Z,direction_index,shared\n";
    for (const auto& e : pair.events)
        os << fmt::format("{:.17g},{:.17g},{:.17g},{},{}\n", e.time, e.mag_X, e.mag_Z, e.dir, e.shared ? 1 : 0);
}

void draw_point_masses(const std::vector<PointMass>& pms, const std::vector<int>& dir, Rng& rng,
                       std::vector<PathEvent>& out) {
    for (size_t i = 0; i < pms.size(); ++i) {
        std::poisson_distribution<long> pois(pms[i].mass);
        long n = pois(rng);
        for (long k = 0; k < n; ++k) {
            PathEvent e;
            e.time = uniform_open(rng);
            e.mag_X = pms[i].w.norm();
            e.dir = dir[i];
            out.push_back(e);
        }
    }
}

std::vector<Vec> draw_brownian(int d, int n, Rng& rng) {
    std::normal_distribution<double> nd;
    std::vector<Vec> B(static_cast<size_t>(n) + 1, Vec::Zero(d));
    double sd = std::sqrt(1.0 / n);
    for (int k = 1; k <= n; ++k) {
        Vec inc(d);
        for (int i = 0; i < d; ++i) inc(i) = sd * nd(rng);
        B[static_cast<size_t>(k)] = B[static_cast<size_t>(k - 1)] + inc;
    }
    return B;
}

void finish_events(std::vector<PathEvent>& ev) {
    std::sort(ev.begin(), ev.end(), [](const PathEvent& a, const PathEvent& b) { return a.time < b.time; });
}

}  // namespace lc
