#include "levycouple/experiments.hpp"

#include "levycouple/bounds.hpp"
#include "levycouple/core.hpp"
#include "levycouple/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

namespace lc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZ99 = 2.5758293035489004;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double positive(const json& j, const char* key, double dflt, const std::string& where) {
    double v = get_number_or(j, key, dflt, where);
    if (!(v > 0) || !std::isfinite(v)) fail(ErrorKind::Config, fmt::format("{}: '{}' must be positive", where, key));
    return v;
}

}  // namespace

json ExperimentConfig::to_json() const {
    json j;
    if (!name.empty()) j["name"] = name;
    j["process"] = family_to_json(process);
    j["target"] = stable_to_json(target);
    j["coupling"] = coupling_name(coupling);
    j["q"] = q;
    j["t_grid"] = t_grid;
    j["n_paths"] = n_paths;
    j["seed"] = seed;
    j["cutoffs"] = {{"delta", cutoffs.delta},
                    {"eps", cutoffs.eps},
                    {"gamma_max", cutoffs.gamma_max},
                    {"kappa", cutoffs.kappa}};
    if (slowvar) j["slowvar"] = slowvar_to_json(*slowvar);
    if (!output.empty()) j["output"] = output;
    return j;
}

std::string ExperimentConfig::digest() const {
    json j = to_json();
    j.erase("output");
    j.erase("name");
    return fmt::format("{:016x}", fnv1a(j.dump()));
}

ExperimentConfig parse_experiment(const json& j) {
    const std::string w = "experiment";
    if (!j.is_object()) fail(ErrorKind::Config, "experiment: expected a JSON object");
    check_keys(j, {"name", "process", "target", "coupling", "q", "t_grid", "n_paths", "seed", "cutoffs", "slowvar",
                   "output"},
               w);
    for (const char* k : {"process", "target", "coupling", "q", "t_grid", "n_paths", "seed"})
        if (!j.contains(k)) fail(ErrorKind::Config, fmt::format("experiment: missing '{}'", k));
    ExperimentConfig c;
    try {
        if (j.contains("name")) c.name = j.at("name").get<std::string>();
        c.process = parse_family(j.at("process"));
        c.target = parse_stable(j.at("target"));
        c.coupling = parse_coupling(j.at("coupling").get<std::string>());
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, fmt::format("experiment: {}", e.what()));
    }
    if (c.process.d != c.target.dim()) fail(ErrorKind::Config, "experiment: process and target dimensions differ");
    c.q = get_number(j, "q", w);
    if (!(c.q > 0) || c.q > 2.0) fail(ErrorKind::Config, "experiment: q must lie in (0,2]");
    const json& tg = j.at("t_grid");
    if (!tg.is_array() || tg.empty()) fail(ErrorKind::Config, "experiment: t_grid must be a non-empty array");
    for (const auto& x : tg) {
        if (!x.is_number()) fail(ErrorKind::Config, "experiment: t_grid entries must be numbers");
        double t = x.get<double>();
        if (!(t > 0) || t > 1) fail(ErrorKind::Config, "experiment: t_grid entries must lie in (0,1]");
        c.t_grid.push_back(t);
    }
    std::sort(c.t_grid.begin(), c.t_grid.end(), std::greater<>());
    const json& n = j.at("n_paths");
    if (!n.is_number_integer() || n.get<long long>() < 2 || n.get<long long>() > 100000000)
        fail(ErrorKind::Config, "experiment: n_paths must be an integer in [2, 1e8]");
    c.n_paths = static_cast<int>(n.get<long long>());
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
        fail(ErrorKind::Config, "experiment: seed must be a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
    if (j.contains("cutoffs")) {
        const json& cj = j.at("cutoffs");
        check_keys(cj, {"delta", "eps", "gamma_max", "kappa"}, "cutoffs");
        c.cutoffs.delta = positive(cj, "delta", c.cutoffs.delta, "cutoffs");
        c.cutoffs.eps = positive(cj, "eps", c.cutoffs.eps, "cutoffs");
        c.cutoffs.gamma_max = positive(cj, "gamma_max", c.cutoffs.gamma_max, "cutoffs");
        c.cutoffs.kappa = positive(cj, "kappa", c.cutoffs.kappa, "cutoffs");
    }
    if (j.contains("slowvar")) c.slowvar = parse_slowvar(j.at("slowvar"));
    if (c.coupling == CouplingKind::Gaussian && !c.target.gaussian())
        fail(ErrorKind::Config, "experiment: the gaussian coupling needs a Gaussian target (alpha = 2)");
    if (c.coupling == CouplingKind::Gaussian &&
        (!c.process.has_gaussian() || (c.process.gaussian - c.target.sigma_Z).norm() > 1e-12))
        fail(ErrorKind::Config, "experiment: the gaussian coupling needs the process Gaussian matrix to equal sigma_Z");
    if (c.coupling != CouplingKind::Gaussian && c.target.gaussian())
        fail(ErrorKind::Config, "experiment: a Gaussian target needs the gaussian coupling");
    return c;
}

ExperimentConfig load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Config, fmt::format("cannot open config '{}'", path));
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, fmt::format("config '{}': {}", path, e.what()));
    }
    return parse_experiment(j);
}

std::optional<SlowVarSpec> attraction_slowvar(const ExperimentConfig& c) {
    if (c.slowvar) {
        if (c.slowvar->is_constant()) return std::nullopt;
        return c.slowvar;
    }
    if (c.process.kind == FamilyKind::AugmentedStable && c.process.has_co()) {
        const RadialProfile& p = c.process.profiles.front();
        if (p.kind() == ProfileKind::AugmentedG && !p.slowvar().is_constant()) return p.slowvar();
    }
    return std::nullopt;
}

// ---- tables ----

void RateTable::write_csv(std::ostream& os) const {
    os << fmt::format("# digest={} seed={} coupling={} q={:.17e}\n", digest, seed, coupling, q);
    os << "t,mean,ci99,upper,lower,residual,n\n";
    for (const auto& r : rows)
        os << fmt::format("{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}\n", r.t, r.mean, r.ci99, r.upper, r.lower,
                          r.residual, r.n);
    for (const auto& r : rows) {
        if (!r.error.empty()) os << fmt::format("# t={:.17e}: {}\n", r.t, r.error);
        if (r.warning) os << fmt::format("# t={:.17e}: truncation residual exceeds the warning fraction\n", r.t);
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* e = std::getenv("LEVYCOUPLE_THREADS")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 1;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < std::min(threads, n); ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// ---- analytic columns ----

std::vector<Vec> default_u_grid(int d, const std::vector<Vec>& extra_dirs) {
    std::vector<Vec> dirs;
    auto add = [&](const Vec& v) {
        if (v.norm() == 0) return;
        Vec u = v / v.norm();
        for (const auto& e : dirs)
            if ((e - u).norm() < 1e-12) return;
        dirs.push_back(u);
    };
    for (int i = 0; i < d; ++i) {
        add(Vec::Unit(d, i));
        add(-Vec::Unit(d, i));
    }
    for (const auto& v : extra_dirs) {
        add(v);
        add(-v);
    }
    return log_u_grid(dirs, 1e-2, 1e2, 10);
}

double toscani_scaled(const ScaledView& A, const ScaledView& B, double q, const std::vector<Vec>& u_grid) {
    double best = 0.0;
    for (const auto& u : u_grid) {
        double un = u.norm();
        if (un == 0.0) continue;
        double diff = exp_gap(A.psi(u), B.psi(u));
        best = std::max(best, std::pow(2.0, q - 1.0) * diff / std::pow(un, q));
    }
    return best;
}

double analytic_upper(const ExperimentConfig& c, double t) {
    const double q = c.q;
    switch (c.coupling) {
    case CouplingKind::Thinning: {
        // every split point gives a bound on the same coupling; keep the best on a grid
        LevyFamily Z = LevyFamily::from_stable(c.target);
        ScaledView A(c.process, t, scale_g(c.process, c.target, t)), B(Z, 1.0, 1.0);
        double best = kInf;
        for (int k = -24; k <= 8; ++k) {
            double kappa = std::pow(10.0, k / 4.0);
            double v = q <= 1.0 ? thinning_bound_wq(A, B, kappa, q).total
                                : std::pow(thinning_bound_w2(A, B, kappa).total, q);
            best = std::min(best, v);
        }
        return best;
    }
    case CouplingKind::Comonotonic: {
        if (q > 1.0) fail(ErrorKind::Unsupported, "comonotonic upper bound: requires q <= 1");
        double best = kInf;
        for (int k = -16; k <= 16; ++k)
            best = std::min(best, comono_bound_wq(c.process, c.target, t, std::pow(10.0, k / 4.0), q).total);
        return best;
    }
    case CouplingKind::Gaussian: {
        // the legs share the Brownian part, so the difference is the rescaled jump part
        LevyFamily S = jump_part(c.process);
        return sup_moment_bound(S, q, t) / std::pow(t, q / 2.0);
    }
    }
    return kNaN;
}

double analytic_lower(const ExperimentConfig& c, double t, double zmoment) {
    const double q1 = std::min(c.q, 1.0);
    double v;
    auto G = attraction_slowvar(c);
    if (G && !c.target.gaussian()) {
        v = lower_bound_nonnormal(*G, q1, t, zmoment);
    } else {
        LevyFamily Z = LevyFamily::from_stable(c.target);
        ScaledView A(c.process, t, scale_g(c.process, c.target, t)), B(Z, 1.0, 1.0);
        std::vector<Vec> extra = c.target.sigma.dirs;
        if (c.process.has_co())
            for (const auto& d : c.process.sigma.dirs) extra.push_back(d);
        // frequencies are fixed in the unscaled variable and follow the rescaling
        std::vector<Vec> grid = default_u_grid(c.process.d, extra);
        for (auto& u : grid) u *= A.g;
        v = toscani_scaled(A, B, q1, grid);
    }
    // E sup^q >= (E sup)^q >= W_1^q for q > 1
    return c.q > 1.0 ? std::pow(v, c.q) : v;
}

// ---- Monte Carlo ----

namespace {

struct RowSampler {
    std::function<double(Rng&, bool&)> draw;
    double residual_l2 = 0.0;
};

double abs_jump_sum(const CoupledPathPair& p) {
    double s = 0.0;
    for (const auto& e : p.events) s += (p.jump_X(e) - p.jump_Z(e)).norm();
    return s;
}

RowSampler make_sampler(const ExperimentConfig& c, double t) {
    RowSampler rs;
    const double q = c.q;
    const bool cv_q = q == 1.0;
    switch (c.coupling) {
    case CouplingKind::Thinning: {
        ThinningOptions o;
        o.delta = c.cutoffs.delta;
        o.difference_only = true;
        auto plan = std::make_shared<ThinningPlan>(c.process, c.target, t, o);
        rs.residual_l2 = plan->residual();
        // control variate: sum of |jump differences| with its exact mean
        double ec = cv_q ? plan->expected_abs_unshared() : kInf;
        bool cv = std::isfinite(ec);
        // rare events: split on whether the envelope fires at all
        double m = plan->expected_events();
        if (m > 0 && m < 1.0) {
            double p0 = std::exp(-m), p1 = -std::expm1(-m);
            rs.draw = [plan, q, cv, ec, p0, p1](Rng& rng, bool& warn) {
                CoupledPathPair e = plan->sample_empty(rng);
                CoupledPathPair p = plan->sample_given_event(rng);
                warn = warn || p.warning;
                double s = p0 * sup_q_distance(e, q) + p1 * sup_q_distance(p, q);
                return cv ? s - p1 * abs_jump_sum(p) + ec : s;
            };
            break;
        }
        rs.draw = [plan, q, cv, ec](Rng& rng, bool& warn) {
            CoupledPathPair p = plan->sample(rng);
            warn = warn || p.warning;
            double s = sup_q_distance(p, q);
            return cv ? s - abs_jump_sum(p) + ec : s;
        };
        break;
    }
    case CouplingKind::Comonotonic: {
        ComonotonicOptions o;
        o.gamma_max = c.cutoffs.gamma_max;
        auto plan = std::make_shared<ComonotonicPlan>(c.process, c.target, t, o);
        rs.residual_l2 = plan->residual();
        double ec = kInf;
        if (cv_q) {
            try {
                ec = plan->q_diff_integral(1.0, 0.0, o.gamma_max);
                for (const auto& m : plan->point_masses()) ec += m.mass * m.w.norm();
            } catch (const Error&) {
                ec = kInf;
            }
        }
        bool cv = std::isfinite(ec);
        rs.draw = [plan, q, cv, ec](Rng& rng, bool& warn) {
            CoupledPathPair p = plan->sample(rng);
            warn = warn || p.warning;
            double s = sup_q_distance(p, q);
            return cv ? s - abs_jump_sum(p) + ec : s;
        };
        break;
    }
    case CouplingKind::Gaussian: {
        GaussianOptions o;
        // the floor follows the natural size t^{1/beta - 1/2} of the rescaled jump part
        double beta = bg_index(c.process).beta;
        o.kappa = beta > 0 ? c.cutoffs.kappa * std::pow(t, 1.0 / beta - 0.5) : c.cutoffs.kappa;
        auto plan = std::make_shared<GaussianPlan>(c.process, t, o);
        rs.residual_l2 = plan->residual();
        double ec = cv_q ? plan->expected_abs_jumps(0.0) : kInf;
        bool cv = std::isfinite(ec);
        rs.draw = [plan, q, cv, ec](Rng& rng, bool& warn) {
            CoupledPathPair p = plan->sample(rng);
            warn = warn || p.warning;
            double s = sup_q_distance(p, q);
            return cv ? s - abs_jump_sum(p) + ec : s;
        };
        break;
    }
    }
    return rs;
}

void append_error(RateRow& r, const std::string& what, const Error& e) {
    if (!r.error.empty()) r.error += "; ";
    r.error += fmt::format("{}: {} ({})", what, e.what(), kind_name(e.kind()));
}

}  // namespace

RateTable estimate_wq_curve(const ExperimentConfig& c, const RunOptions& opt) {
    RateTable tab;
    tab.digest = c.digest();
    tab.seed = c.seed;
    tab.coupling = coupling_name(c.coupling);
    tab.q = c.q;
    const int threads = resolve_threads(opt.threads);
    auto G = attraction_slowvar(c);
    tab.nonnormal_lower = G && !c.target.gaussian();

    double zmoment = 0.0;
    if (opt.bounds && tab.nonnormal_lower) {
        // conservative: lower end of the 99% interval
        MomentEstimate m = stable_q_moment(c.target, std::min(c.q, 1.0), opt.zmoment_draws, c.seed ^ 0x7a6d6f6dULL);
        zmoment = std::max(0.0, m.estimate - m.ci_halfwidth);
    }

    for (size_t i = 0; i < c.t_grid.size(); ++i) {
        RateRow r;
        r.t = c.t_grid[i];
        r.n = c.n_paths;
        try {
            RowSampler rs = make_sampler(c, r.t);
            std::vector<double> vals(static_cast<size_t>(c.n_paths));
            std::vector<char> warns(static_cast<size_t>(c.n_paths), 0);
            const std::uint64_t base = static_cast<std::uint64_t>(i) << 32;
            parallel_for(c.n_paths, threads, [&](int k) {
                Rng rng = make_rng(c.seed, base | static_cast<std::uint64_t>(k));
                bool w = false;
                vals[static_cast<size_t>(k)] = rs.draw(rng, w);
                warns[static_cast<size_t>(k)] = w;
            });
            double s = 0.0, s2 = 0.0;
            for (double v : vals) s += v;
            double mean = s / c.n_paths;
            for (double v : vals) s2 += (v - mean) * (v - mean);
            double var = s2 / (c.n_paths - 1);
            r.mean = std::max(0.0, mean);
            r.ci99 = kZ99 * std::sqrt(var / c.n_paths);
            r.warning = std::any_of(warns.begin(), warns.end(), [](char w) { return w != 0; });
            r.residual = rs.residual_l2 > 0 ? std::pow(rs.residual_l2, c.q / 2.0) : 0.0;
        } catch (const Error& e) {
            r.mean = r.ci99 = r.residual = kNaN;
            append_error(r, "sampler", e);
        }
        if (opt.bounds) {
            try {
                r.upper = analytic_upper(c, r.t);
            } catch (const Error& e) {
                r.upper = kNaN;
                append_error(r, "upper", e);
            }
            try {
                r.lower = analytic_lower(c, r.t, zmoment);
            } catch (const Error& e) {
                r.lower = kNaN;
                append_error(r, "lower", e);
            }
        } else {
            r.upper = r.lower = kNaN;
        }
        tab.rows.push_back(r);
    }
    return tab;
}

// ---- fits and verification ----

RateFit fit_loglog(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    int dropped = 0;
    for (size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (y[i] > 0 && std::isfinite(y[i]) && t[i] > 0) {
            lx.push_back(std::log(t[i]));
            ly.push_back(std::log(y[i]));
        } else {
            ++dropped;
        }
    }
    if (dropped > 0) std::cerr << fmt::format("warning: rate fit dropped {} nonpositive rows\n", dropped);
    const size_t n = lx.size();
    if (n < 4) fail(ErrorKind::InsufficientData, fmt::format("rate fit: {} usable rows, need at least 4", n));
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0)) fail(ErrorKind::InsufficientData, "rate fit: all t values coincide");
    RateFit f;
    f.slope = sxy / sxx;
    double b = my - f.slope * mx, rss = 0;
    for (size_t i = 0; i < n; ++i) {
        double e = ly[i] - b - f.slope * lx[i];
        rss += e * e;
    }
    f.stderr_ = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    f.used = static_cast<int>(n);
    return f;
}

RateFit fit_rate(const RateTable& table) {
    std::vector<double> t, y;
    for (const auto& r : table.rows) {
        t.push_back(r.t);
        y.push_back(r.mean);
    }
    return fit_loglog(t, y);
}

json SandwichReport::to_json() const {
    json j;
    j["pass"] = pass;
    json rs = json::array();
    for (const auto& r : rows)
        rs.push_back({{"t", r.t}, {"lower_ok", r.lower_ok}, {"upper_ok", r.upper_ok}, {"note", r.note}});
    j["rows"] = rs;
    auto fit = [](const RateFit& f) { return json{{"slope", f.slope}, {"stderr", f.stderr_}, {"rows", f.used}}; };
    j["slopes"] = {{"cost", fit(cost)}, {"upper", fit(upper)}, {"lower", fit(lower)}};
    j["fit_errors"] = fit_errors;
    return j;
}

namespace {

const RateRow* find_row(const RateTable& tab, double t) {
    for (const auto& r : tab.rows)
        if (std::fabs(r.t - t) <= 1e-12 * t) return &r;
    return nullptr;
}

}  // namespace

SandwichReport verify_sandwich(const RateTable& tab) {
    SandwichReport rep;
    const double q = tab.q;
    for (const auto& r : tab.rows) {
        SandwichRow s;
        s.t = r.t;
        if (!r.error.empty() && !std::isfinite(r.mean)) {
            s.lower_ok = s.upper_ok = false;
            s.note = r.error;
            rep.rows.push_back(s);
            rep.pass = false;
            continue;
        }
        if (std::isfinite(r.lower)) {
            double m = r.mean, ci = r.ci99;
            if (tab.nonnormal_lower) {
                // this lower bound controls the larger of the costs at t and 2t
                const RateRow* r2 = find_row(tab, 2.0 * r.t);
                if (!r2 || !std::isfinite(r2->mean)) {
                    s.note = "lower: no 2t row";
                    m = kInf;
                } else if (r2->mean + r2->ci99 > m + ci) {
                    m = r2->mean;
                    ci = r2->ci99;
                }
            }
            s.lower_ok = r.lower <= m + 3.0 * ci;
        }
        if (std::isfinite(r.upper)) {
            if (q <= 1.0) {
                s.upper_ok = r.mean - r.residual - 3.0 * r.ci99 <= r.upper;
            } else {
                double lo = std::max(0.0, r.mean - 3.0 * r.ci99);
                s.upper_ok = std::pow(lo, 1.0 / q) - std::pow(r.residual, 1.0 / q) <= std::pow(r.upper, 1.0 / q);
            }
        } else if (!r.error.empty()) {
            s.note += (s.note.empty() ? "" : "; ") + r.error;
        }
        if (!s.lower_ok || !s.upper_ok) rep.pass = false;
        rep.rows.push_back(s);
    }
    std::vector<double> t, m, u, l;
    for (const auto& r : tab.rows) {
        t.push_back(r.t);
        m.push_back(r.mean);
        u.push_back(r.upper);
        l.push_back(r.lower);
    }
    auto fit = [&](const char* what, const std::vector<double>& y, RateFit& out) {
        try {
            out = fit_loglog(t, y);
        } catch (const Error& e) {
            rep.fit_errors.push_back(fmt::format("{}: {}", what, e.what()));
        }
    };
    fit("cost", m, rep.cost);
    fit("upper", u, rep.upper);
    fit("lower", l, rep.lower);
    return rep;
}

SandwichReport verify_sandwich(const ExperimentConfig& c, const RunOptions& opt) {
    return verify_sandwich(estimate_wq_curve(c, opt));
}

std::vector<TwoScaleRow> two_scale_rows(const RateTable& tab, const SlowVarSpec& G, double alpha, double zmoment) {
    std::vector<TwoScaleRow> out;
    const double q = std::min(tab.q, 1.0);
    for (const auto& r : tab.rows) {
        const RateRow* r2 = find_row(tab, 2.0 * r.t);
        if (!r2 || !std::isfinite(r.mean) || !std::isfinite(r2->mean)) continue;
        TwoScaleCheck c = two_scale_lower_check(r.mean, r2->mean, G, q, r.t, zmoment, alpha);
        out.push_back({r.t, c.lhs, c.rhs, c.holds});
    }
    return out;
}

// ---- characteristic functions ----

double cf_statistic(const std::vector<Vec>& xs, const std::vector<Vec>& u_grid,
                    const std::function<cplx(const Vec&)>& psi) {
    if (xs.empty()) fail(ErrorKind::Domain, "cf test: no samples");
    double worst = 0.0;
    for (const auto& u : u_grid) {
        double re = 0, im = 0;
        for (const auto& x : xs) {
            double a = u.dot(x);
            re += std::cos(a);
            im += std::sin(a);
        }
        cplx emp(re / xs.size(), im / xs.size());
        worst = std::max(worst, std::abs(emp - std::exp(psi(u))));
    }
    return worst;
}

double marginal_cf_test(const LevyFamily& f, double t, int n, const std::vector<Vec>& u_grid, std::uint64_t seed) {
    auto xs = sample_marginal(f, t, n, seed);
    return cf_statistic(xs, u_grid, [&](const Vec& u) { return t * char_exponent(f, u); });
}

double cf_u_max(double omitted_var, int n, double c, double cap) {
    if (!(omitted_var > 0)) return cap;
    return std::min(cap, std::sqrt(1.0 / (std::sqrt(static_cast<double>(n)) * c * omitted_var)));
}

}  // namespace lc
