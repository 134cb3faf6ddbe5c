#include "levycouple/cli.hpp"

#include "levycouple/bounds.hpp"
#include "levycouple/core.hpp"
#include "levycouple/coupling.hpp"
#include "levycouple/errors.hpp"
#include "levycouple/experiments.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace lc {

namespace {

struct Common {
    std::string config, builtin, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> paths;
    int threads = 0;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
    sub->add_option("--config", c.config, "experiment config (JSON)");
    if (needs_config) sub->add_option("--builtin", c.builtin, "built-in config name instead of --config");
    sub->add_option("--seed", c.seed, "overrides the config seed");
    sub->add_option("--out", c.out, "output path (default: config 'output', else stdout)");
    sub->add_option("--threads", c.threads, "worker threads (default: LEVYCOUPLE_THREADS or 1)");
}

ExperimentConfig resolve_config(const Common& c) {
    if (!c.config.empty() && !c.builtin.empty()) fail(ErrorKind::Config, "give either --config or --builtin");
    ExperimentConfig cfg;
    if (!c.builtin.empty())
        cfg = builtin_config(c.builtin);
    else if (!c.config.empty())
        cfg = load_experiment(c.config);
    else
        fail(ErrorKind::Config, "a config is required (--config PATH or --builtin NAME)");
    if (c.seed) cfg.seed = *c.seed;
    if (c.paths) {
        if (*c.paths < 2) fail(ErrorKind::Config, "--paths must be at least 2");
        cfg.n_paths = *c.paths;
    }
    return cfg;
}

// Writes to --out, else the config's output path, else stdout.
void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) fail(ErrorKind::Config, fmt::format("cannot write '{}'", out));
    f << text;
}

std::string out_path(const Common& c, const ExperimentConfig& cfg) { return c.out.empty() ? cfg.output : c.out; }

json bounds_json(const ExperimentConfig& c, double cutoff_override) {
    json rows = json::array();
    for (double t : c.t_grid) {
        json row{{"t", t}};
        try {
            BoundReport r;
            switch (c.coupling) {
            case CouplingKind::Thinning: {
                double kappa = cutoff_override > 0 ? cutoff_override : c.cutoffs.kappa;
                r = c.q <= 1.0 ? thinning_bound_wq(c.process, c.target, t, kappa, c.q)
                               : thinning_bound_w2(c.process, c.target, t, kappa);
                break;
            }
            case CouplingKind::Comonotonic: {
                double eps = cutoff_override > 0 ? cutoff_override : c.cutoffs.eps;
                r = comono_bound_wq(c.process, c.target, t, eps, c.q);
                break;
            }
            case CouplingKind::Gaussian: {
                MomentBound m = sup_moment_bound_terms(jump_part(c.process), c.q, t);
                double s = std::pow(t, -c.q / 2.0);
                r.terms = {{"jump-moment", m.value * s}};
                r.info = {{"C1", m.C1}, {"C2", m.C2}, {"C3", m.C3}, {"beta_plus", m.beta_plus}};
                r.total = m.value * s;
                r.regime = {"gaussian", "none", 0.0, c.q, t};
                break;
            }
            }
            row["report"] = r.to_json();
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Config) throw;
            row["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
        }
        rows.push_back(row);
    }
    return rows;
}

std::string table1_csv(const RunOptions& opt) {
    std::ostringstream os;
    os << "regime,config,bound,fitted_slope,predicted_exponent,log_factor\n";
    const char* names[] = {"normal-tempered-1.5", "normal-tempered-0.5", "nonnormal-log", "nonnormal-inverse-log"};
    for (const char* name : names) {
        ExperimentConfig c = builtin_config(name);
        auto G = attraction_slowvar(c);
        const bool nonnormal = G.has_value();
        const double alpha = c.target.alpha;
        double zmoment = 0.0;
        if (nonnormal) {
            MomentEstimate m = stable_q_moment(c.target, std::min(c.q, 1.0), opt.zmoment_draws, c.seed ^ 0x7a6d6f6dULL);
            zmoment = std::max(0.0, m.estimate - m.ci_halfwidth);
        }
        std::vector<double> up(c.t_grid.size()), lo(c.t_grid.size());
        parallel_for(static_cast<int>(c.t_grid.size()), resolve_threads(opt.threads), [&](int i) {
            double t = c.t_grid[static_cast<size_t>(i)];
            up[static_cast<size_t>(i)] = analytic_upper(c, t);
            lo[static_cast<size_t>(i)] = analytic_lower(c, t, zmoment);
        });
        SecondOrder so = second_order(c.process.profiles.front());
        std::string pu = "nan", lf = "0";
        try {
            RatePrediction rp = nonnormal ? rate_exponent_upper(RateRegime::NonNormal, alpha, c.q, so.p, so.delta, 0.0)
                                          : rate_exponent_upper(c.coupling == CouplingKind::Comonotonic
                                                                    ? RateRegime::NormalComonotonic
                                                                    : RateRegime::NormalThinning,
                                                                alpha, c.q, so.p, so.delta, 0.0);
            pu = fmt::format("{:.17g}", rp.exponent);
            lf = rp.log_factor ? fmt::format("{:g}", rp.log_power) : "0";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Unsupported) throw;
        }
        const char* regime = nonnormal ? "non-normal" : "normal";
        double pl = nonnormal ? 0.0 : 1.0 - std::min(c.q, 1.0) / alpha;
        os << fmt::format("{},{},upper,{:.6f},{},{}\n", regime, name, fit_loglog(c.t_grid, up).slope, pu, lf);
        os << fmt::format("{},{},lower,{:.6f},{:.17g},{}\n", regime, name, fit_loglog(c.t_grid, lo).slope, pl,
                          nonnormal ? fmt::format("{:g}", std::min(c.q, 1.0)) : "0");
    }
    return os.str();
}

}  // namespace

std::string figure1_csv(int steps) {
    std::ostringstream os;
    os << "beta,upper_exponent,lower_exponent\n";
    for (int k = 0; k <= steps; ++k) {
        double beta = 1.0 + static_cast<double>(k) / steps;
        double up = rate_exponent_upper(RateRegime::Gaussian, 2.0, 1.0, 1.0, 1.0, beta).exponent;
        double lo = 1.0 - beta / 2.0;
        os << fmt::format("{:.17g},{:.17g},{:.17g}\n", beta, up, lo);
    }
    return os.str();
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Coupling and Wasserstein rate experiments for small-time Levy processes"};
    app.require_subcommand(1);
    Common com;

    auto* sim = app.add_subcommand("simulate", "sample one coupled path pair and dump its events");
    add_common(sim, com, true);
    std::optional<double> sim_t;
    int sim_rep = 0;
    bool diff_only = false;
    sim->add_option("--t", sim_t, "time scale (default: largest t of the grid)");
    sim->add_option("--rep", sim_rep, "replication index");
    sim->add_flag("--difference-only", diff_only, "thinning: sample only the unshared events");

    auto* bnd = app.add_subcommand("bounds", "analytic upper bounds per t as JSON");
    add_common(bnd, com, true);
    double cutoff = 0.0;
    bnd->add_option("--cutoff", cutoff, "kappa (thinning) or eps (comonotonic); default from the config");

    auto* rate = app.add_subcommand("rate", "Monte Carlo rate table as CSV");
    add_common(rate, com, true);
    rate->add_option("--paths", com.paths, "overrides n_paths");

    auto* ver = app.add_subcommand("verify", "rate table plus sandwich report; exit 1 on failure");
    add_common(ver, com, true);
    ver->add_option("--paths", com.paths, "overrides n_paths");
    std::string table_out;
    ver->add_option("--table", table_out, "also write the rate table CSV here");

    auto* t1 = app.add_subcommand("table1", "fitted and predicted rates for the four regimes");
    t1->add_option("--out", com.out, "output path");
    t1->add_option("--threads", com.threads, "worker threads");

    auto* f1 = app.add_subcommand("figure1", "Gaussian-regime exponent curves over beta in [1,2]");
    f1->add_option("--out", com.out, "output path");
    int steps = 100;
    f1->add_option("--steps", steps, "grid intervals")->check(CLI::Range(1, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunOptions opt;
        opt.threads = com.threads;
        if (sim->parsed()) {
            ExperimentConfig c = resolve_config(com);
            double t = sim_t.value_or(c.t_grid.front());
            Rng rng = make_rng(c.seed, static_cast<std::uint64_t>(sim_rep));
            CoupledPathPair p;
            switch (c.coupling) {
            case CouplingKind::Thinning: {
                ThinningOptions o;
                o.delta = c.cutoffs.delta;
                o.difference_only = diff_only;
                p = ThinningPlan(c.process, c.target, t, o).sample(rng);
                break;
            }
            case CouplingKind::Comonotonic: {
                ComonotonicOptions o;
                o.gamma_max = c.cutoffs.gamma_max;
                p = ComonotonicPlan(c.process, c.target, t, o).sample(rng);
                break;
            }
            case CouplingKind::Gaussian: {
                GaussianOptions o;
                o.kappa = c.cutoffs.kappa;
                p = GaussianPlan(c.process, t, o).sample(rng);
                break;
            }
            }
            std::ostringstream os;
            os << fmt::format("# coupling={} t={:.17g} seed={} rep={} sup_distance={:.17g}\n", coupling_name(c.coupling),
                              t, c.seed, sim_rep, sup_q_distance(p, 1.0));
            write_events_csv(p, os);
            emit(os.str(), out_path(com, c));
        } else if (bnd->parsed()) {
            ExperimentConfig c = resolve_config(com);
            emit(bounds_json(c, cutoff).dump(2) + "\n", out_path(com, c));
        } else if (rate->parsed()) {
            ExperimentConfig c = resolve_config(com);
            RateTable tab = estimate_wq_curve(c, opt);
            std::ostringstream os;
            tab.write_csv(os);
            emit(os.str(), out_path(com, c));
        } else if (ver->parsed()) {
            ExperimentConfig c = resolve_config(com);
            RateTable tab = estimate_wq_curve(c, opt);
            if (!table_out.empty()) {
                std::ostringstream os;
                tab.write_csv(os);
                emit(os.str(), table_out);
            }
            SandwichReport rep = verify_sandwich(tab);
            emit(rep.to_json().dump(2) + "\n", com.out);
            return rep.pass ? 0 : 1;
        } else if (t1->parsed()) {
            emit(table1_csv(opt), com.out);
        } else if (f1->parsed()) {
            emit(figure1_csv(steps), com.out);
        }
    } catch (const Error& e) {
        std::cerr << fmt::format("error ({}): {}\n", kind_name(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << fmt::format("error: {}\n", e.what());
        return 3;
    }
    return 0;
}

}  // namespace lc
