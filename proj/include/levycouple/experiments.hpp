#pragma once

#include "levycouple/coupling.hpp"
#include "levycouple/family.hpp"
#include "levycouple/json_io.hpp"
#include "levycouple/slowvar.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lc {

struct Cutoffs {
    double delta = 1e-3;      // thinning: simulated jump floor
    double eps = 1.0;         // comonotonic: cutoff reported with the sampled table (bounds scan a grid)
    double gamma_max = 1e4;   // comonotonic: series truncation
    double kappa = 1e-3;      // synchronous Brownian: jump floor of the rescaled jump part
};

struct ExperimentConfig {
    std::string name;
    LevyFamily process;
    StableSpec target;
    CouplingKind coupling = CouplingKind::Thinning;
    double q = 1.0;
    std::vector<double> t_grid;  // sorted decreasing after parsing
    int n_paths = 10000;
    std::uint64_t seed = 1;
    Cutoffs cutoffs;
    std::optional<SlowVarSpec> slowvar;
    std::string output;

    json to_json() const;
    // FNV-1a of the canonical JSON, hex
    std::string digest() const;
};

// Strict parse: unknown keys and out-of-range numbers raise Config errors.
ExperimentConfig parse_experiment(const json& j);
ExperimentConfig load_experiment(const std::string& path);

// Non-constant G of the attraction, from the config or an AugmentedStable family.
std::optional<SlowVarSpec> attraction_slowvar(const ExperimentConfig& c);

struct RateRow {
    double t = 0.0;
    double mean = 0.0;      // E sup |X - Z|^q of the sampled coupling
    double ci99 = 0.0;
    double upper = 0.0;     // analytic upper bound on the coupling cost
    double lower = 0.0;     // analytic lower bound (W_q^{q v 1} scale)
    double residual = 0.0;  // omitted-part contribution, in cost units
    int n = 0;
    bool warning = false;
    std::string error;  // non-empty when the row failed
};

struct RateTable {
    std::vector<RateRow> rows;  // decreasing t
    std::string digest;
    std::uint64_t seed = 0;
    std::string coupling;
    double q = 1.0;
    bool nonnormal_lower = false;  // lower column bounds max over {t, 2t}

    void write_csv(std::ostream& os) const;
};

struct RunOptions {
    int threads = 0;  // 0: LEVYCOUPLE_THREADS or 1
    bool bounds = true;
    int zmoment_draws = 20000;
};

int resolve_threads(int requested);
// Calls fn(i) for i < n on `threads` workers; callers write results by index.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

RateTable estimate_wq_curve(const ExperimentConfig& c, const RunOptions& opt = {});

// Single-row pieces, also used by the acceptance suite.
double analytic_upper(const ExperimentConfig& c, double t);
double analytic_lower(const ExperimentConfig& c, double t, double zmoment);
double toscani_scaled(const ScaledView& A, const ScaledView& B, double q, const std::vector<Vec>& u_grid);
std::vector<Vec> default_u_grid(int d, const std::vector<Vec>& extra_dirs);

struct RateFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    int used = 0;
};
// OLS of log y on log t; nonpositive or non-finite y are dropped with a warning on stderr
RateFit fit_loglog(const std::vector<double>& t, const std::vector<double>& y);
RateFit fit_rate(const RateTable& table);

struct SandwichRow {
    double t = 0.0;
    bool lower_ok = true, upper_ok = true;
    std::string note;
};
struct SandwichReport {
    std::vector<SandwichRow> rows;
    RateFit cost, upper, lower;
    std::vector<std::string> fit_errors;
    bool pass = true;
    json to_json() const;
};
SandwichReport verify_sandwich(const RateTable& table);
SandwichReport verify_sandwich(const ExperimentConfig& c, const RunOptions& opt = {});

struct TwoScaleRow {
    double t = 0.0;
    double lhs = 0.0, rhs = 0.0;
    bool holds = true;
};
// Two-scale check over grid pairs (t, 2t), with coupling costs in place of W_q.
std::vector<TwoScaleRow> two_scale_rows(const RateTable& table, const SlowVarSpec& G, double alpha, double zmoment);

// sup over the grid of |empirical CF - exp(psi(u))|
double cf_statistic(const std::vector<Vec>& xs, const std::vector<Vec>& u_grid,
                    const std::function<cplx(const Vec&)>& psi);
double marginal_cf_test(const LevyFamily& f, double t, int n, const std::vector<Vec>& u_grid, std::uint64_t seed);
// Largest |u| whose truncation bias bound c u^2 var stays below 1/sqrt(n), capped at `cap`.
double cf_u_max(double omitted_var, int n, double c, double cap);

// Built-in reproduction configs, by name.
std::vector<std::string> builtin_config_names();
ExperimentConfig builtin_config(const std::string& name);

}  // namespace lc
