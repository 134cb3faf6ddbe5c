#include "levycouple/errors.hpp"
#include "levycouple/experiments.hpp"

#include <cmath>

namespace lc {

namespace {

json t_grid(int from, int to) {
    json a = json::array();
    for (int k = from; k <= to; ++k) a.push_back(std::ldexp(1.0, -k));
    return a;
}

const json kPos = json::array({{{"dir", {1.0}}, {"weight", 1.0}}});
const json kSym = json::array({{{"dir", {1.0}}, {"weight", 0.5}}, {{"dir", {-1.0}}, {"weight", 0.5}}});

json tempered_normal(double alpha, double q, const char* name) {
    return {{"name", name},
            {"process", {{"kind", "TemperedStable"}, {"alpha", alpha}, {"c_alpha", 1.0}, {"sigma", kPos}, {"lambda", 1.0}}},
            {"target", {{"alpha", alpha}, {"c_alpha", 1.0}, {"sigma", kPos}}},
            {"coupling", "thinning"},
            {"q", q},
            {"t_grid", t_grid(6, 16)},
            {"n_paths", 10000},
            {"seed", 20240611},
            {"cutoffs", {{"delta", 1e-6}}}};
}

json brownian_jumps(double alpha, const char* drift, double beta_eps, double kappa, const char* name) {
    return {{"name", name},
            {"process",
             {{"kind", "BrownianPlusJumps"},
              {"alpha", alpha},
              {"c_alpha", 1.0},
              {"sigma", kSym},
              {"profile", "tempered"},
              {"lambda", 1.0},
              {"gaussian", {{1.0}}},
              {"drift", drift},
              {"beta_eps", beta_eps}}},
            {"target", {{"alpha", 2.0}, {"sigma_Z", {{1.0}}}}},
            {"coupling", "gaussian"},
            {"q", 1.0},
            {"t_grid", t_grid(4, 14)},
            {"n_paths", 10000},
            {"seed", 20240612},
            {"cutoffs", {{"kappa", kappa}}}};
}

json nonnormal(double power, const char* name) {
    return {{"name", name},
            {"process",
             {{"kind", "AugmentedStable"},
              {"alpha", 1.5},
              {"c_alpha", 1.0},
              {"sigma", kPos},
              {"form", "G"},
              {"H", {{"variant", "LogPower"}, {"first", 1}, {"q", {power}}}}}},
            {"target", {{"alpha", 1.5}, {"c_alpha", 1.0}, {"sigma", kPos}}},
            {"coupling", "comonotonic"},
            {"q", 1.0},
            {"t_grid", t_grid(8, 32)},
            {"n_paths", 1000},
            {"seed", 20240613},
            {"cutoffs", {{"gamma_max", 1e4}}}};
}

json self_pair() {
    return {{"name", "self"},
            {"process", {{"kind", "Stable"}, {"alpha", 1.5}, {"c_alpha", 1.0}, {"sigma", kSym}}},
            {"target", {{"alpha", 1.5}, {"c_alpha", 1.0}, {"sigma", kSym}}},
            {"coupling", "thinning"},
            {"q", 1.0},
            {"t_grid", t_grid(2, 7)},
            {"n_paths", 1000},
            {"seed", 7},
            {"cutoffs", {{"delta", 1e-3}}}};
}

}  // namespace

std::vector<std::string> builtin_config_names() {
    return {"normal-tempered-1.5", "normal-tempered-0.5", "gaussian-fv",  "gaussian-iv",
            "nonnormal-log",       "nonnormal-inverse-log", "self"};
}

ExperimentConfig builtin_config(const std::string& name) {
    json j;
    if (name == "normal-tempered-1.5")
        j = tempered_normal(1.5, 1.0, "normal-tempered-1.5");
    else if (name == "normal-tempered-0.5")
        j = tempered_normal(0.5, 0.25, "normal-tempered-0.5");
    else if (name == "gaussian-fv")
        j = brownian_jumps(0.5, "zero-natural-drift", 0.05, 1e-3, "gaussian-fv");
    else if (name == "gaussian-iv")
        j = brownian_jumps(1.5, "mean-zero", 0.1, 0.05, "gaussian-iv");
    else if (name == "nonnormal-log")
        j = nonnormal(1.0, "nonnormal-log");
    else if (name == "nonnormal-inverse-log")
        j = nonnormal(-1.0, "nonnormal-inverse-log");
    else if (name == "self")
        j = self_pair();
    else
        fail(ErrorKind::Config, "unknown built-in config '" + name + "'");
    return parse_experiment(j);
}

}  // namespace lc
