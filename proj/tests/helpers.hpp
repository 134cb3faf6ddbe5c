#pragma once

#include "levycouple/json_io.hpp"

#include <cmath>

namespace lct {

inline lc::json pos_sigma() { return lc::json::array({{{"dir", {1.0}}, {"weight", 1.0}}}); }
inline lc::json sym_sigma() {
    return lc::json::array({{{"dir", {1.0}}, {"weight", 0.5}}, {{"dir", {-1.0}}, {"weight", 0.5}}});
}

inline lc::LevyFamily tempered(double alpha, double lambda, const lc::json& sigma = pos_sigma()) {
    return lc::parse_family(
        {{"kind", "TemperedStable"}, {"alpha", alpha}, {"c_alpha", 1.0}, {"sigma", sigma}, {"lambda", lambda}});
}

inline lc::LevyFamily stable_family(double alpha, const lc::json& sigma = pos_sigma()) {
    return lc::parse_family({{"kind", "Stable"}, {"alpha", alpha}, {"c_alpha", 1.0}, {"sigma", sigma}});
}

inline lc::StableSpec stable(double alpha, const lc::json& sigma = pos_sigma()) {
    return lc::parse_stable({{"alpha", alpha}, {"c_alpha", 1.0}, {"sigma", sigma}});
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace lct
