#pragma once

#include "levycouple/family.hpp"
#include "levycouple/slowvar.hpp"

#include "json.hpp"

#include <initializer_list>
#include <string>

namespace lc {

using json = nlohmann::json;

// Reject keys outside `allowed`; `where` names the object in the error.
void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

double get_number(const json& j, const char* key, const std::string& where);
double get_number_or(const json& j, const char* key, double dflt, const std::string& where);
Vec parse_vec(const json& j, const std::string& where);
Mat parse_mat(const json& j, int d, const std::string& where);

SlowVarSpec parse_slowvar(const json& j);
json slowvar_to_json(const SlowVarSpec& s);

SphericalMeasure parse_sigma(const json& j);
json sigma_to_json(const SphericalMeasure& s);

StableSpec parse_stable(const json& j);
json stable_to_json(const StableSpec& s);

LevyFamily parse_family(const json& j);
json family_to_json(const LevyFamily& f);

json vec_to_json(const Vec& v);
json mat_to_json(const Mat& m);

}  // namespace lc
