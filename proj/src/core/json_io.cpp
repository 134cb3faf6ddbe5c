#include "levycouple/json_io.hpp"

#include "levycouple/errors.hpp"

#include <cmath>
#include <set>

namespace lc {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) fail(ErrorKind::Config, where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) fail(ErrorKind::Config, where + ": unknown key '" + it.key() + "'");
}

double get_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(ErrorKind::Config, where + ": missing key '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) fail(ErrorKind::Config, where + ": key '" + key + "' must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorKind::Config, where + ": key '" + key + "' must be finite");
    return x;
}

double get_number_or(const json& j, const char* key, double dflt, const std::string& where) {
    return j.contains(key) ? get_number(j, key, where) : dflt;
}

Vec parse_vec(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::Config, where + ": expected a nonempty numeric array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(ErrorKind::Config, where + ": array entries must be numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Mat parse_mat(const json& j, int d, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) fail(ErrorKind::Config, where + ": expected d rows");
    Mat m(d, d);
    for (int r = 0; r < d; ++r) {
        Vec row = parse_vec(j[static_cast<size_t>(r)], where);
        if (row.size() != d) fail(ErrorKind::Config, where + ": expected d columns");
        m.row(r) = row.transpose();
    }
    return m;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json mat_to_json(const Mat& m) {
    json a = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_to_json(m.row(r).transpose()));
    return a;
}

SlowVarSpec parse_slowvar(const json& j) {
    const std::string w = "slowvar";
    if (!j.is_object() || !j.contains("variant")) fail(ErrorKind::Config, w + ": missing 'variant'");
    std::string v = j.at("variant").get<std::string>();
    if (v == "Constant") {
        check_keys(j, {"variant", "c"}, w);
        double c = get_number_or(j, "c", 1.0, w);
        if (!(c > 0)) fail(ErrorKind::Config, w + ": constant must be positive");
        return SlowVarSpec::constant(c);
    }
    if (v == "LogPower") {
        check_keys(j, {"variant", "first", "q"}, w);
        int first = static_cast<int>(get_number_or(j, "first", 1, w));
        if (first < 1) fail(ErrorKind::Config, w + ": 'first' must be at least 1");
        Vec q = parse_vec(j.at("q"), w + ".q");
        return SlowVarSpec::log_power(first, std::vector<double>(q.data(), q.data() + q.size()));
    }
    if (v == "ExpIntegral") {
        check_keys(j, {"variant", "phi_n", "phi_k", "sign"}, w);
        int n = static_cast<int>(get_number_or(j, "phi_n", 1, w));
        double k = get_number_or(j, "phi_k", 1.0, w);
        int s = static_cast<int>(get_number_or(j, "sign", -1, w));
        if (n < 1 || !(k > 0) || (s != 1 && s != -1))
            fail(ErrorKind::Config, w + ": need phi_n >= 1, phi_k > 0, sign = +-1");
        return SlowVarSpec::exp_integral(n, k, s);
    }
    fail(ErrorKind::Config, w + ": unknown variant '" + v + "'");
}

json slowvar_to_json(const SlowVarSpec& s) {
    switch (s.variant) {
    case SlowVarSpec::Variant::Constant: return {{"variant", "Constant"}, {"c", s.c}};
    case SlowVarSpec::Variant::LogPower: return {{"variant", "LogPower"}, {"first", s.first}, {"q", s.q}};
    case SlowVarSpec::Variant::ExpIntegral:
        return {{"variant", "ExpIntegral"}, {"phi_n", s.phi_n}, {"phi_k", s.phi_k}, {"sign", s.sign}};
    }
    return {};
}

SphericalMeasure parse_sigma(const json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::Config, "sigma: expected a nonempty array of atoms");
    std::vector<Vec> dirs;
    std::vector<double> wts;
    for (const auto& a : j) {
        check_keys(a, {"dir", "weight"}, "sigma atom");
        dirs.push_back(parse_vec(a.at("dir"), "sigma.dir"));
        wts.push_back(get_number(a, "weight", "sigma atom"));
    }
    int d = static_cast<int>(dirs.front().size());
    return SphericalMeasure::make(d, dirs, wts);
}

json sigma_to_json(const SphericalMeasure& s) {
    json a = json::array();
    for (size_t j = 0; j < s.size(); ++j) a.push_back({{"dir", vec_to_json(s.dirs[j])}, {"weight", s.weights[j]}});
    return a;
}

StableSpec parse_stable(const json& j) {
    const std::string w = "stable spec";
    check_keys(j, {"alpha", "c_alpha", "sigma", "sigma_Z", "dim"}, w);
    StableSpec s;
    s.alpha = get_number(j, "alpha", w);
    s.c_alpha = get_number_or(j, "c_alpha", s.alpha == 2.0 ? 0.0 : 1.0, w);
    if (s.alpha == 2.0) {
        int d = static_cast<int>(get_number_or(j, "dim", 1, w));
        if (!j.contains("sigma_Z")) fail(ErrorKind::Config, w + ": Gaussian target needs sigma_Z");
        if (j.at("sigma_Z").is_array()) d = static_cast<int>(j.at("sigma_Z").size());
        s.sigma.dim = d;
        s.sigma_Z = parse_mat(j.at("sigma_Z"), d, w + ".sigma_Z");
    } else {
        if (!j.contains("sigma")) fail(ErrorKind::Config, w + ": missing 'sigma'");
        s.sigma = parse_sigma(j.at("sigma"));
        if (j.contains("sigma_Z")) s.sigma_Z = parse_mat(j.at("sigma_Z"), s.sigma.dim, w + ".sigma_Z");
    }
    s.validate();
    return s;
}

json stable_to_json(const StableSpec& s) {
    json j{{"alpha", s.alpha}, {"c_alpha", s.c_alpha}};
    if (s.gaussian()) {
        j["sigma_Z"] = mat_to_json(s.sigma_Z);
    } else {
        j["sigma"] = sigma_to_json(s.sigma);
    }
    return j;
}

namespace {

FamilyKind parse_kind(const std::string& k) {
    if (k == "Stable") return FamilyKind::Stable;
    if (k == "AugmentedStable") return FamilyKind::AugmentedStable;
    if (k == "TemperedStable") return FamilyKind::TemperedStable;
    if (k == "TruncatedStable") return FamilyKind::TruncatedStable;
    if (k == "CompoundPoissonPerturbation") return FamilyKind::CompoundPoissonPerturbation;
    if (k == "BrownianPlusJumps") return FamilyKind::BrownianPlusJumps;
    fail(ErrorKind::Config, "family: unknown kind '" + k + "'");
}

// per-atom parameter: scalar or list of length n
std::vector<double> per_atom(const json& j, const char* key, size_t n, const std::string& w) {
    const json& v = j.at(key);
    if (v.is_number()) return std::vector<double>(n, v.get<double>());
    Vec a = parse_vec(v, w + "." + key);
    if (static_cast<size_t>(a.size()) != n) fail(ErrorKind::Config, w + ": '" + key + "' needs one entry per atom");
    return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace

LevyFamily parse_family(const json& j) {
    const std::string w = "family";
    check_keys(j,
               {"kind", "alpha", "c_alpha", "sigma", "profile", "lambda", "cut", "H", "form", "gaussian", "drift",
                "gamma", "perturbation", "beta_eps", "dim"},
               w);
    if (!j.contains("kind")) fail(ErrorKind::Config, w + ": missing 'kind'");
    LevyFamily f;
    f.kind = parse_kind(j.at("kind").get<std::string>());

    bool co = j.contains("c_alpha") || j.contains("sigma");
    if (f.kind == FamilyKind::Stable || f.kind == FamilyKind::AugmentedStable || f.kind == FamilyKind::TemperedStable ||
        f.kind == FamilyKind::TruncatedStable)
        co = true;

    if (co) {
        if (!j.contains("sigma")) fail(ErrorKind::Config, w + ": missing 'sigma'");
        f.sigma = parse_sigma(j.at("sigma"));
        f.d = f.sigma.dim;
        f.alpha = get_number(j, "alpha", w);
        double c = get_number_or(j, "c_alpha", 1.0, w);
        std::string prof = "stable";
        switch (f.kind) {
        case FamilyKind::TemperedStable: prof = "tempered"; break;
        case FamilyKind::TruncatedStable: prof = "truncated"; break;
        case FamilyKind::AugmentedStable: prof = "augmented"; break;
        default:
            if (j.contains("profile")) prof = j.at("profile").get<std::string>();
        }
        size_t n = f.sigma.size();
        for (size_t a = 0; a < n; ++a) {
            if (prof == "stable") {
                f.profiles.push_back(RadialProfile::stable(f.alpha, c));
            } else if (prof == "tempered") {
                if (!j.contains("lambda")) fail(ErrorKind::Config, w + ": tempered profile needs 'lambda'");
                f.profiles.push_back(RadialProfile::tempered(f.alpha, c, per_atom(j, "lambda", n, w)[a]));
            } else if (prof == "truncated") {
                if (!j.contains("cut")) fail(ErrorKind::Config, w + ": truncated profile needs 'cut'");
                f.profiles.push_back(RadialProfile::truncated(f.alpha, c, per_atom(j, "cut", n, w)[a]));
            } else if (prof == "augmented") {
                if (!j.contains("H")) fail(ErrorKind::Config, w + ": augmented profile needs 'H'");
                SlowVarSpec H = parse_slowvar(j.at("H"));
                std::string form = j.contains("form") ? j.at("form").get<std::string>() : "G";
                if (form == "G")
                    f.profiles.push_back(RadialProfile::augmented_g(f.alpha, c, H));
                else if (form == "H")
                    f.profiles.push_back(RadialProfile::augmented_h(f.alpha, c, H));
                else
                    fail(ErrorKind::Config, w + ": 'form' must be \"G\" or \"H\"");
            } else {
                fail(ErrorKind::Config, w + ": unknown profile '" + prof + "'");
            }
        }
    } else {
        f.alpha = 0.0;
        f.d = static_cast<int>(get_number_or(j, "dim", 1, w));
        if (j.contains("gaussian") && j.at("gaussian").is_array())
            f.d = static_cast<int>(j.at("gaussian").size());
        else if (j.contains("perturbation") && j.at("perturbation").is_array() && !j.at("perturbation").empty() &&
                 j.at("perturbation")[0].contains("w"))
            f.d = static_cast<int>(j.at("perturbation")[0].at("w").size());
    }

    if (j.contains("gaussian")) f.gaussian = parse_mat(j.at("gaussian"), f.d, w + ".gaussian");
    if (f.kind == FamilyKind::BrownianPlusJumps && !f.has_gaussian())
        fail(ErrorKind::Config, w + ": BrownianPlusJumps needs a nonzero 'gaussian'");

    f.gamma = Vec::Zero(f.d);
    std::string drift = "default";
    if (j.contains("drift")) drift = j.at("drift").get<std::string>();
    if (drift == "default") {
        f.drift_mode = (f.has_co() && f.alpha > 1.0) ? DriftMode::MeanZero : DriftMode::ZeroNatural;
    } else if (drift == "mean-zero") {
        f.drift_mode = DriftMode::MeanZero;
    } else if (drift == "zero-natural-drift") {
        f.drift_mode = DriftMode::ZeroNatural;
    } else if (drift == "explicit") {
        f.drift_mode = DriftMode::Explicit;
        if (!j.contains("gamma")) fail(ErrorKind::Config, w + ": explicit drift needs 'gamma'");
        f.gamma = parse_vec(j.at("gamma"), w + ".gamma");
    } else {
        fail(ErrorKind::Config, w + ": unknown drift mode '" + drift + "'");
    }
    if (drift != "explicit" && j.contains("gamma")) fail(ErrorKind::Config, w + ": 'gamma' only with explicit drift");

    if (j.contains("perturbation")) {
        for (const auto& pm : j.at("perturbation")) {
            check_keys(pm, {"w", "mass"}, "perturbation");
            f.perturbation.push_back({parse_vec(pm.at("w"), "perturbation.w"), get_number(pm, "mass", "perturbation")});
        }
    }
    f.beta_eps = get_number_or(j, "beta_eps", 0.05, w);
    f.validate();
    return f;
}

json family_to_json(const LevyFamily& f) {
    json j;
    j["kind"] = family_kind_name(f.kind);
    j["dim"] = f.d;
    if (f.has_co()) {
        const RadialProfile& p0 = f.profiles.front();
        j["alpha"] = f.alpha;
        j["c_alpha"] = p0.c();
        j["sigma"] = sigma_to_json(f.sigma);
        switch (p0.kind()) {
        case ProfileKind::Stable:
            if (f.kind != FamilyKind::Stable) j["profile"] = "stable";
            break;
        case ProfileKind::Tempered: {
            json l = json::array();
            for (const auto& p : f.profiles) l.push_back(p.lambda());
            j["lambda"] = l;
            if (f.kind != FamilyKind::TemperedStable) j["profile"] = "tempered";
            break;
        }
        case ProfileKind::Truncated: {
            json l = json::array();
            for (const auto& p : f.profiles) l.push_back(p.cut());
            j["cut"] = l;
            if (f.kind != FamilyKind::TruncatedStable) j["profile"] = "truncated";
            break;
        }
        case ProfileKind::AugmentedH:
        case ProfileKind::AugmentedG:
            j["H"] = slowvar_to_json(p0.slowvar());
            j["form"] = p0.kind() == ProfileKind::AugmentedH ? "H" : "G";
            if (f.kind != FamilyKind::AugmentedStable) j["profile"] = "augmented";
            break;
        }
    }
    if (f.gaussian.size() > 0) j["gaussian"] = mat_to_json(f.gaussian);
    j["drift"] = drift_mode_name(f.drift_mode);
    if (f.drift_mode == DriftMode::Explicit) j["gamma"] = vec_to_json(f.gamma);
    if (!f.perturbation.empty()) {
        json a = json::array();
        for (const auto& pm : f.perturbation) a.push_back({{"w", vec_to_json(pm.w)}, {"mass", pm.mass}});
        j["perturbation"] = a;
    }
    j["beta_eps"] = f.beta_eps;
    return j;
}

}  // namespace lc
