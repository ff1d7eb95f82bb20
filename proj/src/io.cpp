#include "heatrate/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace heatrate {

namespace {

void require_object(const json& j, const char* what) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw Error(ErrorCode::ParseError, std::string("unknown field '") + it.key() + "' in " + what);
    }
}

double number(const json& j, const std::string& key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "' in " + what);
    if (!it->is_number()) throw Error(ErrorCode::ParseError, "field '" + key + "' must be a number");
    double v = it->get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "field '" + key + "' must be finite");
    return v;
}

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vec_from(const json& j, const char* key) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(key) + " must be an array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw Error(ErrorCode::ParseError, std::string(key) + " entries must be numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

void to_json(json& j, const MaterialParams& p) {
    j = json{{"lambda", p.lambda}, {"tau", p.tau}, {"mu", p.mu}, {"nu", p.nu},
             {"kappa", p.kappa}, {"rho_cv", p.rho_cv}, {"theta_ref", p.theta_ref}};
}

void from_json(const json& j, MaterialParams& p) {
    require_object(j, "MaterialParams");
    reject_unknown(j, {"lambda", "tau", "mu", "nu", "kappa", "rho_cv", "theta_ref"}, "MaterialParams");
    p.lambda = number(j, "lambda", "MaterialParams");
    p.tau = number(j, "tau", "MaterialParams");
    p.mu = number(j, "mu", "MaterialParams");
    p.nu = number(j, "nu", "MaterialParams");
    p.kappa = number(j, "kappa", "MaterialParams");
    p.rho_cv = number(j, "rho_cv", "MaterialParams");
    p.theta_ref = number(j, "theta_ref", "MaterialParams");
}

void to_json(json& j, const FreeEnergyCoeffs& c) {
    j = json{{"alpha1", c.alpha1}, {"alpha2", c.alpha2}, {"alpha3", c.alpha3}, {"alpha4", c.alpha4},
             {"beta1", c.beta1},   {"beta2", c.beta2},   {"beta3", c.beta3},   {"beta4", c.beta4},
             {"beta5", c.beta5},   {"beta6", c.beta6},   {"lso_constrained", c.lso_constrained}};
}

void from_json(const json& j, FreeEnergyCoeffs& c) {
    require_object(j, "FreeEnergyCoeffs");
    reject_unknown(j, {"alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "beta3", "beta4", "beta5",
                       "beta6", "lso_constrained"},
                   "FreeEnergyCoeffs");
    c.alpha1 = number(j, "alpha1", "FreeEnergyCoeffs");
    c.alpha2 = number(j, "alpha2", "FreeEnergyCoeffs");
    c.alpha3 = number(j, "alpha3", "FreeEnergyCoeffs");
    c.alpha4 = number(j, "alpha4", "FreeEnergyCoeffs");
    c.beta1 = number(j, "beta1", "FreeEnergyCoeffs");
    c.beta2 = number(j, "beta2", "FreeEnergyCoeffs");
    c.beta3 = number(j, "beta3", "FreeEnergyCoeffs");
    c.beta4 = number(j, "beta4", "FreeEnergyCoeffs");
    c.beta5 = number(j, "beta5", "FreeEnergyCoeffs");
    c.beta6 = number(j, "beta6", "FreeEnergyCoeffs");
    c.lso_constrained = j.value("lso_constrained", false);
}

void to_json(json& j, const ThermalState& s) {
    j = json{{"theta", s.theta},
             {"q", vec_json(s.q)},
             {"q_dot", vec_json(s.q_dot)},
             {"grad_theta", vec_json(s.grad_theta)},
             {"grad_theta_dot", vec_json(s.grad_theta_dot)}};
    if (s.q_ddot) j["q_ddot"] = vec_json(*s.q_ddot);
    if (s.grad_theta_ddot) j["grad_theta_ddot"] = vec_json(*s.grad_theta_ddot);
}

void from_json(const json& j, ThermalState& s) {
    require_object(j, "ThermalState");
    reject_unknown(j, {"theta", "q", "q_dot", "grad_theta", "grad_theta_dot", "q_ddot", "grad_theta_ddot"},
                   "ThermalState");
    s.theta = number(j, "theta", "ThermalState");
    for (const char* k : {"q", "q_dot", "grad_theta", "grad_theta_dot"})
        if (!j.contains(k)) throw Error(ErrorCode::ParseError, std::string("missing field '") + k + "'");
    s.q = vec_from(j["q"], "q");
    s.q_dot = vec_from(j["q_dot"], "q_dot");
    s.grad_theta = vec_from(j["grad_theta"], "grad_theta");
    s.grad_theta_dot = vec_from(j["grad_theta_dot"], "grad_theta_dot");
    s.q_ddot.reset();
    s.grad_theta_ddot.reset();
    if (j.contains("q_ddot")) s.q_ddot = vec_from(j["q_ddot"], "q_ddot");
    if (j.contains("grad_theta_ddot")) s.grad_theta_ddot = vec_from(j["grad_theta_ddot"], "grad_theta_ddot");
    s.check();
}

void to_json(json& j, const QuadForm4& a) {
    j = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back(a(i, k));
        j.push_back(row);
    }
}

void from_json(const json& j, QuadForm4& a) {
    if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::ParseError, "QuadForm4 must be a 4x4 array");
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4) throw Error(ErrorCode::ParseError, "QuadForm4 row must have 4 entries");
        for (int k = 0; k < 4; ++k) m(i, k) = j[i][k].get<double>();
    }
    for (int i = 0; i < 4; ++i)
        for (int k = i + 1; k < 4; ++k)
            if (m(i, k) != m(k, i)) throw Error(ErrorCode::ParseError, "QuadForm4 must be symmetric");
    a = QuadForm4::from_matrix(m);
}

void to_json(json& j, const ModelKind& m) {
    struct V {
        json operator()(const Fourier& x) const { return {{"kind", "Fourier"}, {"kappa", x.kappa}}; }
        json operator()(const MCV& x) const { return {{"kind", "MCV"}, {"tau", x.tau}, {"kappa", x.kappa}}; }
        json operator()(const GNIII& x) const { return {{"kind", "GNIII"}, {"xi", x.xi}, {"kappa", x.kappa}}; }
        json operator()(const Jeffreys& x) const {
            return {{"kind", "Jeffreys"}, {"tau", x.tau}, {"kappa", x.kappa}, {"zeta", x.zeta}};
        }
        json operator()(const Quintanilla& x) const {
            return {{"kind", "Quintanilla"}, {"tau", x.tau}, {"xi", x.xi}, {"kappa", x.kappa}};
        }
        json operator()(const Burgers& x) const {
            return {{"kind", "Burgers"}, {"lambda", x.lambda}, {"tau", x.tau}, {"kappa", x.kappa}, {"zeta", x.zeta}};
        }
        json operator()(const LSO& x) const {
            json o = x.params;
            o["kind"] = "LSO";
            return o;
        }
    };
    j = std::visit(V{}, m);
}

void from_json(const json& j, ModelKind& m) {
    require_object(j, "model");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw Error(ErrorCode::ParseError, "model needs a string field 'kind'");
    const std::string kind = lower(j["kind"].get<std::string>());
    json body = j;
    body.erase("kind");
    if (kind == "fourier") {
        reject_unknown(body, {"kappa"}, "Fourier");
        m = Fourier{number(body, "kappa", "Fourier")};
    } else if (kind == "mcv") {
        reject_unknown(body, {"tau", "kappa"}, "MCV");
        m = MCV{number(body, "tau", "MCV"), number(body, "kappa", "MCV")};
    } else if (kind == "gniii") {
        reject_unknown(body, {"xi", "kappa"}, "GNIII");
        m = GNIII{number(body, "xi", "GNIII"), number(body, "kappa", "GNIII")};
    } else if (kind == "jeffreys") {
        reject_unknown(body, {"tau", "kappa", "zeta"}, "Jeffreys");
        m = Jeffreys{number(body, "tau", "Jeffreys"), number(body, "kappa", "Jeffreys"),
                     number(body, "zeta", "Jeffreys")};
    } else if (kind == "quintanilla") {
        reject_unknown(body, {"tau", "xi", "kappa"}, "Quintanilla");
        m = Quintanilla{number(body, "tau", "Quintanilla"), number(body, "xi", "Quintanilla"),
                        number(body, "kappa", "Quintanilla")};
    } else if (kind == "burgers") {
        reject_unknown(body, {"lambda", "tau", "kappa", "zeta"}, "Burgers");
        m = Burgers{number(body, "lambda", "Burgers"), number(body, "tau", "Burgers"),
                    number(body, "kappa", "Burgers"), number(body, "zeta", "Burgers")};
    } else if (kind == "lso") {
        MaterialParams p;
        from_json(body, p);
        m = LSO{p};
    } else {
        throw Error(ErrorCode::ParseError, "unknown model kind '" + j["kind"].get<std::string>() + "'");
    }
}

ModelKind parse_model(const json& j) {
    ModelKind m;
    from_json(j, m);
    return m;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace heatrate
