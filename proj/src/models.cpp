#include "heatrate/models.hpp"

#include <array>
#include <cmath>

namespace heatrate {

namespace {

using Vec = Eigen::VectorXd;

// Quadratic forms over the blocks (q, q', g, g'): psi = x.P x / 2, rho theta gamma = x.G x.
struct Forms {
    Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
};

void need_leading(double c, const char* what) {
    if (c == 0.0) throw Error(ErrorCode::DegenerateLeadingCoefficient, std::string(what) + "; use reduce()");
}

void need_nonzero(double c, const char* what) {
    if (c == 0.0) throw Error(ErrorCode::InvalidArgument, what);
}

Vec g_ddot_of(const ThermalState& s) {
    return s.grad_theta_ddot ? *s.grad_theta_ddot : Vec::Zero(s.dim());
}

struct RateVisitor {
    const ThermalState& s;
    Vec operator()(const Fourier& m) const { return -m.kappa * s.grad_theta; }
    Vec operator()(const MCV& m) const {
        need_leading(m.tau, "MCV with tau = 0");
        return -(s.q + m.kappa * s.grad_theta) / m.tau;
    }
    Vec operator()(const GNIII& m) const { return -m.xi * s.grad_theta - m.kappa * s.grad_theta_dot; }
    Vec operator()(const Jeffreys& m) const {
        need_leading(m.tau, "Jeffreys with tau = 0");
        return -(s.q + m.kappa * s.grad_theta + m.tau * m.zeta * s.grad_theta_dot) / m.tau;
    }
    Vec operator()(const Quintanilla& m) const {
        need_leading(m.tau, "Quintanilla with tau = 0");
        return -(s.q_dot + m.xi * s.grad_theta + m.kappa * s.grad_theta_dot) / m.tau;
    }
    Vec operator()(const Burgers& m) const {
        need_leading(m.lambda, "Burgers with lambda = 0");
        return -(m.tau * s.q_dot + s.q + m.kappa * s.grad_theta + m.tau * m.zeta * s.grad_theta_dot) / m.lambda;
    }
    Vec operator()(const LSO& m) const {
        const auto& p = m.params;
        need_leading(p.lambda, "LSO with lambda = 0");
        return -(p.tau * s.q_dot + s.q + p.mu * s.grad_theta + p.tau * p.nu * s.grad_theta_dot) / p.lambda -
               p.kappa * g_ddot_of(s);
    }
};

Eigen::Matrix4d lso_gamma(const MaterialParams& p, const FreeEnergyCoeffs& c, double theta) {
    return build_A(p, c, theta).matrix();
}

struct FormVisitor {
    double th;
    const std::optional<FreeEnergyCoeffs>& coeffs;
    JeffreysBranch branch;

    Forms operator()(const Fourier& m) const {
        Forms f;
        f.G(2, 2) = m.kappa / th;
        return f;
    }
    Forms operator()(const MCV& m) const {
        need_nonzero(m.kappa, "MCV free energy needs kappa != 0");
        Forms f;
        f.P(0, 0) = m.tau / (th * m.kappa);
        f.G(0, 0) = 1.0 / (th * m.kappa);
        return f;
    }
    Forms operator()(const GNIII& m) const {
        if (m.xi == 0.0) throw Error(ErrorCode::SingularXi, "GNIII needs xi != 0");
        Forms f;
        const double c = 1.0 / (th * m.xi);
        f.P(0, 0) = c;
        f.P(0, 2) = f.P(2, 0) = c * m.kappa;
        f.P(2, 2) = c * m.kappa * m.kappa;
        f.G(2, 2) = m.kappa / th;
        return f;
    }
    Forms operator()(const Jeffreys& m) const {
        Forms f;
        const double z = m.zeta;
        if (branch == JeffreysBranch::First) {
            const double d = m.kappa + z;
            need_nonzero(d, "Jeffreys first branch needs kappa + zeta != 0");
            const double c = m.tau / (th * d);
            f.P(0, 0) = c;
            f.P(0, 2) = f.P(2, 0) = c * z;
            f.P(2, 2) = c * z * z;
            f.G(0, 0) = 1.0 / (th * d);
            f.G(2, 2) = z * m.kappa / (th * d);
        } else {
            const double d = m.kappa - z;
            need_nonzero(d, "Jeffreys second branch needs kappa != zeta");
            const double c = m.tau / (th * d);
            f.P(0, 0) = c;
            f.P(0, 2) = f.P(2, 0) = c * z;
            f.P(2, 2) = c * z * z;
            const double e = 1.0 / (th * d);
            f.G(0, 0) = e;
            f.G(0, 2) = f.G(2, 0) = e * z;
            f.G(2, 2) = e * z * z + z / th;
        }
        return f;
    }
    Forms operator()(const Quintanilla& m) const {
        if (m.xi == 0.0) throw Error(ErrorCode::SingularXi, "Quintanilla needs xi != 0");
        const double d = m.kappa - m.tau * m.xi;
        need_nonzero(d, "Quintanilla needs kappa != tau*xi");
        const double c = m.kappa / (d * m.xi);
        const double t = m.tau, k = m.kappa;
        Forms f;
        f.P(0, 0) = 1.0 / (th * m.xi);
        f.P(0, 1) = f.P(1, 0) = t / (th * m.xi);
        f.P(0, 2) = f.P(2, 0) = k / (th * m.xi);
        f.P(1, 1) = c * t * t / th;
        f.P(1, 2) = f.P(2, 1) = c * t * k / th;
        f.P(2, 2) = c * k * k / th;
        const double e = 1.0 / (th * d);
        f.G(1, 1) = e * t * t;
        f.G(1, 2) = f.G(2, 1) = e * t * k;
        f.G(2, 2) = e * k * k;
        return f;
    }
    Forms operator()(const Burgers& m) const {
        const FreeEnergyCoeffs c = coeffs ? *coeffs : burgers_coeffs(m, th);
        Forms f;
        f.P = c.hessian();
        f.G = lso_gamma(burgers_as_lso(m), c, th);
        return f;
    }
    Forms operator()(const LSO& m) const {
        if (!coeffs) throw Error(ErrorCode::MissingCoefficients, "LSO free energy needs coefficients");
        need_leading(m.params.lambda, "LSO with lambda = 0");
        Forms f;
        f.P = coeffs->hessian();
        f.G = lso_gamma(m.params, *coeffs, th);
        return f;
    }
};

std::array<Vec, 4> blocks(const ThermalState& s) { return {s.q, s.q_dot, s.grad_theta, s.grad_theta_dot}; }

// sum_ij M_ij X_i . Y_j, and the sum of absolute values of each product.
std::pair<double, double> contract(const Eigen::Matrix4d& M, const std::array<Vec, 4>& X, const std::array<Vec, 4>& Y) {
    double v = 0.0, a = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (M(i, j) == 0.0) continue;
            const double t = M(i, j) * X[i].dot(Y[j]);
            v += t;
            a += std::abs(t);
        }
    return {v, a};
}

Forms forms_of(const ModelKind& model, const ThermalState& s, const std::optional<FreeEnergyCoeffs>& coeffs,
               const ModelOptions& opt) {
    s.check();
    return std::visit(FormVisitor{s.theta, coeffs, opt.jeffreys_branch}, model);
}

// State with the flux derivatives replaced by the model's rates.
std::array<Vec, 4> model_rates(const ModelKind& model, const ThermalState& s, std::array<Vec, 4>& x) {
    const int order = flux_order(model);
    const Vec top = highest_rate(model, s);
    Vec q_dot = s.q_dot, q_ddot = s.q_ddot ? *s.q_ddot : Vec::Zero(s.dim());
    Vec g_ddot = g_ddot_of(s);
    if (order == 0) {
        x[0] = top;
    } else if (order == 1) {
        q_dot = top;
    } else {
        if (const auto* m = std::get_if<LSO>(&model); m && !s.grad_theta_ddot && s.q_ddot && m->params.kappa != 0.0) {
            // The rate equation fixes kappa g'' once q'' is prescribed.
            ThermalState s0 = s;
            s0.grad_theta_ddot = Vec::Zero(s.dim());
            g_ddot = (highest_rate(model, s0) - *s.q_ddot) / m->params.kappa;
            q_ddot = *s.q_ddot;
        } else {
            q_ddot = top;
        }
    }
    return {q_dot, q_ddot, s.grad_theta_dot, g_ddot};
}

}  // namespace

const char* to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::Consistent: return "Consistent";
    case VerdictStatus::Inconsistent: return "Inconsistent";
    case VerdictStatus::ConditionallyConsistent: return "ConditionallyConsistent";
    }
    return "Unknown";
}

Eigen::VectorXd highest_rate(const ModelKind& model, const ThermalState& state) {
    state.check();
    return std::visit(RateVisitor{state}, model);
}

FreeEnergyCoeffs burgers_coeffs(const Burgers& b, double theta) {
    need_leading(b.lambda, "Burgers with lambda = 0");
    if (!(theta > 0.0)) throw Error(ErrorCode::NonPositiveTemperature, "theta must be > 0");
    const double l = b.lambda, t = b.tau, k = b.kappa, z = b.zeta;
    const double s = t * z / l;
    need_nonzero(s, "Burgers free energy needs tau*zeta != 0");
    const double w = (t * t * z - l * k) / l;
    const double den = theta * (l * s * s + w * k);
    need_nonzero(den, "Burgers free energy is singular at these parameters");
    FreeEnergyCoeffs c;
    c.alpha2 = l * l * s / den;
    c.beta1 = c.alpha2 * w / (l * s);
    c.alpha1 = (c.beta1 * w / l + 1.0 / theta) / s;
    c.beta2 = s * c.beta1;
    c.beta3 = s * c.alpha2;
    c.alpha3 = s * s * c.alpha2;
    return c;
}

MaterialParams burgers_as_lso(const Burgers& b, double theta_ref) {
    MaterialParams p;
    p.lambda = b.lambda;
    p.tau = b.tau;
    p.mu = b.kappa;
    p.nu = b.zeta;
    p.kappa = 0.0;
    p.theta_ref = theta_ref;
    return p;
}

double free_energy(const ModelKind& model, const ThermalState& state, const std::optional<FreeEnergyCoeffs>& coeffs,
                   const ModelOptions& opt) {
    const Forms f = forms_of(model, state, coeffs, opt);
    auto x = blocks(state);
    if (std::holds_alternative<Fourier>(model)) return 0.0;
    return 0.5 * contract(f.P, x, x).first;
}

double entropy_production(const ModelKind& model, const ThermalState& state,
                          const std::optional<FreeEnergyCoeffs>& coeffs, const ModelOptions& opt) {
    const Forms f = forms_of(model, state, coeffs, opt);
    const auto x = blocks(state);
    return contract(f.G, x, x).first;
}

ResidualTerms clausius_duhem_terms(const ModelKind& model, const ThermalState& state,
                                   const std::optional<FreeEnergyCoeffs>& coeffs, const ModelOptions& opt) {
    const Forms f = forms_of(model, state, coeffs, opt);
    auto x = blocks(state);
    const auto xd = model_rates(model, state, x);
    ResidualTerms r;
    const auto [e, ea] = contract(f.P, x, xd);
    const auto [g, ga] = contract(f.G, x, x);
    r.energy_rate = e;
    r.heat_term = x[0].dot(state.grad_theta) / state.theta;
    r.production = g;
    r.residual = r.energy_rate + r.heat_term + r.production;
    r.scale = ea + std::abs(r.heat_term) + ga;
    return r;
}

double clausius_duhem_residual(const ModelKind& model, const ThermalState& state,
                               const std::optional<FreeEnergyCoeffs>& coeffs, const ModelOptions& opt) {
    return clausius_duhem_terms(model, state, coeffs, opt).residual;
}

namespace {

ConsistencyVerdict verdict(std::vector<Predicate> preds, std::string notes = {}) {
    ConsistencyVerdict v;
    bool ok = true;
    for (const auto& p : preds) ok = ok && p.value;
    v.status = ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
    v.conditions_checked = std::move(preds);
    v.notes = std::move(notes);
    return v;
}

ConsistencyVerdict lso_verdict(const MaterialParams& p) {
    ConsistencyVerdict v;
    if (p.lambda == 0.0 || p.kappa == 0.0) {
        v.status = VerdictStatus::Inconsistent;
        v.conditions_checked = {{"lambda!=0", p.lambda != 0.0}, {"kappa!=0", p.kappa != 0.0}};
        v.notes = p.lambda == 0.0 ? "degenerate: reduces to Jeffreys" : "degenerate: reduces to Burgers";
        return v;
    }
    const auto cls = classify(p);
    bool decisive = false;
    for (int item : cls.matched_items) {
        v.conditions_checked.push_back({"item " + std::to_string(item), true});
        decisive = decisive || is_decisive_item(item);
    }
    for (int item : cls.rejected_conditional) v.conditions_checked.push_back({"item " + std::to_string(item), false});
    if (cls.search) v.conditions_checked.push_back({"psd coefficients found", cls.search->feasible});
    if (decisive) {
        v.status = VerdictStatus::Consistent;
        v.notes = "closed-form item matched";
    } else if (!cls.infeasible) {
        v.status = VerdictStatus::ConditionallyConsistent;
        v.notes = "only conditional items matched";
    } else {
        v.status = VerdictStatus::Inconsistent;
        v.notes = "no PSD coefficients exist";
    }
    return v;
}

}  // namespace

ConsistencyVerdict check_parameter_consistency(const ModelKind& model) {
    struct V {
        ConsistencyVerdict operator()(const Fourier& m) const { return verdict({{"kappa>0", m.kappa > 0}}); }
        ConsistencyVerdict operator()(const MCV& m) const {
            return verdict({{"kappa>0", m.kappa > 0}, {"tau>=0", m.tau >= 0}});
        }
        ConsistencyVerdict operator()(const GNIII& m) const {
            return verdict({{"kappa>0", m.kappa > 0}, {"xi!=0", m.xi != 0.0}});
        }
        ConsistencyVerdict operator()(const Jeffreys& m) const {
            const bool b1 = m.kappa > 0 && m.zeta >= 0;
            const bool b2 = m.kappa > m.zeta && m.zeta >= 0;
            ConsistencyVerdict v;
            v.conditions_checked = {{"first: kappa>0", m.kappa > 0},
                                    {"first: zeta>=0", m.zeta >= 0},
                                    {"second: kappa>zeta", m.kappa > m.zeta},
                                    {"second: zeta>=0", m.zeta >= 0}};
            v.status = b1 || b2 ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
            v.notes = b1 ? "first branch" : b2 ? "second branch" : "neither branch";
            return v;
        }
        ConsistencyVerdict operator()(const Quintanilla& m) const {
            return verdict({{"tau>0", m.tau > 0}, {"xi!=0", m.xi != 0.0}, {"kappa>tau*xi", m.kappa > m.tau * m.xi}});
        }
        ConsistencyVerdict operator()(const Burgers& m) const {
            const bool i = m.kappa == 0.0 && m.zeta > 0;
            const bool ii = m.kappa > 0 && m.tau * m.tau * m.zeta >= m.lambda * m.kappa && m.zeta != 0.0;
            ConsistencyVerdict v;
            v.conditions_checked = {{"lambda>0", m.lambda > 0},
                                    {"tau>0", m.tau > 0},
                                    {"i) kappa=0, zeta>0", i},
                                    {"ii) kappa>0, tau^2*zeta>=lambda*kappa", ii}};
            const bool ok = m.lambda > 0 && m.tau > 0 && (i || ii);
            v.status = ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
            v.notes = !ok ? "no hypothesis holds" : i ? "hypothesis i)" : "hypothesis ii)";
            return v;
        }
        ConsistencyVerdict operator()(const LSO& m) const { return lso_verdict(m.params); }
    };
    return std::visit(V{}, model);
}

ModelKind reduce(const ModelKind& model) {
    struct V {
        ModelKind operator()(const Fourier&) const { throw Error(ErrorCode::NotReducible, "Fourier has no limit"); }
        ModelKind operator()(const MCV& m) const {
            if (m.tau == 0.0) return Fourier{m.kappa};
            throw Error(ErrorCode::NotReducible, "MCV reduces only at tau = 0");
        }
        ModelKind operator()(const GNIII&) const { throw Error(ErrorCode::NotReducible, "GNIII has no limit"); }
        ModelKind operator()(const Jeffreys& m) const {
            if (m.tau == 0.0) return Fourier{m.kappa};
            throw Error(ErrorCode::NotReducible, "Jeffreys reduces only at tau = 0");
        }
        ModelKind operator()(const Quintanilla& m) const {
            if (m.tau == 0.0) return GNIII{m.xi, m.kappa};
            throw Error(ErrorCode::NotReducible, "Quintanilla reduces only at tau = 0");
        }
        ModelKind operator()(const Burgers& m) const {
            if (m.lambda == 0.0) return Jeffreys{m.tau, m.kappa, m.zeta};
            throw Error(ErrorCode::NotReducible, "Burgers reduces only at lambda = 0");
        }
        ModelKind operator()(const LSO& m) const {
            const auto& p = m.params;
            if (p.lambda == 0.0) return Jeffreys{p.tau, p.mu, p.nu};
            if (p.kappa == 0.0) return Burgers{p.lambda, p.tau, p.mu, p.nu};
            throw Error(ErrorCode::NotReducible, "LSO reduces only at lambda = 0 or kappa = 0");
        }
    };
    return std::visit(V{}, model);
}

}  // namespace heatrate
