#include "heatrate/stability.hpp"

#include <algorithm>
#include <cmath>

namespace heatrate {

const char* to_string(StabilityStatus s) {
    switch (s) {
    case StabilityStatus::Stable: return "Stable";
    case StabilityStatus::Marginal: return "Marginal";
    case StabilityStatus::Unstable: return "Unstable";
    }
    return "Unknown";
}

const char* to_string(Regime r) {
    switch (r) {
    case Regime::KappaNuPositive: return "kappa>0&nu>0";
    case Regime::KappaZero: return "kappa=0";
    case Regime::NuZero: return "nu=0";
    case Regime::MuZero: return "mu=0";
    case Regime::KappaNuZero: return "kappa=nu=0";
    case Regime::SignViolation: return "sign-violation";
    }
    return "Unknown";
}

CubicCoeffs characteristic_cubic(const MaterialParams& p, double Lambda) {
    if (!(p.rho_cv > 0.0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    const double L = Lambda / p.rho_cv;
    return {p.lambda, p.tau + L * p.lambda * p.kappa, 1.0 + L * p.tau * p.nu, L * p.mu};
}

namespace {

StabilityStatus status_from_roots(const std::vector<cplx>& r, double band, double& max_re) {
    max_re = -INFINITY;
    StabilityStatus s = StabilityStatus::Stable;
    for (const auto& w : r) {
        max_re = std::max(max_re, w.real());
        const double tol = band * std::max(1.0, std::abs(w));
        if (w.real() > tol) return StabilityStatus::Unstable;
        if (w.real() >= -tol) s = StabilityStatus::Marginal;
    }
    return s;
}

}  // namespace

StabilityVerdict hurwitz_verdict(std::vector<double> desc, double band) {
    while (!desc.empty() && desc.front() == 0.0) desc.erase(desc.begin());
    if (desc.size() < 2) throw Error(ErrorCode::DegenerateCubic, "leading coefficient is zero");
    if (desc.size() > 4) throw Error(ErrorCode::InvalidArgument, "degree above 3 is not supported");
    const int deg = static_cast<int>(desc.size()) - 1;
    const double sgn = desc.front() > 0 ? 1.0 : -1.0;
    double scale = 0.0;
    for (double& c : desc) {
        c *= sgn;
        scale = std::max(scale, std::abs(c));
    }

    struct Q {
        std::string name;
        double value, normalized;
    };
    std::vector<Q> tested;
    for (int i = 1; i <= deg; ++i) {
        const int power = deg - i;
        tested.push_back({"c" + std::to_string(power), desc[i], desc[i] / scale});
    }
    if (deg == 3) {
        const double h = desc[1] * desc[2] - desc[0] * desc[3];
        tested.push_back({"c2*c1-c3*c0", h, h / (scale * scale)});
    }

    StabilityVerdict v;
    bool neg = false, near = false;
    for (const auto& q : tested) {
        if (q.normalized < -band) {
            neg = true;
            v.witnesses.push_back({q.name + "<0", q.value});
        }
    }
    if (!neg)
        for (const auto& q : tested)
            if (std::abs(q.normalized) <= band) {
                near = true;
                v.witnesses.push_back({q.name + "=0", q.value});
            }
    v.status = neg ? StabilityStatus::Unstable : near ? StabilityStatus::Marginal : StabilityStatus::Stable;

    const auto roots = polynomial_roots(desc);
    const StabilityStatus rs = status_from_roots(roots, band, v.max_real_root);
    v.roots_agree = rs == v.status || rs == StabilityStatus::Marginal || v.status == StabilityStatus::Marginal;
    return v;
}

StabilityVerdict routh_hurwitz(const CubicCoeffs& c, double band) {
    if (c.c3 == 0.0) throw Error(ErrorCode::DegenerateCubic, "leading coefficient c3 is zero");
    return hurwitz_verdict(c.descending(), band);
}

RelpQuadratic relp(const MaterialParams& p) {
    return {p.lambda * p.kappa * p.tau * p.nu, p.tau * p.tau * p.nu + p.lambda * (p.kappa - p.mu), p.tau};
}

bool positive_on_halfline(const RelpQuadratic& q) {
    const double a = q.a, b = q.b, c = q.c;
    if (a < 0.0 || c < 0.0) return false;
    if (a == 0.0) return (c > 0.0 && b >= 0.0) || (c == 0.0 && b > 0.0);
    if (b >= 0.0) return true;
    return b * b < 4.0 * a * c;
}

std::optional<double> relp_violation(const RelpQuadratic& q) {
    if (positive_on_halfline(q)) return std::nullopt;
    const double a = q.a, b = q.b, c = q.c;
    if (c < 0.0) {
        const double x = std::min(1.0, std::abs(c) / (2.0 * (std::abs(a) + std::abs(b)) + 1e-300));
        return x;
    }
    if (a > 0.0) return -b / (2.0 * a);  // midpoint of the two nonnegative roots
    if (a == 0.0) {
        if (b < 0.0) return -c / b + 1.0;
        return 1.0;  // b = c = 0: the quadratic vanishes identically
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return 1.0;
    const double r = std::max((-b - std::sqrt(disc)) / (2.0 * a), (-b + std::sqrt(disc)) / (2.0 * a));
    return std::max(r, 0.0) + std::max(1.0, std::abs(r));
}

ParameterVerdict stability_conditions(const MaterialParams& p) {
    validate_params(p);
    ParameterVerdict v;
    if (!(p.lambda > 0)) v.witnesses.push_back({"lambda<=0", p.lambda});
    if (!(p.tau > 0)) v.witnesses.push_back({"tau<=0", p.tau});
    if (p.kappa < 0) v.witnesses.push_back({"kappa<0", p.kappa});
    if (p.nu < 0) v.witnesses.push_back({"nu<0", p.nu});
    if (p.mu < 0) v.witnesses.push_back({"mu<0", p.mu});
    if (!v.witnesses.empty()) {
        v.regime = Regime::SignViolation;
        v.pass = false;
        return v;
    }
    const double l = p.lambda, t = p.tau, k = p.kappa, n = p.nu, mu = p.mu;
    if (mu == 0.0) {
        v.regime = Regime::MuZero;
        if (k == 0.0) v.witnesses.push_back({"kappa=0 with mu=0", k});
        if (n == 0.0) v.witnesses.push_back({"nu=0 with mu=0", n});
        v.pass = v.witnesses.empty();
        return v;
    }
    if (k > 0 && n > 0) {
        v.regime = Regime::KappaNuPositive;
        const double s = std::sqrt(l * k) + t * std::sqrt(n);
        v.mu_bound = s * s / l;
        v.pass = mu < *v.mu_bound;
        if (!v.pass) v.witnesses.push_back({"mu>=(sqrt(lambda*kappa)+tau*sqrt(nu))^2/lambda", mu - *v.mu_bound});
    } else if (k == 0.0 && n > 0) {
        v.regime = Regime::KappaZero;
        v.mu_bound = t * t * n / l;
        v.pass = mu <= *v.mu_bound;
        if (!v.pass) v.witnesses.push_back({"tau^2*nu<lambda*mu", t * t * n - l * mu});
    } else if (n == 0.0 && k > 0) {
        v.regime = Regime::NuZero;
        v.mu_bound = k;
        v.pass = k >= mu;
        if (!v.pass) v.witnesses.push_back({"kappa<mu", k - mu});
    } else {
        v.regime = Regime::KappaNuZero;
        v.mu_bound = 0.0;
        v.pass = false;
        v.witnesses.push_back({"kappa=nu=0 with mu>0", mu});
    }
    return v;
}

bool MuRegion::contains(double mu) const {
    if (degenerate) return mu == lo;
    const bool above = lo_closed ? mu >= lo : mu > lo;
    const bool below = hi_closed ? mu <= hi : mu < hi;
    return above && below;
}

MuRegion mu_admissibility(double lambda, double tau, double nu, double kappa) {
    if (!(lambda > 0) || !(tau > 0) || !(nu >= 0) || !(kappa >= 0))
        throw Error(ErrorCode::PreconditionViolated, "requires lambda, tau > 0 and kappa, nu >= 0");
    MuRegion r;
    if (kappa > 0 && nu > 0) {
        const double s = std::sqrt(lambda * kappa) + tau * std::sqrt(nu);
        r = {Regime::KappaNuPositive, 0.0, s * s / lambda, true, false, false};
    } else if (kappa == 0.0 && nu > 0) {
        r = {Regime::KappaZero, 0.0, tau * tau * nu / lambda, false, true, false};
    } else if (nu == 0.0 && kappa > 0) {
        r = {Regime::NuZero, 0.0, kappa, false, true, false};
    } else {
        r = {Regime::KappaNuZero, 0.0, 0.0, true, true, true};
    }
    return r;
}

TuningResult oscillatory_tuning(const MaterialParams& p, double Lambda_bar) {
    if (!(p.lambda > 0) || !(p.tau > 0) || !(p.kappa > 0) || !(p.nu > 0))
        throw Error(ErrorCode::PreconditionViolated, "tuning requires lambda, tau, kappa, nu > 0");
    if (!(p.rho_cv > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    if (!(Lambda_bar > 0)) throw Error(ErrorCode::NoPositiveSolution, "Lambda must be > 0");
    const double l = p.lambda, t = p.tau, k = p.kappa, n = p.nu;
    const double L = Lambda_bar / p.rho_cv;
    TuningResult r;
    r.Lambda_tilde = L;
    r.mu = (l * k * t * n * L * L + (t * t * n + l * k) * L + t) / (l * L);
    if (!(r.mu > 0) || !std::isfinite(r.mu)) throw Error(ErrorCode::NoPositiveSolution, "no positive mu");
    const double w1 = -(L * l * k + t) / l;
    const double om = std::sqrt((L * t * n + 1.0) / l);
    r.roots = {cplx(0.0, -om), cplx(0.0, om), cplx(w1, 0.0)};
    return r;
}

std::vector<double> model_characteristic(const ModelKind& model, double Lambda, double rho_cv) {
    struct V {
        double L;
        double rc;
        std::vector<double> operator()(const Fourier& m) const { return {1.0, L * m.kappa}; }
        std::vector<double> operator()(const MCV& m) const { return {m.tau, 1.0, L * m.kappa}; }
        std::vector<double> operator()(const GNIII& m) const { return {1.0, L * m.kappa, L * m.xi}; }
        std::vector<double> operator()(const Jeffreys& m) const {
            return {m.tau, 1.0 + L * m.tau * m.zeta, L * m.kappa};
        }
        std::vector<double> operator()(const Quintanilla& m) const {
            return {m.tau, 1.0, L * m.kappa, L * m.xi};
        }
        std::vector<double> operator()(const Burgers& m) const {
            return {m.lambda, m.tau, 1.0 + L * m.tau * m.zeta, L * m.kappa};
        }
        std::vector<double> operator()(const LSO& m) const {
            return characteristic_cubic(m.params, Lambda_raw).descending();
        }
        double Lambda_raw;
    };
    if (!(rho_cv > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    auto c = std::visit(V{Lambda / rho_cv, rho_cv, Lambda}, model);
    while (c.size() > 1 && c.front() == 0.0) c.erase(c.begin());
    return c;
}

StabilityVerdict mode_verdict(const ModelKind& model, double Lambda, double rho_cv) {
    return hurwitz_verdict(model_characteristic(model, Lambda, rho_cv));
}

}  // namespace heatrate
