// Table-driven LSO classification: parameter conditions, coefficient recipes and intervals per item.
#include "heatrate/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace heatrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEqTol = 1e-12;

// Equality for conditions the paper states as derived identities.
bool near(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= kEqTol * s;
}

struct P {
    double l, t, mu, nu, k, th, x;
    explicit P(const MaterialParams& p)
        : l(p.lambda), t(p.tau), mu(p.mu), nu(p.nu), k(p.kappa), th(p.theta_ref), x(p.nu - p.kappa) {}
};

Interval sorted_interval(std::string name, double a, double b, bool closed) {
    return Interval{std::move(name), std::min(a, b), std::max(a, b), closed, closed};
}

// mu interval of row 3.
Interval mu_interval_1(const P& q) {
    const double r = std::abs(q.t) * std::sqrt(q.x / q.l);
    const double s = std::sqrt(q.k);
    return sorted_interval("I1_mu", (s - r) * (s - r), (s + r) * (s + r), true);
}

// mu interval of row 8.
Interval mu_interval_2(const P& q) {
    const double r = std::abs(q.t) * std::sqrt(std::max(0.0, q.l * q.nu * (q.k - q.nu)));
    const double a = std::abs(q.l) * q.k;
    const double den = q.k * q.l * q.l;
    return sorted_interval("I2_mu", (r - a) * (r - a) / den, (r + a) * (r + a) / den, true);
}

// alpha2 interval of rows 1 and 2 (row 2 with nu = 0 collapses to a point).
Interval alpha2_interval_12(int item, const P& q) {
    if (item == 1) {
        const double e = q.l * q.l / (4.0 * q.k * q.th * q.t);
        return q.t > 0 ? Interval{"alpha2", e, kInf, true, false} : Interval{"alpha2", -kInf, e, false, true};
    }
    if (q.nu == 0.0) {
        const double v = q.l * q.l / (q.t * q.th * q.k);
        return Interval{"alpha2", v, v, true, true};
    }
    const double den = q.t * q.th * (q.k - q.nu) * (q.k - q.nu);
    const double sk = std::sqrt(q.k), sn = std::sqrt(q.nu);
    return sorted_interval("alpha2", q.l * q.l * (sk - sn) * (sk - sn) / den, q.l * q.l * (sk + sn) * (sk + sn) / den,
                           false);
}

// alpha2 interval of row 5.
Interval alpha2_interval_5(const P& q) {
    const double D = q.x * q.t * q.t * q.nu + q.l * q.k * q.k;
    const double disc = q.k * q.l * q.l * (q.t * q.t * q.nu - q.l * q.k);
    const double base = q.x * q.x * q.t * q.t * q.t * q.nu + q.l * q.k * q.k * q.t * (2 * q.k + 3 * q.x);
    const double w = 2 * q.k * q.k * std::sqrt(std::max(0.0, disc));
    const double den = q.th * D * D;
    return sorted_interval("I_alpha2", q.l * q.l * (base - w) / den, q.l * q.l * (base + w) / den, true);
}

// alpha2 half-lines of rows 6 and 7.
Interval alpha2_interval_67(int item, const P& q) {
    const double b = q.x * q.x * (3 * q.nu + q.k) * q.t * q.t * q.t / (4 * std::pow(q.k, 4) * q.th);
    return item == 6 ? Interval{"alpha2", -kInf, b, false, true} : Interval{"alpha2", b, kInf, true, false};
}

double default_in(const Interval& iv, double theta) {
    if (iv.bounded()) return 0.5 * (iv.lo + iv.hi);
    if (std::isfinite(iv.lo)) return iv.lo + std::max(std::abs(iv.lo), 1.0 / theta);
    if (std::isfinite(iv.hi)) return iv.hi - std::max(std::abs(iv.hi), 1.0 / theta);
    return 0.0;
}

void add(std::vector<Predicate>& v, std::string name, bool value) { v.push_back({std::move(name), value}); }

bool all_true(const std::vector<Predicate>& v) {
    return std::all_of(v.begin(), v.end(), [](const Predicate& p) { return p.value; });
}

// Parameter-level predicates of rows 9..16 (the remaining conditions involve free coefficients).
std::vector<Predicate> conditional_conditions(int item, const MaterialParams& p) {
    std::vector<Predicate> c;
    add(c, "kappa>0", p.kappa > 0);
    add(c, "mu>0", p.mu > 0);
    switch (item) {
    case 9: add(c, "tau!=0", p.tau != 0.0); break;
    case 10:
        add(c, "tau=0", p.tau == 0.0);
        add(c, "lambda<0", p.lambda < 0);
        break;
    case 11: break;
    case 12:
    case 13:
    case 15: add(c, "lambda<0", p.lambda < 0); break;
    case 14: add(c, "lambda<-tau^2/4", p.lambda < -p.tau * p.tau / 4); break;
    case 16: add(c, "lambda=-tau^2/4", p.tau != 0.0 && near(p.lambda, -p.tau * p.tau / 4)); break;
    default: break;
    }
    return c;
}

std::vector<std::string> coefficient_predicates(int item) {
    switch (item) {
    case 9: return {"lambda*beta1>0", "alpha2!=0", "lambda*(tau*alpha2-lambda*beta1)>0", "alpha1 in I_alpha1",
                    "nu in I2_nu", "mu in I3_mu & I4_mu & I5_mu"};
    case 10: return {"beta1<0", "alpha2!=0", "alpha1 in I_alpha1", "kappa>=alpha2^2/(4*lambda*beta1*phi*theta)",
                     "mu in I3_mu & I4_mu & I5_mu"};
    case 11: return {"lambda*beta1>0", "alpha2!=0", "lambda*(tau*alpha2-lambda*beta1)>=0",
                     "alpha1 solves d34=0", "lambda*kappa*beta1+(nu-kappa)*tau*alpha2>0",
                     "mu in I3_mu & I4_mu & I5_mu"};
    case 12: return {"beta1<0", "alpha1=0", "tau*alpha2-lambda*beta1<=0",
                     "lambda=-(beta1*tau-alpha2)^2/(4*beta1^2)",
                     "lambda*kappa*beta1+(nu-kappa)*tau*alpha2>0", "mu in I3_mu & I4_mu & I5_mu"};
    case 13: return {"beta1<0", "alpha2=0", "alpha1 in I1_alpha1", "nu in I2_nu", "mu in I3_mu & I5_mu & I6_mu"};
    case 14: return {"beta1<0", "alpha2=0", "alpha1=0", "nu in I2_nu", "mu in I3_mu & I5_mu & I6_mu"};
    case 15: return {"beta1<0", "alpha2=0", "alpha1 solves d34=0", "mu in I3_mu & I5_mu & I6_mu"};
    case 16: return {"beta1<0", "alpha2=0", "alpha1=0", "mu in I3_mu & I5_mu & I6_mu"};
    default: return {};
    }
}

struct Item9Data {
    double phi, G;
    Interval alpha1, nu, mu3, mu4, mu5;
};

Item9Data item9_data(const P& q, double b1, double a2, double a1) {
    Item9Data d{};
    const double l = q.l, t = q.t, k = q.k, th = q.th, x = q.x;
    const double r = std::sqrt(std::max(0.0, b1 * (t * a2 - l * b1)));
    d.alpha1 = sorted_interval("I_alpha1", (t * b1 + a2 - r) / l, (t * b1 + a2 + r) / l, true);
    d.phi = (a1 * a2 - b1 * b1) / l;
    const double phi = d.phi;
    const double sq = 2.0 * std::sqrt(std::max(0.0, k * l * b1 * phi * th));
    d.nu = sorted_interval("I2_nu", k + (a2 - sq) / (t * phi * th), k + (a2 + sq) / (t * phi * th), true);
    d.G = k * l * b1 + x * t * a2;
    const double sG = std::sqrt(std::max(0.0, th * d.G));
    d.mu3 = sorted_interval("I3_mu", (sG - std::abs(l)) * (sG - std::abs(l)) / (l * b1 * th),
                            (sG + std::abs(l)) * (sG + std::abs(l)) / (l * b1 * th), true);
    const double H = std::sqrt(std::max(0.0, (t * a2 - l * b1) * d.G / l));
    const double L4 = std::sqrt(std::max(0.0, l * l * k * phi));
    d.mu4 = sorted_interval("I4_mu", (L4 - H) * (L4 - H) / (a2 * a2), (L4 + H) * (L4 + H) / (a2 * a2), true);
    const double Pc = phi / (8 * l * l * th) * (x * th * b1 * t * t + x * t * th * (a2 - l * a1) + l * (l + 2 * k * b1 * th)) +
                      (b1 * (t * a2 - l * b1) - a2 * a2) / (8 * l * l * th);
    const double d34 = phi - (l * a1 - t * b1 + a2) * (l * a1 - t * b1 + a2) / (4 * l * l);
    // Discriminant of the order-3 minor as a quadratic in mu (one quarter of the printed expression).
    const double delta = d34 / (4 * l * l * th * th) * (4 * k * l * b1 * phi * th - (a2 - x * t * phi * th) * (a2 - x * t * phi * th)) / 4.0;
    const double sd = std::sqrt(std::max(0.0, delta));
    d.mu5 = sorted_interval("I5_mu", 4 * l * (Pc - sd) / (b1 * phi), 4 * l * (Pc + sd) / (b1 * phi), true);
    return d;
}

}  // namespace

bool is_decisive_item(int item) { return item >= 1 && item <= 8; }

bool conclusion_admissible(int item) {
    return item == 1 || item == 2 || item == 3 || item == 8 || item == 4 || item == 5;
}

std::vector<Predicate> item_conditions(int item, const MaterialParams& p) {
    const P q(p);
    std::vector<Predicate> c;
    add(c, "kappa>0", q.k > 0);
    switch (item) {
    case 1:
        add(c, "mu=kappa", near(q.mu, q.k));
        add(c, "nu=kappa", near(q.nu, q.k));
        add(c, "tau!=0", q.t != 0.0);
        break;
    case 2:
        add(c, "mu=kappa", near(q.mu, q.k));
        add(c, "nu>=0", q.nu >= 0);
        add(c, "nu!=kappa", !near(q.nu, q.k));
        add(c, "tau!=0", q.t != 0.0);
        break;
    case 3: {
        add(c, "tau!=0", q.t != 0.0);
        const bool sign = q.l * q.x > 0;
        add(c, "lambda*(nu-kappa)>0", sign);
        add(c, "mu in I1_mu", sign && q.k > 0 && mu_interval_1(q).contains(q.mu, kEqTol));
        break;
    }
    case 4:
        add(c, "mu=0", q.mu == 0.0);
        add(c, "tau!=0", q.t != 0.0);
        add(c, "nu=kappa*(lambda+tau^2)/tau^2", q.t != 0.0 && near(q.nu, q.k * (q.l + q.t * q.t) / (q.t * q.t)));
        break;
    case 5:
        add(c, "mu=0", q.mu == 0.0);
        add(c, "lambda<=tau^2*nu/kappa", q.k > 0 && q.l <= q.t * q.t * q.nu / q.k);
        add(c, "lambda!=-nu*(nu-kappa)*tau^2/kappa^2",
            q.k > 0 && !near(q.l, -q.nu * q.x * q.t * q.t / (q.k * q.k)));
        break;
    case 6:
    case 7:
        add(c, "mu=0", q.mu == 0.0);
        add(c, "nu!=0", q.nu != 0.0);
        add(c, "nu!=kappa", !near(q.nu, q.k));
        add(c, "tau!=0", q.t != 0.0);
        add(c, item == 6 ? "(nu-kappa)*tau>0" : "(nu-kappa)*tau<0", item == 6 ? q.x * q.t > 0 : q.x * q.t < 0);
        add(c, "lambda=-nu*(nu-kappa)*tau^2/kappa^2",
            q.k > 0 && near(q.l, -q.nu * q.x * q.t * q.t / (q.k * q.k)));
        break;
    case 8: {
        add(c, "tau!=0", q.t != 0.0);
        const bool sign = q.l * q.nu * (q.k - q.nu) >= 0;
        add(c, "lambda*nu*(kappa-nu)>=0", sign);
        add(c, "nu!=kappa", !near(q.nu, q.k));
        add(c, "mu!=0", q.mu != 0.0);
        add(c, "mu in I2_mu", sign && q.k > 0 && mu_interval_2(q).contains(q.mu, kEqTol));
        break;
    }
    default: throw Error(ErrorCode::InvalidArgument, "decisive items are 1..8");
    }
    return c;
}

bool item_matches(int item, const MaterialParams& p) { return all_true(item_conditions(item, p)); }

std::vector<Predicate> item9_conditions(const MaterialParams& p, double beta1, double alpha2, double alpha1) {
    const P q(p);
    std::vector<Predicate> c = conditional_conditions(9, p);
    add(c, "lambda*beta1>0", q.l * beta1 > 0);
    add(c, "alpha2!=0", alpha2 != 0.0);
    const bool a22 = q.l * (q.t * alpha2 - q.l * beta1) > 0;
    add(c, "lambda*(tau*alpha2-lambda*beta1)>0", a22);
    if (!all_true(c)) return c;
    const auto d = item9_data(q, beta1, alpha2, alpha1);
    add(c, "alpha1 in I_alpha1", d.alpha1.contains(alpha1, kEqTol));
    add(c, "phi>0", d.phi > 0);
    add(c, "nu in I2_nu", d.phi > 0 && d.nu.contains(q.nu, kEqTol));
    add(c, "lambda*kappa*beta1+(nu-kappa)*tau*alpha2>0", d.G > 0);
    const bool mu_ok = d.mu3.contains(q.mu, kEqTol) && d.mu4.contains(q.mu, kEqTol) && d.mu5.contains(q.mu, kEqTol);
    add(c, "mu in I3_mu & I4_mu & I5_mu", mu_ok);
    return c;
}

std::vector<Interval> item_intervals(int item, const MaterialParams& p, const FreeChoice& free) {
    const P q(p);
    switch (item) {
    case 1:
    case 2: return {alpha2_interval_12(item, q)};
    case 3: return {mu_interval_1(q)};
    case 5: return {alpha2_interval_5(q)};
    case 6:
    case 7: return {alpha2_interval_67(item, q)};
    case 8: return {mu_interval_2(q)};
    case 9: {
        if (!free.beta1 || !free.alpha2) return {};
        const double a1 = free.alpha1.value_or(0.0);
        const auto d = item9_data(q, *free.beta1, *free.alpha2, a1);
        if (!free.alpha1) return {d.alpha1};
        return {d.alpha1, d.nu, d.mu3, d.mu4, d.mu5};
    }
    default: return {};
    }
}

FreeEnergyCoeffs coeffs_for_item(int item, const MaterialParams& p, const FreeChoice& free) {
    if (item < 1 || item > 9) throw Error(ErrorCode::InvalidArgument, "recipes exist for items 1..9");
    if (p.lambda == 0.0) throw Error(ErrorCode::ZeroLambda, "recipes need lambda != 0");
    const P q(p);
    const double l = q.l, t = q.t, k = q.k, nu = q.nu, th = q.th, x = q.x, mu = q.mu;
    FreeEnergyCoeffs c;

    auto pick_alpha2 = [&](const Interval& iv) {
        const double a2 = free.alpha2 ? *free.alpha2 : default_in(iv, th);
        if (!iv.contains(a2, kEqTol)) {
            std::ostringstream os;
            os << "alpha2=" << a2 << " outside " << iv.name << " [" << iv.lo << ", " << iv.hi << "]";
            throw Error(ErrorCode::FreeCoeffOutOfRange, os.str());
        }
        return a2;
    };

    if (item <= 8 && !item_matches(item, p)) {
        std::string failed;
        for (const auto& pr : item_conditions(item, p))
            if (!pr.value) failed += (failed.empty() ? "" : ", ") + pr.name;
        throw Error(ErrorCode::ItemConditionViolated, "item " + std::to_string(item) + ": " + failed);
    }

    switch (item) {
    case 1:
    case 2: {
        const double a2 = pick_alpha2(alpha2_interval_12(item, q));
        c.alpha2 = a2;
        c.beta1 = t * a2 / l;
        c.beta2 = (nu * t * t + k * l) * a2 / (l * l);
        c.beta3 = t * nu * a2 / l;
        c.alpha1 = (t * t + l) * a2 / (l * l);
        c.alpha3 = (l * k * k + t * t * nu * nu) * a2 / (l * l);
        break;
    }
    case 3: {
        const double den = t * x * th;
        c.beta1 = 0.0;
        c.beta2 = k * l / den;
        c.beta3 = l / th;
        c.alpha1 = l / den;
        c.alpha2 = l * l / den;
        c.alpha3 = (k * k * l + t * t * x * x) / den;
        break;
    }
    case 4:
        c.beta1 = 0.0;
        c.beta2 = t / th;
        c.beta3 = l / th;
        c.alpha1 = t / (k * th);
        c.alpha2 = l * t / (k * th);
        c.alpha3 = k * (l + t * t) / (t * th);
        break;
    case 5:
    case 6:
    case 7: {
        const double a2 = pick_alpha2(item == 5 ? alpha2_interval_5(q) : alpha2_interval_67(item, q));
        c.alpha2 = a2;
        c.beta1 = (l * l - t * a2 * x * th) / (k * l * th);
        c.beta2 = t / th;
        c.beta3 = l / th;
        c.alpha1 = (t * a2 * x * x * th - (nu - 2 * k) * l * l) * t / (k * k * l * l * th);
        c.alpha3 = t * nu / th;
        break;
    }
    case 8: {
        const double km = k - nu;
        c.beta1 = l / (mu * th);
        c.beta2 = k * l / (t * km * th);
        c.beta3 = 0.0;
        c.alpha1 = (t * t * km * km + k * l * mu) / (mu * t * k * km * th);
        c.alpha2 = k * l * l / (mu * t * km * th);
        c.alpha3 = k * k * l / (t * km * th);
        break;
    }
    case 9: {
        if (!free.beta1 || !free.alpha2 || !free.alpha1)
            throw Error(ErrorCode::FreeCoeffOutOfRange, "item 9 needs explicit beta1, alpha2 and alpha1");
        const double b1 = *free.beta1, a2 = *free.alpha2, a1 = *free.alpha1;
        const auto conds = item9_conditions(p, b1, a2, a1);
        std::string failed;
        for (const auto& pr : conds)
            if (!pr.value) failed += (failed.empty() ? "" : ", ") + pr.name;
        if (!failed.empty()) {
            const bool param_fail = !all_true(conditional_conditions(9, p));
            throw Error(param_fail ? ErrorCode::ItemConditionViolated : ErrorCode::FreeCoeffOutOfRange,
                        "item 9: " + failed);
        }
        c.beta1 = b1;
        c.alpha2 = a2;
        c.alpha1 = a1;
        c.beta2 = (l * k * a1 + t * x * b1) / l;
        c.beta3 = k * b1 + t * x * a2 / l;
        c.alpha3 = k * k * a1 + 2 * k * t * x * b1 / l + t * t * x * x * a2 / (l * l);
        break;
    }
    default: break;
    }
    c = apply_constraints(c, k);
    const auto rep = psd_report(build_A(p, c), 1e-8);
    if (!rep.eigen_psd) {
        std::ostringstream os;
        os << "item " << item << " recipe is not PSD at these parameters (relative min eigenvalue "
           << rep.relative_min_eigenvalue << ")";
        throw Error(ErrorCode::ItemConditionViolated, os.str());
    }
    return c;
}

LsoClassification classify(const MaterialParams& p, const ClassifyOptions& opt) {
    const auto v = validate_params(p);
    if (v.zero.lambda)
        throw Error(ErrorCode::ExcludedDegenerate, "lambda = 0: the model reduces to Jeffreys; use reduce()");
    if (v.zero.kappa)
        throw Error(ErrorCode::ExcludedDegenerate, "kappa = 0: the model reduces to Burgers; use reduce()");

    LsoClassification out;
    for (int item = 1; item <= 8; ++item) {
        auto conds = item_conditions(item, p);
        if (!all_true(conds)) continue;
        ItemRecipe r;
        r.item = item;
        r.status = ItemStatus::Consistent;
        r.conditions = std::move(conds);
        r.intervals = item_intervals(item, p);
        r.dynamically_admissible = conclusion_admissible(item);
        try {
            r.coeffs = coeffs_for_item(item, p);
            r.psd_verified = true;
        } catch (const Error&) {
            r.psd_verified = false;
        }
        out.recipes.push_back(std::move(r));
        out.matched_items.push_back(item);
    }

    std::vector<ItemRecipe> conditional;
    for (int item = 9; item <= 16; ++item) {
        auto conds = conditional_conditions(item, p);
        if (!all_true(conds)) continue;
        ItemRecipe r;
        r.item = item;
        r.status = ItemStatus::ConditionallyConsistent;
        r.conditions = std::move(conds);
        r.coefficient_predicates = coefficient_predicates(item);
        r.dynamically_admissible = conclusion_admissible(item);
        conditional.push_back(std::move(r));
    }

    const bool need_search = out.matched_items.empty() || !conditional.empty();
    if (opt.run_search && need_search) out.search = feasibility_search(p, opt.search);

    for (auto& r : conditional) {
        const bool confirmed = out.search && out.search->feasible;
        if (confirmed) {
            r.coeffs = out.search->coeffs;
            r.psd_verified = true;
            out.matched_items.push_back(r.item);
            out.recipes.push_back(std::move(r));
        } else if (out.search) {
            out.rejected_conditional.push_back(r.item);
        } else {
            out.matched_items.push_back(r.item);
            out.recipes.push_back(std::move(r));
        }
    }

    out.infeasible = out.matched_items.empty() && (!out.search || !out.search->feasible);
    return out;
}

}  // namespace heatrate
