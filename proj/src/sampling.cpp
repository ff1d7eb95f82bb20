#include "heatrate/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace heatrate {

namespace {

double uni(Rng& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }
double sign(Rng& r) { return uni(r, 0.0, 1.0) < 0.5 ? -1.0 : 1.0; }
double signed_mag(Rng& r, bool positive, double a, double b) { return (positive ? 1.0 : sign(r)) * uni(r, a, b); }

MaterialParams base(Rng& r) {
    MaterialParams p;
    p.theta_ref = uni(r, 0.5, 3.0);
    p.rho_cv = uni(r, 0.5, 2.0);
    p.kappa = uni(r, 0.1, 4.0);
    return p;
}

double pick(Rng& r, const Interval& iv) {
    if (iv.lo == iv.hi) return iv.lo;
    return iv.lo + (iv.hi - iv.lo) * uni(r, 0.02, 0.98);
}

bool sample9(Rng& r, bool physical, ItemSample& out) {
    MaterialParams p = base(r);
    const double th = p.theta_ref, k = p.kappa;
    const double t = signed_mag(r, physical, 0.1, 3.0);
    const double l = signed_mag(r, physical, 0.1, 3.0);
    const double b1 = (l > 0 ? 1.0 : -1.0) * uni(r, 0.05, 3.0);
    const double a2 = uni(r, -5.0, 5.0);
    if (!(l * (t * a2 - l * b1) > 0)) return false;
    const double rr = std::sqrt(b1 * (t * a2 - l * b1));
    const double am = (t * b1 + a2 - rr) / l, ap = (t * b1 + a2 + rr) / l;
    const double a1 = std::min(am, ap) + std::abs(ap - am) * uni(r, 0.05, 0.95);
    const double phi = (a1 * a2 - b1 * b1) / l;
    if (!(phi > 0)) return false;
    const double s = 2.0 * std::sqrt(k * l * b1 * phi * th);
    const double nm = k + (a2 - s) / (t * phi * th), np = k + (a2 + s) / (t * phi * th);
    const double nu = std::min(nm, np) + std::abs(np - nm) * uni(r, 0.0, 1.0);
    if (physical && nu < 0) return false;
    p.lambda = l;
    p.tau = t;
    p.nu = nu;
    p.mu = 1.0;
    const auto ivs = item_intervals(9, p, FreeChoice{a1, a2, b1});
    if (ivs.size() < 5) return false;
    const double lo = std::max({ivs[2].lo, ivs[3].lo, ivs[4].lo});
    const double hi = std::min({ivs[2].hi, ivs[3].hi, ivs[4].hi});
    if (!(lo < hi) || !(hi > 0)) return false;
    p.mu = std::max(lo, 0.0) + (hi - std::max(lo, 0.0)) * uni(r, 0.02, 0.98);
    const auto conds = item9_conditions(p, b1, a2, a1);
    for (const auto& c : conds)
        if (!c.value) return false;
    out.params = p;
    out.free = FreeChoice{a1, a2, b1};
    return true;
}

bool sample_decisive(int item, Rng& r, bool physical, ItemSample& out) {
    MaterialParams p = base(r);
    const double k = p.kappa;
    p.tau = signed_mag(r, physical, 0.1, 3.0);
    p.lambda = signed_mag(r, physical, 0.1, 3.0);
    const double t = p.tau;
    switch (item) {
    case 1: p.mu = p.nu = k; break;
    case 2:
        p.mu = k;
        p.nu = uni(r, 0.0, 1.0) < 0.1 ? 0.0 : uni(r, 0.05, 5.0);
        break;
    case 3: {
        const double x = (p.lambda > 0 ? 1.0 : -1.0) * uni(r, 0.1, 3.0);
        p.nu = k + x;
        if (physical && p.nu < 0) return false;
        p.mu = 1.0;
        const auto iv = item_intervals(3, p)[0];
        p.mu = pick(r, iv);
        break;
    }
    case 4:
        p.mu = 0.0;
        p.nu = k * (p.lambda + t * t) / (t * t);
        if (physical && p.nu < 0) return false;
        break;
    case 5: {
        p.mu = 0.0;
        p.nu = physical ? uni(r, 0.05, 5.0) : uni(r, -3.0, 5.0);
        const double top = t * t * p.nu / k;
        p.lambda = physical ? top * uni(r, 0.02, 1.0) : top - uni(r, 0.0, 5.0);
        if (p.lambda == 0.0) return false;
        break;
    }
    case 6:
    case 7: {
        p.mu = 0.0;
        const double sx = item == 6 ? (t > 0 ? 1.0 : -1.0) : (t > 0 ? -1.0 : 1.0);
        const double x = sx * uni(r, 0.1, 3.0);
        p.nu = k + x;
        if (physical && p.nu < 0) return false;
        if (std::abs(p.nu) < 1e-3) return false;
        p.lambda = -p.nu * x * t * t / (k * k);
        break;
    }
    case 8: {
        p.nu = physical ? uni(r, 0.0, 6.0) : uni(r, -3.0, 6.0);
        const double s = p.nu * (k - p.nu);
        if (s != 0.0) p.lambda = (s > 0 ? 1.0 : -1.0) * uni(r, 0.1, 3.0);
        if (physical && p.lambda < 0) return false;
        p.mu = 1.0;
        const auto iv = item_intervals(8, p)[0];
        p.mu = pick(r, iv);
        if (!(p.mu > 0)) return false;
        break;
    }
    default: throw Error(ErrorCode::InvalidArgument, "items are 1..9");
    }
    if (!item_matches(item, p)) return false;
    out.params = p;
    out.free = {};
    return true;
}

}  // namespace

ItemSample sample_item(int item, Rng& rng, bool physical) {
    if (item < 1 || item > 9) throw Error(ErrorCode::InvalidArgument, "items are 1..9");
    ItemSample s;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const bool ok = item == 9 ? sample9(rng, physical, s) : sample_decisive(item, rng, physical, s);
        if (ok) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "could not sample item " + std::to_string(item));
}

MaterialParams sample_negative_mu(Rng& rng) {
    MaterialParams p = base(rng);
    p.kappa = signed_mag(rng, false, 0.1, 4.0);
    p.lambda = signed_mag(rng, false, 0.1, 3.0);
    p.tau = uni(rng, -3.0, 3.0);
    p.nu = uni(rng, -3.0, 5.0);
    p.mu = -uni(rng, 0.05, 5.0);
    return p;
}

ThermalState sample_state(Rng& rng, int dim) {
    ThermalState s = ThermalState::zero(uni(rng, 0.5, 3.0), dim);
    auto v = [&] {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x[i] = uni(rng, -2.0, 2.0);
        return x;
    };
    s.q = v();
    s.q_dot = v();
    s.grad_theta = v();
    s.grad_theta_dot = v();
    s.q_ddot = v();
    s.grad_theta_ddot = v();
    return s;
}

}  // namespace heatrate
