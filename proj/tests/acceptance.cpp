// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "heatrate/crosscheck.hpp"
#include "heatrate/stability.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace heatrate;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

double uni(Rng& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

MaterialParams lso(double l, double t, double m, double n, double k, double rc = 1.0) {
    MaterialParams p;
    p.lambda = l;
    p.tau = t;
    p.mu = m;
    p.nu = n;
    p.kappa = k;
    p.rho_cv = rc;
    return p;
}

Outcome from(const CheckResult& r) { return {r.passed, r.detail}; }

Outcome mu_bound_sharpness() {
    Rng rng(5005);
    int fails = 0;
    long sampled = 0;
    std::vector<double> grid;
    for (double x = 1e-6; x <= 1e6 * (1 + 1e-12); x *= std::pow(10.0, 0.02)) grid.push_back(x);
    for (int i = 0; i < 100; ++i) {
        const double l = uni(rng, 0.1, 5), t = uni(rng, 0.1, 5), n = uni(rng, 0.05, 5), k = uni(rng, 0.05, 5);
        const double sup = std::pow(std::sqrt(l * k) + t * std::sqrt(n), 2) / l;
        const auto region = mu_admissibility(l, t, n, k);
        if (std::abs(region.hi - sup) > 1e-14 * sup) ++fails;

        const auto below = lso(l, t, 0.99 * sup, n, k);
        if (!stability_conditions(below).pass || !positive_on_halfline(relp(below))) ++fails;
        const auto q = relp(below);
        for (double x : grid) {
            ++sampled;
            if (!(q(x) > 0) || routh_hurwitz(characteristic_cubic(below, x)).status != StabilityStatus::Stable) ++fails;
        }

        const auto above = lso(l, t, 1.01 * sup, n, k);
        const auto v = relp_violation(relp(above));
        if (stability_conditions(above).pass || !v || !(*v > 0) || !(relp(above)(*v) < 0) ||
            routh_hurwitz(characteristic_cubic(above, *v)).status != StabilityStatus::Unstable)
            ++fails;
    }
    // Closed-form branches: kappa = 0 gives mu <= tau^2 nu / lambda, nu = 0 gives mu <= kappa.
    int branch_fails = 0;
    for (int i = 0; i < 100; ++i) {
        const double l = uni(rng, 0.1, 5), t = uni(rng, 0.1, 5), n = uni(rng, 0.05, 5), k = uni(rng, 0.05, 5);
        const double b0 = t * t * n / l;
        const auto r0 = mu_admissibility(l, t, n, 0.0);
        if (r0.regime != Regime::KappaZero || r0.hi != b0 || !r0.hi_closed || !r0.contains(b0) || r0.contains(0.0))
            ++branch_fails;
        if (!stability_conditions(lso(l, t, b0, n, 0.0)).pass || stability_conditions(lso(l, t, 1.01 * b0, n, 0.0)).pass)
            ++branch_fails;
        const auto r1 = mu_admissibility(l, t, 0.0, k);
        if (r1.regime != Regime::NuZero || r1.hi != k || !r1.contains(k) || r1.contains(0.0)) ++branch_fails;
        if (!stability_conditions(lso(l, t, k, 0.0, k)).pass || stability_conditions(lso(l, t, 1.01 * k, 0.0, k)).pass)
            ++branch_fails;
    }
    return {fails == 0 && branch_fails == 0,
            "100 points, " + std::to_string(sampled) + " sampled eigenvalues up to 1e6, " + std::to_string(fails) +
                " failures; kappa=0 and nu=0 branches: " + std::to_string(branch_fails) + " failures"};
}

Outcome oscillatory() {
    Rng rng(6006);
    double worst_re = 0.0, worst_drift = 0.0, worst_freq = 0.0;
    int failures = 0;
    for (int i = 0; i < 20; ++i) {
        const auto p = i == 0 ? lso(1, 1, 0, 1, 1) : lso(uni(rng, 0.2, 3), uni(rng, 0.2, 3), 0, uni(rng, 0.2, 3), uni(rng, 0.2, 3));
        // Mode 1 of a domain of length pi has Lambda = 1.
        const Domain1D d{M_PI, Boundary::Dirichlet, 0.0};
        TuningResult tune;
        try {
            tune = oscillatory_tuning(p, 1.0);
        } catch (const Error&) {
            ++failures;
            continue;
        }
        const double Lt = 1.0 / p.rho_cv;
        const double w = std::sqrt((Lt * p.tau * p.nu + 1) / p.lambda);
        for (const auto& r : tune.roots)
            if (std::abs(r.imag()) > 0) worst_re = std::max(worst_re, std::abs(r.real()) / std::abs(r));

        MaterialParams q = p;
        q.mu = tune.mu;
        // T(0) = 1, T'(0) = 0, T''(0) = -w^2: the pure cosine of the oscillatory pair.
        const double norm = std::sqrt(2.0 / M_PI);
        const double c = -w * w * p.rho_cv / std::sqrt(M_PI / 2.0);
        InitialData ic;
        ic.theta0 = [=](double x) { return norm * std::sin(x); };
        ic.q0 = [](double) { return 0.0; };
        ic.qdot0 = [=](double x) { return c * std::cos(x); };
        const double period = 2 * M_PI / w;
        std::vector<double> times;
        for (int k = 0; k <= 20; ++k) times.push_back(0.5 * k * period);
        SimulateOptions so;
        so.X = {M_PI / 2};
        so.allow_unstable = true;  // the tuned mode is marginal by construction
        const auto f = simulate(LSO{q}, d, ic, times, 8, so);
        for (int k = 0; k <= 20; ++k) {
            const double T = f.theta(k, 0) / norm;
            worst_drift = std::max(worst_drift, std::abs(std::abs(T) - 1.0));
        }
        // Frequency from the zero crossings of the synthesized mode over ten periods.
        const auto& ev = f.modes[0].evolution;
        auto crossing = [&](double t0) {
            double a = t0 - 0.25 * period, b = t0 + 0.25 * period;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                if ((ev(a) > 0) == (ev(m) > 0))
                    a = m;
                else
                    b = m;
            }
            return 0.5 * (a + b);
        };
        const double first = crossing(0.25 * period), last = crossing(10.25 * period);
        const double w_est = 2 * M_PI * 10 / (last - first);
        worst_freq = std::max(worst_freq, std::abs(w_est - w) / w);
    }
    const bool ok = failures == 0 && worst_re <= 1e-12 && worst_drift < 1e-6 && worst_freq < 1e-8;
    return {ok, "20 parameter sets: max |Re w|/|w| " + num(worst_re) + ", amplitude drift " + num(worst_drift) +
                    ", frequency error " + num(worst_freq) + (failures ? ", tuning failures " + std::to_string(failures) : "")};
}

Outcome solver_cross_validation() {
    const auto fd = check_spectral_fd(64, 256, stable_models());
    // Analytic single-mode decay for the parabolic limit.
    const Domain1D d{M_PI, Boundary::Dirichlet, 0.0};
    InitialData ic;
    ic.theta0 = [](double x) { return std::sin(x); };
    ic.q0 = [](double) { return 0.0; };
    std::vector<double> times;
    for (int k = 0; k <= 10; ++k) times.push_back(0.4 * k);
    double worst = 0.0;
    for (const ModelKind& m : {ModelKind{Fourier{1.0}}, ModelKind{MCV{1e-8, 1.0}}}) {
        const auto f = simulate(m, d, ic, times, 64);
        for (std::size_t k = 0; k < times.size(); ++k)
            for (std::size_t j = 0; j < f.X.size(); ++j)
                worst = std::max(worst, std::abs(f.theta(k, j) - std::exp(-times[k]) * std::sin(f.X[j])));
    }
    return {fd.passed && worst < 1e-6, fd.detail + "; analytic single mode (Fourier, MCV tau=1e-8) max error " + num(worst)};
}

Outcome reductions() {
    const Domain1D d{1.0, Boundary::Dirichlet, 0.0};
    const auto ic = parabola_data(d, 0.1);
    std::vector<double> times;
    for (int k = 0; k <= 8; ++k) times.push_back(0.5 * k);
    const auto a = simulate(LSO{lso(0.5, 1, 1, 0.7, 0)}, d, ic, times, 64);
    const auto b = simulate(Burgers{0.5, 1, 1, 0.7}, d, ic, times, 64);
    const double e_burgers = relative_l2(a.theta, b.theta);
    const auto c = simulate(LSO{lso(0, 1, 1, 0.7, 2)}, d, ic, times, 64);
    const auto e = simulate(Jeffreys{1, 1, 0.7}, d, ic, times, 64);
    const double e_jeffreys = relative_l2(c.theta, e.theta);

    const auto gn = simulate(GNIII{1.0, 1.0}, d, ic, times, 64);
    std::vector<double> errs;
    for (double tau : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
        const auto q = simulate(Quintanilla{tau, 1.0, 1.0}, d, ic, times, 64);
        errs.push_back(relative_l2(q.theta, gn.theta));
    }
    std::string rates;
    bool first_order = true;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double r = std::log2(errs[i] / errs[i + 1]);
        rates += (i ? "," : "") + num(r);
        if (!(r > 0.9 && r < 1.1)) first_order = false;
    }
    return {e_burgers <= 1e-12 && e_jeffreys <= 1e-12 && first_order,
            "LSO(kappa=0) vs Burgers " + num(e_burgers) + ", LSO(lambda=0) vs Jeffreys " + num(e_jeffreys) +
                ", Quintanilla->GNIII errors " + num(errs.front()) + ".." + num(errs.back()) + " rates " + rates};
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Clausius-Duhem identity", 10,
         [] {
             Rng rng(1001);
             return from(check_residuals(rng, 1000));
         }},
        {2, "consistency table recipes", 120,
         [] {
             Rng rng(2002);
             return from(check_classifier(rng, 100, 100));
         }},
        {3, "PSD criterion equivalence", 30,
         [] {
             Rng rng(3003);
             return from(check_psd_equivalence(rng, 100000));
         }},
        {4, "Routh-Hurwitz vs roots", 10,
         [] {
             Rng rng(4004);
             return from(check_hurwitz_roots(rng, 10000));
         }},
        {5, "mu-bound sharpness", 10, mu_bound_sharpness},
        {6, "oscillatory tuning", 10, oscillatory},
        {7, "solver cross-validation", 120, solver_cross_validation},
        {8, "reduction chain", 60, reductions},
        {9, "conclusion cross-check", 30,
         [] {
             Rng rng(9009);
             return from(check_intersection(rng, 200));
         }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit_s;
        const bool ok = o.passed && in_time;
        if (!ok) ++failed;
        std::printf("%s %d %s: %s [%.2f s, limit %.0f s%s]\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
