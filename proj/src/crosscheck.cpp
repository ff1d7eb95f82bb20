#include "heatrate/crosscheck.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heatrate {

namespace {

double uni(Rng& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

double min_eig(const Eigen::Matrix4d& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

std::string format_items(const std::vector<int>& items) {
    std::string s = "{";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + std::to_string(items[i]);
    return s + "}";
}

CheckResult check_classifier(Rng& rng, int per_item, int negative_points, const FaultInjection& fault) {
    CheckResult r{"classifier", true, "", 0.0, 0};
    std::string bad;
    for (int item = 1; item <= 9; ++item) {
        int missed = 0, not_psd = 0;
        for (int i = 0; i < per_item; ++i) {
            const auto s = sample_item(item, rng);
            ++r.cases;
            if (!classify(s.params).matched(item)) ++missed;
            QuadForm4 A = build_A(s.params, coeffs_for_item(item, s.params, s.free));
            if (fault.corrupt_A) A.set(0, 0, A(0, 0) - 1.0 - A.frobenius());
            const double rel = min_eig(A.matrix()) / std::max(1.0, A.frobenius());
            r.worst = std::min(r.worst, rel);
            if (!(min_eig(A.matrix()) >= -1e-10 * A.frobenius())) ++not_psd;
        }
        if (missed || not_psd)
            bad += " item " + std::to_string(item) + ": " + std::to_string(missed) + " unmatched, " +
                   std::to_string(not_psd) + " not PSD;";
    }
    int feasible = 0;
    for (int i = 0; i < negative_points; ++i) {
        const auto cls = classify(sample_negative_mu(rng));
        ++r.cases;
        if (!cls.infeasible || !cls.search || cls.search->feasible) ++feasible;
    }
    if (feasible) bad += " " + std::to_string(feasible) + " mu<0 points not infeasible;";
    r.passed = bad.empty();
    r.detail = r.passed ? "items 1-9 matched and PSD, worst relative eigenvalue " + num(r.worst) +
                              "; all mu<0 points infeasible"
                        : bad;
    return r;
}

CheckResult check_psd_equivalence(Rng& rng, long count, const FaultInjection& fault) {
    CheckResult r{"psd", true, "", 0.0, 0};
    const double tol = 1e-10;
    long disagree = 0, skipped = 0, eigen_band_only = 0;
    for (long i = 0; i < count; ++i) {
        Eigen::Matrix4d G;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) G(a, b) = uni(rng, -1.0, 1.0);
        const Eigen::Matrix4d Q = Eigen::HouseholderQR<Eigen::Matrix4d>(G).householderQ();
        Eigen::Vector4d ev;
        const double shift = uni(rng, 0.0, 1.0) < 0.5 ? 0.0 : -0.5;
        const double mag = std::pow(10.0, uni(rng, -2.0, 2.0));
        for (int a = 0; a < 4; ++a) ev[a] = mag * (uni(rng, 0.0, 1.0) + shift);
        Eigen::Matrix4d M = Q * ev.asDiagonal() * Q.transpose();
        M = 0.5 * (M + M.transpose());
        const QuadForm4 A = QuadForm4::from_matrix(M);
        QuadForm4 tested = A;
        if (fault.corrupt_A) tested.set(0, 0, -A(0, 0) - 1.0);
        const double lo = min_eig(A.matrix());
        const double f = A.frobenius();
        if (std::abs(lo) <= tol * std::max(1.0, f)) {
            ++skipped;
            continue;
        }
        // The minors test has its own +-tol band: a minor inside it decides nothing exactly.
        const auto m = principal_minors(A);
        bool minor_band = false;
        auto near = [&](double v, int order) {
            minor_band = minor_band || std::abs(v) <= tol * std::max(1.0, std::pow(f, order));
        };
        for (double v : m.order1) near(v, 1);
        for (double v : m.order2) near(v, 2);
        for (double v : m.order3) near(v, 3);
        near(m.det, 4);
        const bool mismatch = is_psd(tested) != (lo >= 0.0);
        if (minor_band) {
            ++skipped;
            if (mismatch) ++eigen_band_only;
            continue;
        }
        ++r.cases;
        if (mismatch) ++disagree;
    }
    r.passed = disagree == 0;
    r.worst = static_cast<double>(disagree);
    r.detail = std::to_string(r.cases) + " matrices, " + std::to_string(disagree) + " disagreements, " +
               std::to_string(skipped) + " in the marginal band (" + std::to_string(eigen_band_only) +
               " of them differ: minors within tol of zero)";
    return r;
}

CheckResult check_hurwitz_roots(Rng& rng, long count) {
    CheckResult r{"hurwitz", true, "", 0.0, 0};
    long disagree = 0, bad_residual = 0, skipped = 0;
    for (long i = 0; i < count; ++i) {
        CubicCoeffs c;
        const bool positive = uni(rng, 0.0, 1.0) < 0.5;
        const double lo = positive ? 0.0 : -1.0;
        c.c3 = uni(rng, 0.05, 1.0) * (positive || uni(rng, 0.0, 1.0) < 0.5 ? 1.0 : -1.0);
        c.c2 = uni(rng, lo, 1.0) * (c.c3 > 0 ? 1.0 : -1.0);
        c.c1 = uni(rng, lo, 1.0) * (c.c3 > 0 ? 1.0 : -1.0);
        c.c0 = uni(rng, lo, 1.0) * (c.c3 > 0 ? 1.0 : -1.0);
        const double s = std::pow(10.0, uni(rng, -3.0, 3.0));
        c = {c.c3 * s, c.c2 * s, c.c1 * s, c.c0 * s};
        const auto roots = mode_roots(c);
        const double cmax = std::max({std::abs(c.c3), std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)});
        bool marginal = false, unstable = false;
        for (const auto& w : roots) {
            const double m = std::max(1.0, std::abs(w));
            const double res = std::abs(polyval(c.descending(), w)) / (cmax * m * m * m);
            r.worst = std::max(r.worst, res);
            if (res > 1e-10) ++bad_residual;
            if (std::abs(w.real()) <= 1e-9 * m) marginal = true;
            if (w.real() > 0) unstable = true;
        }
        if (marginal) {
            ++skipped;
            continue;
        }
        ++r.cases;
        const auto v = routh_hurwitz(c);
        const bool stable = v.status == StabilityStatus::Stable;
        if (stable == unstable || v.status == StabilityStatus::Marginal) ++disagree;
    }
    r.passed = disagree == 0 && bad_residual == 0;
    r.detail = std::to_string(r.cases) + " cubics, " + std::to_string(disagree) + " verdict disagreements, " +
               std::to_string(bad_residual) + " residual violations (worst " + num(r.worst) + "), " +
               std::to_string(skipped) + " marginal";
    return r;
}

std::vector<ModelCase> residual_cases(Rng& rng) {
    std::vector<ModelCase> out;
    const double k = uni(rng, 0.2, 3.0), t = uni(rng, 0.1, 3.0);
    out.push_back({"Fourier", Fourier{k}, std::nullopt, {}});
    out.push_back({"MCV", MCV{t, k}, std::nullopt, {}});
    out.push_back({"GNIII", GNIII{uni(rng, 0.2, 3.0), k}, std::nullopt, {}});
    out.push_back({"Jeffreys/first", Jeffreys{t, k, uni(rng, 0.0, 3.0)}, std::nullopt, {JeffreysBranch::First}});
    out.push_back({"Jeffreys/second", Jeffreys{t, k, k * uni(rng, 0.0, 0.95)}, std::nullopt, {JeffreysBranch::Second}});
    const double xi = uni(rng, 0.2, 3.0);
    out.push_back({"Quintanilla", Quintanilla{t, xi, t * xi + uni(rng, 0.1, 3.0)}, std::nullopt, {}});
    const double l = uni(rng, 0.1, 3.0), z = uni(rng, 0.1, 3.0);
    out.push_back({"Burgers", Burgers{l, t, uni(rng, 0.0, 1.0) * t * t * z / l, z}, std::nullopt, {}});
    out.push_back({"Burgers/kappa=0", Burgers{l, t, 0.0, z}, std::nullopt, {}});
    const auto s = sample_item(1, rng);
    out.push_back({"LSO/item1", LSO{s.params}, coeffs_for_item(1, s.params), {}});
    return out;
}

CheckResult check_residuals(Rng& rng, int states_per_model) {
    CheckResult r{"residual", true, "", 0.0, 0};
    std::string bad;
    for (const auto& mc : residual_cases(rng)) {
        int fails = 0;
        for (int i = 0; i < states_per_model; ++i) {
            const auto st = sample_state(rng, 3);
            const auto terms = clausius_duhem_terms(mc.model, st, mc.coeffs, mc.options);
            const double rel = std::abs(terms.residual) / std::max(terms.scale, 1e-300);
            r.worst = std::max(r.worst, rel);
            ++r.cases;
            if (std::abs(terms.residual) > 1e-10 * terms.scale) ++fails;
        }
        if (fails) bad += " " + mc.label + ": " + std::to_string(fails) + " states;";
    }
    r.passed = bad.empty();
    r.detail = r.passed ? std::to_string(r.cases) + " states, worst relative residual " + num(r.worst) : bad;
    return r;
}

InitialData parabola_data(const Domain1D& d, double flux_amplitude) {
    const double L = d.length, env = d.theta_env, a = flux_amplitude;
    InitialData ic;
    ic.theta0 = [=](double x) { return env + x * (L - x); };
    ic.q0 = [=](double x) { return a * std::cos(M_PI * x / L); };
    ic.qdot0 = [](double) { return 0.0; };
    return ic;
}

double decay_time(const ModelKind& model, const Domain1D& d, double rho_cv) {
    const auto mode = eigen_modes(d, 1)[0];
    double rho = rho_cv;
    if (auto* m = std::get_if<LSO>(&model)) rho = m->params.rho_cv;
    const auto roots = polynomial_roots(model_characteristic(model, mode.Lambda, rho));
    double top = -INFINITY;
    for (const auto& w : roots) top = std::max(top, w.real());
    if (!(top < 0)) throw Error(ErrorCode::UnstableParameters, "first mode does not decay");
    return -1.0 / top;
}

double spectral_fd_distance(const ModelKind& model, const Domain1D& d, const InitialData& ic, double horizon,
                            int modes, int grid, int n_times, double rho_cv) {
    std::vector<double> times;
    for (int i = 1; i <= n_times; ++i) times.push_back(horizon * i / n_times);
    FdOptions fo;
    fo.rho_cv = rho_cv;
    const auto fd = fd_reference(model, d, ic, times, grid, fo);
    SimulateOptions so;
    so.rho_cv = rho_cv;
    so.X = fd.X;
    const auto sp = simulate(model, d, ic, times, modes, so);
    const Eigen::MatrixXd env = Eigen::MatrixXd::Constant(fd.theta.rows(), fd.theta.cols(), d.theta_env);
    return relative_l2(sp.theta - env, fd.theta - env);
}

std::vector<std::pair<std::string, ModelKind>> stable_models() {
    MaterialParams p;
    p.lambda = 0.5;
    p.tau = 1.0;
    p.mu = 1.0;
    p.nu = 1.0;
    p.kappa = 1.0;
    return {{"LSO", LSO{p}},
            {"Burgers", Burgers{0.5, 1.0, 1.0, 1.0}},
            {"Quintanilla", Quintanilla{0.5, 1.0, 1.0}},
            {"Jeffreys", Jeffreys{1.0, 1.0, 0.5}},
            {"MCV", MCV{0.25, 1.0}},
            {"GNIII", GNIII{1.0, 1.0}},
            {"Fourier", Fourier{1.0}}};
}

CheckResult check_spectral_fd(int modes, int grid, const std::vector<std::pair<std::string, ModelKind>>& models) {
    CheckResult r{"spectral_fd", true, "", 0.0, 0};
    const Domain1D d{1.0, Boundary::Dirichlet, 0.0};
    const auto ic = parabola_data(d, 0.1);
    std::string detail;
    for (const auto& [name, m] : models) {
        const double T = 3.0 * decay_time(m, d);
        const double e = spectral_fd_distance(m, d, ic, T, modes, grid);
        r.worst = std::max(r.worst, e);
        ++r.cases;
        detail += " " + name + "=" + num(e);
        if (!(e < 1e-4)) r.passed = false;
    }
    r.detail = "relative L2:" + detail;
    return r;
}

Intersection conclusion_intersection(Rng& rng, int samples_per_item) {
    Intersection out;
    for (int item = 1; item <= 8; ++item) {
        bool pos = false, zero = false;
        for (int i = 0; i < samples_per_item; ++i) {
            const auto s = sample_item(item, rng, true);
            if (!stability_conditions(s.params).pass) continue;
            if (s.params.mu > 0) pos = true;
            if (s.params.mu == 0.0) zero = true;
        }
        if (pos) out.positive_mu.push_back(item);
        if (zero) out.zero_mu.push_back(item);
    }
    return out;
}

CheckResult check_intersection(Rng& rng, int samples_per_item) {
    CheckResult r{"intersection", true, "", 0.0, 8L * samples_per_item};
    const auto in = conclusion_intersection(rng, samples_per_item);
    const std::vector<int> want_pos{1, 2, 3, 8}, want_zero{4, 5};
    r.passed = in.positive_mu == want_pos && in.zero_mu == want_zero;
    r.detail = "mu>0: " + format_items(in.positive_mu) + " (expected " + format_items(want_pos) + "), mu=0: " +
               format_items(in.zero_mu) + " (expected " + format_items(want_zero) + ")";
    return r;
}

}  // namespace heatrate
