// Method-of-lines reference: staggered second-order differences, Dormand-Prince 5(4) in time.
#include "heatrate/models.hpp"
#include "heatrate/solver.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace heatrate {

namespace {

using State = std::vector<double>;
namespace ode = boost::numeric::odeint;

// Grid operators. Temperatures live on nt points, fluxes on nf faces.
struct Grid {
    Boundary bc;
    int nt = 0, nf = 0;
    double h = 0.0;
    std::vector<double> Xt, Xf;

    // g = G T on faces.
    void grad(const double* T, double* g) const {
        if (bc == Boundary::Dirichlet) {
            // nodes 1..n-1 unknown, walls held at zero deviation; faces i+1/2, i = 0..n-1
            for (int i = 0; i < nf; ++i) {
                const double left = i == 0 ? 0.0 : T[i - 1];
                const double right = i == nf - 1 ? 0.0 : T[i];
                g[i] = (right - left) / h;
            }
        } else {
            // interior faces j = 1..n-1 between cells j-1 and j
            for (int j = 0; j < nf; ++j) g[j] = (T[j + 1] - T[j]) / h;
        }
    }

    // D q on temperature points.
    void div(const double* q, double* out) const {
        if (bc == Boundary::Dirichlet) {
            for (int i = 0; i < nt; ++i) out[i] = (q[i + 1] - q[i]) / h;
        } else {
            for (int i = 0; i < nt; ++i) {
                const double left = i == 0 ? 0.0 : q[i - 1];
                const double right = i == nt - 1 ? 0.0 : q[i];
                out[i] = (right - left) / h;
            }
        }
    }
};

Grid make_grid(const Domain1D& d, int n) {
    Grid g;
    g.bc = d.boundary;
    g.h = d.length / n;
    if (d.boundary == Boundary::Dirichlet) {
        g.nt = n - 1;
        g.nf = n;
        for (int i = 1; i < n; ++i) g.Xt.push_back(i * g.h);
        for (int i = 0; i < n; ++i) g.Xf.push_back((i + 0.5) * g.h);
    } else {
        g.nt = n;
        g.nf = n - 1;
        for (int i = 0; i < n; ++i) g.Xt.push_back((i + 0.5) * g.h);
        for (int j = 1; j < n; ++j) g.Xf.push_back(j * g.h);
    }
    return g;
}

// Coefficients of the first-order system
//   rho c T' = -D q
//   lead q'' = -c1 q' - q - c0 G T + (cq / rho c) G D q + (cp / rho c) G D q'      (order 2)
//   lead q'  = -q - c0 G T + (cq / rho c) G D q                                   (order 1)
//   q = -c0 G T                                                                   (order 0)
// Quintanilla and GNIII have no q term; that is encoded by has_q = false.
struct Coeffs {
    int order = 0;
    double lead = 1.0, c1 = 0.0, c0 = 0.0, cq = 0.0, cp = 0.0;
    bool has_q = true;
};

Coeffs coeffs_of(const ModelKind& m) {
    struct V {
        Coeffs operator()(const Fourier& x) const { return {0, 1.0, 0.0, x.kappa, 0.0, 0.0, true}; }
        Coeffs operator()(const MCV& x) const { return {1, x.tau, 0.0, x.kappa, 0.0, 0.0, true}; }
        Coeffs operator()(const Jeffreys& x) const {
            return {1, x.tau, 0.0, x.kappa, x.tau * x.zeta, 0.0, true};
        }
        Coeffs operator()(const GNIII& x) const { return {1, 1.0, 0.0, x.xi, x.kappa, 0.0, false}; }
        Coeffs operator()(const Quintanilla& x) const { return {2, x.tau, 1.0, x.xi, x.kappa, 0.0, false}; }
        Coeffs operator()(const Burgers& x) const {
            return {2, x.lambda, x.tau, x.kappa, x.tau * x.zeta, 0.0, true};
        }
        Coeffs operator()(const LSO& x) const {
            const auto& p = x.params;
            return {2, p.lambda, p.tau, p.mu, p.tau * p.nu, p.lambda * p.kappa, true};
        }
    };
    return std::visit(V{}, m);
}

struct System {
    Grid g;
    Coeffs c;
    double rc;
    mutable std::vector<double> gt, dq, gdq, dp, gdp;

    void operator()(const State& y, State& dy, double) const {
        const int nt = g.nt, nf = g.nf;
        const double* T = y.data();
        g.grad(T, gt.data());
        if (c.order == 0) {
            for (int i = 0; i < nf; ++i) gdq[i] = -c.c0 * gt[i];  // flux
            g.div(gdq.data(), dq.data());
            for (int i = 0; i < nt; ++i) dy[i] = -dq[i] / rc;
            return;
        }
        const double* q = T + nt;
        g.div(q, dq.data());
        for (int i = 0; i < nt; ++i) dy[i] = -dq[i] / rc;
        g.grad(dq.data(), gdq.data());
        if (c.order == 1) {
            for (int i = 0; i < nf; ++i) {
                const double qt = c.has_q ? q[i] : 0.0;
                dy[nt + i] = (-qt - c.c0 * gt[i] + c.cq / rc * gdq[i]) / c.lead;
            }
            return;
        }
        const double* p = q + nf;
        g.div(p, dp.data());
        g.grad(dp.data(), gdp.data());
        for (int i = 0; i < nf; ++i) {
            dy[nt + i] = p[i];
            const double qt = c.has_q ? q[i] : 0.0;
            dy[nt + nf + i] =
                (-c.c1 * p[i] - qt - c.c0 * gt[i] + c.cq / rc * gdq[i] + c.cp / rc * gdp[i]) / c.lead;
        }
    }
};

double model_rho(const ModelKind& m, double fallback) {
    if (auto* x = std::get_if<LSO>(&m)) return x->params.rho_cv;
    return fallback;
}

}  // namespace

TemperatureField fd_reference(const ModelKind& model_in, const Domain1D& d, const InitialData& ic,
                              const std::vector<double>& times, int grid_n, const FdOptions& opt) {
    if (grid_n < 16) throw Error(ErrorCode::InvalidArgument, "grid_n must be >= 16");
    if (!(d.length > 0)) throw Error(ErrorCode::InvalidArgument, "domain length must be > 0");
    if (times.empty()) throw Error(ErrorCode::InvalidArgument, "no output times");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw Error(ErrorCode::InvalidArgument, "times must increase");
    if (times.front() < 0) throw Error(ErrorCode::InvalidArgument, "times must be >= 0");

    const ModelKind model = fully_reduced(model_in);
    const double rc = model_rho(model_in, opt.rho_cv);
    if (!(rc > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    System sys{make_grid(d, grid_n), coeffs_of(model), rc, {}, {}, {}, {}, {}};
    const Grid& g = sys.g;
    sys.gt.assign(g.nf, 0.0);
    sys.gdq.assign(g.nf, 0.0);
    sys.gdp.assign(g.nf, 0.0);
    sys.dq.assign(g.nt, 0.0);
    sys.dp.assign(g.nt, 0.0);

    if (!ic.theta0) throw Error(ErrorCode::MissingInitialData, "theta0 is required");
    if (sys.c.order >= 1 && !ic.q0) throw Error(ErrorCode::MissingInitialData, "q0 is required for this model");
    if (sys.c.order >= 2 && !ic.qdot0) throw Error(ErrorCode::MissingInitialData, "qdot0 is required for this model");

    State y;
    for (double x : g.Xt) y.push_back(ic.theta0(x) - d.theta_env);
    if (sys.c.order >= 1)
        for (double x : g.Xf) y.push_back(ic.q0(x));
    if (sys.c.order >= 2)
        for (double x : g.Xf) y.push_back(ic.qdot0(x));

    TemperatureField f;
    f.t = times;
    if (d.boundary == Boundary::Dirichlet) f.X.push_back(0.0);
    f.X.insert(f.X.end(), g.Xt.begin(), g.Xt.end());
    if (d.boundary == Boundary::Dirichlet) f.X.push_back(d.length);
    f.theta.resize(times.size(), f.X.size());
    const int off = d.boundary == Boundary::Dirichlet ? 1 : 0;

    std::size_t k = 0;
    auto observe = [&](const State& s, double) {
        f.theta.row(k).setConstant(d.theta_env);
        for (int i = 0; i < g.nt; ++i) f.theta(k, off + i) = d.theta_env + s[i];
        ++k;
    };

    // integrate_times observes at every listed time, so t = 0 is prepended and dropped when not requested.
    std::vector<double> obs = times;
    const bool skip_first = times.front() > 0;
    if (skip_first) obs.insert(obs.begin(), 0.0);
    bool first = true;
    auto obs_fn = [&](const State& s, double t) {
        if (first && skip_first) {
            first = false;
            return;
        }
        first = false;
        observe(s, t);
    };

    auto stepper = ode::make_dense_output(opt.tolerance, opt.tolerance, ode::runge_kutta_dopri5<State>());
    const double dt0 = 1e-3 * std::max(obs.back() - obs.front(), 1e-12) / static_cast<double>(grid_n);
    try {
        ode::integrate_times(stepper, std::ref(sys), y, obs.begin(), obs.end(), dt0, obs_fn,
                             ode::max_step_checker(static_cast<int>(std::min<long>(opt.max_steps, 2'000'000'000L))));
    } catch (const ode::step_adjustment_error& e) {
        throw Error(ErrorCode::StepSizeUnderflow, e.what());
    } catch (const ode::no_progress_error& e) {
        throw Error(ErrorCode::StepBudgetExceeded, e.what());
    }
    for (double v : f.theta.reshaped())
        if (!std::isfinite(v)) throw Error(ErrorCode::StepSizeUnderflow, "non-finite values in reference solution");
    return f;
}

}  // namespace heatrate
