// Eigenfunction-expansion solver for the 1D rigid conductor.
#include "heatrate/solver.hpp"

#include "heatrate/models.hpp"

#include <unsupported/Eigen/Splines>

#include <algorithm>
#include <cmath>
#include <memory>
#include <thread>

namespace heatrate {

namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGlX = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlW = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

template <class F>
double integrate(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        double ps = 0.0;
        for (int k = 0; k < 8; ++k) ps += kGlW[k] * f(c + 0.5 * h * kGlX[k]);
        s += 0.5 * h * ps;
    }
    return s;
}

bool degenerate_leading(const ModelKind& m) {
    if (auto* x = std::get_if<MCV>(&m)) return x->tau == 0.0;
    if (auto* x = std::get_if<Jeffreys>(&m)) return x->tau == 0.0;
    if (auto* x = std::get_if<Quintanilla>(&m)) return x->tau == 0.0;
    if (auto* x = std::get_if<Burgers>(&m)) return x->lambda == 0.0;
    if (auto* x = std::get_if<LSO>(&m)) return x->params.lambda == 0.0;
    return false;
}

double model_rho_cv(const ModelKind& m, double fallback) {
    if (auto* x = std::get_if<LSO>(&m)) return x->params.rho_cv;
    return fallback;
}

int thread_count(int requested, std::size_t work) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min<int>(n, static_cast<int>(work)));
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
    const int nt = thread_count(threads, count);
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += nt) f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Mode> eigen_modes(const Domain1D& d, int N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "need at least one mode");
    if (!(d.length > 0)) throw Error(ErrorCode::InvalidArgument, "domain length must be > 0");
    std::vector<Mode> out;
    const int first = d.boundary == Boundary::Dirichlet ? 1 : 0;
    for (int n = first; n < first + N; ++n) {
        const double k = n * M_PI / d.length;
        out.push_back({n, k * k});
    }
    return out;
}

double mode_value(const Domain1D& d, const Mode& m, double X) {
    const double L = d.length;
    if (d.boundary == Boundary::Dirichlet) return std::sqrt(2.0 / L) * std::sin(m.n * M_PI * X / L);
    if (m.n == 0) return 1.0 / std::sqrt(L);
    return std::sqrt(2.0 / L) * std::cos(m.n * M_PI * X / L);
}

double mode_slope(const Domain1D& d, const Mode& m, double X) {
    const double L = d.length, k = m.n * M_PI / L;
    if (d.boundary == Boundary::Dirichlet) return std::sqrt(2.0 / L) * k * std::cos(k * X);
    if (m.n == 0) return 0.0;
    return -std::sqrt(2.0 / L) * k * std::sin(k * X);
}

InitialData InitialData::from_samples(const std::vector<double>& X, const std::vector<double>& theta,
                                      const std::vector<double>& q, const std::vector<double>& qdot) {
    if (X.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 samples");
    if (theta.size() != X.size() || q.size() != X.size() || (!qdot.empty() && qdot.size() != X.size()))
        throw Error(ErrorCode::InvalidArgument, "profiles must share the grid");
    for (std::size_t i = 1; i < X.size(); ++i)
        if (!(X[i] > X[i - 1])) throw Error(ErrorCode::InvalidArgument, "grid must be strictly increasing");
    using Spline1 = Eigen::Spline<double, 1>;
    const double x0 = X.front(), span = X.back() - X.front();
    Eigen::RowVectorXd u(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) u[static_cast<Eigen::Index>(i)] = (X[i] - x0) / span;
    auto make = [&](const std::vector<double>& v) -> Profile {
        Eigen::RowVectorXd y(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) y[static_cast<Eigen::Index>(i)] = v[i];
        auto s = std::make_shared<Spline1>(Eigen::SplineFitting<Spline1>::Interpolate(y, 3, u));
        return [s, x0, span](double x) { return (*s)(std::clamp((x - x0) / span, 0.0, 1.0))(0); };
    };
    InitialData ic;
    ic.theta0 = make(theta);
    ic.q0 = make(q);
    if (!qdot.empty()) ic.qdot0 = make(qdot);
    return ic;
}

int temporal_order(const ModelKind& model) {
    return static_cast<int>(model_characteristic(model, 1.0).size()) - 1;
}

std::vector<ModalData> project_initial(const ModelKind& model, const Domain1D& d, const InitialData& ic,
                                       const std::vector<Mode>& modes, double rho_cv) {
    const int order = temporal_order(model);
    const double rc = model_rho_cv(model, rho_cv);
    if (!(rc > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    if (!ic.theta0) throw Error(ErrorCode::MissingInitialData, "theta0 is required");
    if (order >= 2 && !ic.q0) throw Error(ErrorCode::MissingInitialData, "q0 is required for this model");
    if (order >= 3 && !ic.qdot0) throw Error(ErrorCode::MissingInitialData, "qdot0 is required for this model");
    int top = 1;
    for (const auto& m : modes) top = std::max(top, m.n);
    const int panels = std::max(64, 4 * top);
    const double L = d.length;

    std::vector<ModalData> out(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& m = modes[i];
        auto& o = out[i];
        o.T = integrate([&](double x) { return (ic.theta0(x) - d.theta_env) * mode_value(d, m, x); }, 0.0, L, panels);
        // rho c T' = -(q Y)|_0^L + int q Y'
        auto rate = [&](const Profile& f) {
            const double bnd = f(L) * mode_value(d, m, L) - f(0.0) * mode_value(d, m, 0.0);
            return (-bnd + integrate([&](double x) { return f(x) * mode_slope(d, m, x); }, 0.0, L, panels)) / rc;
        };
        if (order >= 2) o.T_dot = rate(ic.q0);
        if (order >= 3) o.T_ddot = rate(ic.qdot0);
    }
    return out;
}

cplx ModeEvolution::complex_value(double t) const {
    cplx v = 0.0;
    for (std::size_t g = 0; g < roots.size(); ++g) {
        const cplx e = std::exp(roots[g] * t);
        cplx poly = 0.0;
        for (int j = multiplicity[g] - 1; j >= 0; --j) poly = poly * t + amplitudes[g][j];
        v += poly * e;
    }
    return v;
}

double ModeEvolution::operator()(double t) const { return complex_value(t).real(); }

ModeEvolution evolve_mode(const std::vector<cplx>& roots, const std::vector<double>& ics) {
    const int deg = static_cast<int>(roots.size());
    if (deg < 1 || deg > 3) throw Error(ErrorCode::InvalidArgument, "one to three roots expected");
    if (static_cast<int>(ics.size()) < deg) throw Error(ErrorCode::MissingInitialData, "too few initial conditions");

    ModeEvolution ev;
    for (const auto& w : roots) {
        auto it = std::find(ev.roots.begin(), ev.roots.end(), w);
        if (it == ev.roots.end()) {
            ev.roots.push_back(w);
            ev.multiplicity.push_back(1);
        } else {
            ++ev.multiplicity[it - ev.roots.begin()];
        }
    }

    // Work in scaled time u = s t so the system is scale free.
    double s = 1.0;
    for (const auto& w : roots) s = std::max(s, std::abs(w));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(deg, deg);
    Eigen::VectorXcd rhs(deg);
    for (int k = 0; k < deg; ++k) rhs[k] = ics[k] / std::pow(s, k);
    int col = 0;
    for (std::size_t g = 0; g < ev.roots.size(); ++g) {
        const cplx z = ev.roots[g] / s;
        for (int j = 0; j < ev.multiplicity[g]; ++j, ++col) {
            // k-th derivative of u^j exp(z u) at u = 0.
            for (int k = j; k < deg; ++k) {
                double fall = 1.0;
                for (int r = 0; r < j; ++r) fall *= (k - r);
                M(k, col) = fall * std::pow(z, k - j);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto sv = svd.singularValues();
    if (!(sv[deg - 1] > 1e-12 * sv[0]))
        throw Error(ErrorCode::IllConditionedSystem, "near-confluent roots were not merged");
    const Eigen::VectorXcd c = M.fullPivLu().solve(rhs);
    col = 0;
    for (std::size_t g = 0; g < ev.roots.size(); ++g) {
        std::vector<cplx> a;
        for (int j = 0; j < ev.multiplicity[g]; ++j, ++col) a.push_back(c[col] * std::pow(s, j));
        ev.amplitudes.push_back(std::move(a));
    }
    return ev;
}

ModelKind fully_reduced(const ModelKind& model) {
    ModelKind m = model;
    while (degenerate_leading(m)) m = reduce(m);
    return m;
}

TemperatureField simulate(const ModelKind& model, const Domain1D& d, const InitialData& ic,
                          const std::vector<double>& times, int N, const SimulateOptions& opt) {
    const double rc = model_rho_cv(model, opt.rho_cv);
    if (!(rc > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    if (const auto* lso = std::get_if<LSO>(&model); lso && !opt.allow_unstable) {
        const auto& p = lso->params;
        if (p.lambda != 0.0 && p.kappa != 0.0) {
            const auto v = stability_conditions(p);
            if (!v.pass) {
                std::string w;
                for (const auto& x : v.witnesses) w += " " + x.condition;
                throw Error(ErrorCode::UnstableParameters, "stability conditions fail:" + w);
            }
        }
    }
    const auto modes = eigen_modes(d, N);
    const auto init = project_initial(model, d, ic, modes, rc);
    const int order = temporal_order(model);

    TemperatureField f;
    f.t = times;
    if (opt.X.empty()) {
        for (int i = 0; i <= 128; ++i) f.X.push_back(d.length * i / 128.0);
    } else {
        f.X = opt.X;
    }
    f.modes.resize(modes.size());
    parallel_for(modes.size(), opt.threads, [&](std::size_t i) {
        auto& ms = f.modes[i];
        ms.mode = modes[i];
        ms.initial = init[i];
        const auto poly = model_characteristic(model, modes[i].Lambda, rc);
        if (!opt.allow_unstable) {
            const auto v = hurwitz_verdict(poly);
            if (v.status == StabilityStatus::Unstable)
                throw Error(ErrorCode::UnstableParameters, "mode " + std::to_string(modes[i].n) + " is unstable");
        }
        ms.roots = polynomial_roots(poly);
        const std::vector<double> ics = {init[i].T, init[i].T_dot, init[i].T_ddot};
        ms.evolution = evolve_mode(ms.roots, std::vector<double>(ics.begin(), ics.begin() + order));
    });

    double tail = 0.0;
    for (std::size_t i = modes.size() >= 8 ? modes.size() - 8 : 0; i < modes.size(); ++i)
        tail += init[i].T * init[i].T;
    f.tail = std::sqrt(tail);

    Eigen::MatrixXd Y(modes.size(), f.X.size());
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < f.X.size(); ++j) Y(i, j) = mode_value(d, modes[i], f.X[j]);

    f.theta.resize(times.size(), f.X.size());
    parallel_for(times.size(), opt.threads, [&](std::size_t k) {
        std::vector<double> Tn(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) Tn[i] = f.modes[i].evolution(times[k]);
        for (std::size_t j = 0; j < f.X.size(); ++j) {
            double v = 0.0;
            for (std::size_t i = 0; i < modes.size(); ++i) v += Y(i, j) * Tn[i];
            f.theta(k, j) = d.theta_env + v;
        }
    });
    return f;
}

double relative_l2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidArgument, "shape mismatch");
    const double n = b.norm();
    return n == 0.0 ? (a - b).norm() : (a - b).norm() / n;
}

}  // namespace heatrate
