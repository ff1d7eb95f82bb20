#pragma once

#include "heatrate/core.hpp"
#include "heatrate/stability.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace heatrate {

enum class Boundary { Dirichlet, Neumann };

struct Domain1D {
    double length = 1.0;
    Boundary boundary = Boundary::Dirichlet;
    double theta_env = 0.0;  // Dirichlet wall temperature; reference level for Neumann
};

/// Helmholtz eigenpair on [0, L]; Y has unit L2 norm.
struct Mode {
    int n = 0;
    double Lambda = 0.0;
};

std::vector<Mode> eigen_modes(const Domain1D& d, int N);
double mode_value(const Domain1D& d, const Mode& m, double X);
double mode_slope(const Domain1D& d, const Mode& m, double X);

using Profile = std::function<double(double)>;

/// Initial temperature, flux and flux rate as functions of X.
struct InitialData {
    Profile theta0;
    Profile q0;
    Profile qdot0;

    /// Cubic-spline interpolants through samples on one shared grid (qdot may be empty).
    static InitialData from_samples(const std::vector<double>& X, const std::vector<double>& theta,
                                    const std::vector<double>& q, const std::vector<double>& qdot = {});
};

/// T_n(0) and its first two time derivatives.
struct ModalData {
    double T = 0.0, T_dot = 0.0, T_ddot = 0.0;
};

/// Number of initial conditions each mode needs (degree of the characteristic polynomial).
int temporal_order(const ModelKind& model);

std::vector<ModalData> project_initial(const ModelKind& model, const Domain1D& d, const InitialData& ic,
                                       const std::vector<Mode>& modes, double rho_cv = 1.0);

/// T(t) = sum_i c_i exp(w_i t), with t^j exp(w t) terms for repeated roots.
struct ModeEvolution {
    std::vector<cplx> roots;       // distinct roots
    std::vector<int> multiplicity;
    std::vector<std::vector<cplx>> amplitudes;  // per distinct root, coefficient of t^j exp(w t)
    double operator()(double t) const;
    cplx complex_value(double t) const;
};

/// ics holds (T, T', T'') truncated to the number of roots.
ModeEvolution evolve_mode(const std::vector<cplx>& roots, const std::vector<double>& ics);

struct ModeSolution {
    Mode mode;
    std::vector<cplx> roots;
    ModalData initial;
    ModeEvolution evolution;
};

struct TemperatureField {
    std::vector<double> X;
    std::vector<double> t;
    Eigen::MatrixXd theta;  // rows: times, columns: X
    double tail = 0.0;      // L2 norm of the last eight initial mode projections
    std::vector<ModeSolution> modes;
};

struct SimulateOptions {
    double rho_cv = 1.0;  // ignored for LSO, which carries its own
    bool allow_unstable = false;
    std::vector<double> X;  // output grid; empty -> 129 uniform points
    int threads = 1;
};

TemperatureField simulate(const ModelKind& model, const Domain1D& d, const InitialData& ic,
                          const std::vector<double>& times, int N = 64, const SimulateOptions& opt = {});

struct FdOptions {
    double rho_cv = 1.0;  // ignored for LSO
    double tolerance = 1e-10;
    long max_steps = 2'000'000;  // between consecutive output times
};

/// Method-of-lines reference on a staggered grid: Dirichlet values at the grid_n + 1 nodes,
/// Neumann values at grid_n cell centres.
TemperatureField fd_reference(const ModelKind& model, const Domain1D& d, const InitialData& ic,
                              const std::vector<double>& times, int grid_n, const FdOptions& opt = {});

/// Relative L2 distance between two fields sampled on the same grid.
double relative_l2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Model with its degenerate leading parameters removed (repeated reduce()).
ModelKind fully_reduced(const ModelKind& model);

}  // namespace heatrate
