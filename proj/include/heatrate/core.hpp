#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace heatrate {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    NonPositiveHeatCapacity,
    NonPositiveTemperature,
    DegenerateLeadingCoefficient,
    SingularXi,
    MissingCoefficients,
    NotReducible,
    ZeroLambda,
    ExcludedDegenerate,
    ItemConditionViolated,
    FreeCoeffOutOfRange,
    DegenerateCubic,
    PreconditionViolated,
    NoPositiveSolution,
    IllConditionedSystem,
    UnstableParameters,
    MissingInitialData,
    StepSizeUnderflow,
    StepBudgetExceeded,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// LSO material scalars plus volumetric heat capacity and reference temperature.
/// lambda [s^2], tau [s], mu/nu/kappa [W m^-1 K^-1], rho_cv [J m^-3 K^-1], theta_ref [K].
struct MaterialParams {
    double lambda = 0.0;
    double tau = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double kappa = 0.0;
    double rho_cv = 1.0;
    double theta_ref = 1.0;

    bool operator==(const MaterialParams&) const = default;
};

struct ZeroFlags {
    bool lambda = false;
    bool tau = false;
    bool mu = false;
    bool nu = false;
    bool kappa = false;

    bool any() const { return lambda || tau || mu || nu || kappa; }
    bool operator==(const ZeroFlags&) const = default;
};

struct ValidatedParams {
    MaterialParams params;
    ZeroFlags zero;
};

ValidatedParams validate_params(const MaterialParams& p);

/// Coefficients of the quadratic free energy
///   alpha1/2 |q|^2 + alpha2/2 |q'|^2 + alpha3/2 |g|^2 + alpha4/2 |g'|^2
///   + beta1 q.q' + beta2 q.g + beta3 q'.g + beta4 q.g' + beta5 q'.g' + beta6 g.g'
/// with g the temperature gradient.
struct FreeEnergyCoeffs {
    double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0, alpha4 = 0.0;
    double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0, beta4 = 0.0, beta5 = 0.0, beta6 = 0.0;
    bool lso_constrained = false;

    bool operator==(const FreeEnergyCoeffs&) const = default;

    /// Symmetric matrix P with rho*psi - baseline = x^T P x / 2 over (q, q', g, g').
    Eigen::Matrix4d hessian() const;
};

/// Point values of the state. Vectors share one dimension (1 or 3).
struct ThermalState {
    double theta = 1.0;
    Eigen::VectorXd q;
    Eigen::VectorXd q_dot;
    Eigen::VectorXd grad_theta;
    Eigen::VectorXd grad_theta_dot;
    std::optional<Eigen::VectorXd> q_ddot;
    std::optional<Eigen::VectorXd> grad_theta_ddot;

    static ThermalState zero(double theta, int dim);
    int dim() const { return static_cast<int>(q.size()); }
    void check() const;
};

/// Symmetric 4x4 form over (q, q', g, g'); the ten upper entries are stored once.
class QuadForm4 {
public:
    QuadForm4() { upper_.fill(0.0); }
    static QuadForm4 from_matrix(const Eigen::Matrix4d& m);

    double operator()(int i, int j) const { return upper_[index(i, j)]; }
    void set(int i, int j, double v) { upper_[index(i, j)] = v; }
    Eigen::Matrix4d matrix() const;
    double frobenius() const;
    const std::array<double, 10>& upper() const { return upper_; }

    bool operator==(const QuadForm4&) const = default;

private:
    static int index(int i, int j);
    std::array<double, 10> upper_;
};

struct Fourier {
    double kappa = 0.0;
    bool operator==(const Fourier&) const = default;
};
struct MCV {
    double tau = 0.0, kappa = 0.0;
    bool operator==(const MCV&) const = default;
};
struct GNIII {
    double xi = 0.0, kappa = 0.0;
    bool operator==(const GNIII&) const = default;
};
struct Jeffreys {
    double tau = 0.0, kappa = 0.0, zeta = 0.0;
    bool operator==(const Jeffreys&) const = default;
};
struct Quintanilla {
    double tau = 0.0, xi = 0.0, kappa = 0.0;
    bool operator==(const Quintanilla&) const = default;
};
struct Burgers {
    double lambda = 0.0, tau = 0.0, kappa = 0.0, zeta = 0.0;
    bool operator==(const Burgers&) const = default;
};
struct LSO {
    MaterialParams params;
    bool operator==(const LSO&) const = default;
};

using ModelKind = std::variant<Fourier, MCV, GNIII, Jeffreys, Quintanilla, Burgers, LSO>;

std::string model_name(const ModelKind& m);

/// Order of the highest time derivative of q in the rate equation (0 for Fourier).
int flux_order(const ModelKind& m);

}  // namespace heatrate
