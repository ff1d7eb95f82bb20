#include "heatrate/core.hpp"

#include <cmath>

namespace heatrate {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonPositiveHeatCapacity: return "NonPositiveHeatCapacity";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::SingularXi: return "SingularXi";
    case ErrorCode::MissingCoefficients: return "MissingCoefficients";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::ExcludedDegenerate: return "ExcludedDegenerate";
    case ErrorCode::ItemConditionViolated: return "ItemConditionViolated";
    case ErrorCode::FreeCoeffOutOfRange: return "FreeCoeffOutOfRange";
    case ErrorCode::DegenerateCubic: return "DegenerateCubic";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorCode::IllConditionedSystem: return "IllConditionedSystem";
    case ErrorCode::UnstableParameters: return "UnstableParameters";
    case ErrorCode::MissingInitialData: return "MissingInitialData";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ValidatedParams validate_params(const MaterialParams& p) {
    if (!(p.rho_cv > 0.0))
        throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");
    if (!(p.theta_ref > 0.0))
        throw Error(ErrorCode::NonPositiveTemperature, "theta_ref must be > 0");
    ValidatedParams v{p, {}};
    v.zero.lambda = p.lambda == 0.0;
    v.zero.tau = p.tau == 0.0;
    v.zero.mu = p.mu == 0.0;
    v.zero.nu = p.nu == 0.0;
    v.zero.kappa = p.kappa == 0.0;
    return v;
}

Eigen::Matrix4d FreeEnergyCoeffs::hessian() const {
    Eigen::Matrix4d P;
    P << alpha1, beta1, beta2, beta4,
         beta1, alpha2, beta3, beta5,
         beta2, beta3, alpha3, beta6,
         beta4, beta5, beta6, alpha4;
    return P;
}

ThermalState ThermalState::zero(double theta, int dim) {
    ThermalState s;
    s.theta = theta;
    s.q = Eigen::VectorXd::Zero(dim);
    s.q_dot = Eigen::VectorXd::Zero(dim);
    s.grad_theta = Eigen::VectorXd::Zero(dim);
    s.grad_theta_dot = Eigen::VectorXd::Zero(dim);
    return s;
}

void ThermalState::check() const {
    if (!(theta > 0.0))
        throw Error(ErrorCode::NonPositiveTemperature, "state theta must be > 0");
    const auto n = q.size();
    if (n != 1 && n != 3)
        throw Error(ErrorCode::InvalidArgument, "state vectors must have dimension 1 or 3");
    bool same = q_dot.size() == n && grad_theta.size() == n && grad_theta_dot.size() == n;
    if (q_ddot) same = same && q_ddot->size() == n;
    if (grad_theta_ddot) same = same && grad_theta_ddot->size() == n;
    if (!same) throw Error(ErrorCode::InvalidArgument, "state vectors differ in dimension");
}

int QuadForm4::index(int i, int j) {
    if (i < 0 || j < 0 || i > 3 || j > 3)
        throw Error(ErrorCode::InvalidArgument, "QuadForm4 index out of range");
    if (i > j) std::swap(i, j);
    // row-major upper triangle: (0,0..3)=0..3, (1,1..3)=4..6, (2,2..3)=7..8, (3,3)=9
    static constexpr int offset[4] = {0, 4, 7, 9};
    return offset[i] + (j - i);
}

QuadForm4 QuadForm4::from_matrix(const Eigen::Matrix4d& m) {
    QuadForm4 f;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) f.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return f;
}

Eigen::Matrix4d QuadForm4::matrix() const {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double QuadForm4::frobenius() const { return matrix().norm(); }

std::string model_name(const ModelKind& m) {
    struct V {
        std::string operator()(const Fourier&) const { return "Fourier"; }
        std::string operator()(const MCV&) const { return "MCV"; }
        std::string operator()(const GNIII&) const { return "GNIII"; }
        std::string operator()(const Jeffreys&) const { return "Jeffreys"; }
        std::string operator()(const Quintanilla&) const { return "Quintanilla"; }
        std::string operator()(const Burgers&) const { return "Burgers"; }
        std::string operator()(const LSO&) const { return "LSO"; }
    };
    return std::visit(V{}, m);
}

int flux_order(const ModelKind& m) {
    struct V {
        int operator()(const Fourier&) const { return 0; }
        int operator()(const MCV&) const { return 1; }
        int operator()(const GNIII&) const { return 1; }
        int operator()(const Jeffreys&) const { return 1; }
        int operator()(const Quintanilla&) const { return 2; }
        int operator()(const Burgers&) const { return 2; }
        int operator()(const LSO&) const { return 2; }
    };
    return std::visit(V{}, m);
}

}  // namespace heatrate
