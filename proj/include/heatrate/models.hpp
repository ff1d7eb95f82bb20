#pragma once

#include "heatrate/consistency.hpp"
#include "heatrate/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heatrate {

enum class VerdictStatus { Consistent, Inconsistent, ConditionallyConsistent };

const char* to_string(VerdictStatus s);

struct ConsistencyVerdict {
    VerdictStatus status = VerdictStatus::Inconsistent;
    std::vector<Predicate> conditions_checked;
    std::string notes;
};

/// The two admissible (psi, gamma) pairs of the Jeffreys conductor.
enum class JeffreysBranch { First, Second };

struct ModelOptions {
    JeffreysBranch jeffreys_branch = JeffreysBranch::First;
};

/// Highest time derivative of q implied by the rate equation (q itself for Fourier).
Eigen::VectorXd highest_rate(const ModelKind& model, const ThermalState& state);

/// Flux-dependent part of rho*psi. LSO requires coefficients; Burgers uses its derived recipe when none are given.
double free_energy(const ModelKind& model, const ThermalState& state, const std::optional<FreeEnergyCoeffs>& coeffs = {},
                   const ModelOptions& opt = {});

/// rho*theta*gamma.
double entropy_production(const ModelKind& model, const ThermalState& state,
                          const std::optional<FreeEnergyCoeffs>& coeffs = {}, const ModelOptions& opt = {});

struct ResidualTerms {
    double energy_rate = 0.0;  // d/dt of the flux part of rho*psi along the model's rates
    double heat_term = 0.0;    // q . grad(theta) / theta
    double production = 0.0;   // rho*theta*gamma
    double residual = 0.0;
    double scale = 0.0;        // sum of absolute values of every elementary product
};

ResidualTerms clausius_duhem_terms(const ModelKind& model, const ThermalState& state,
                                   const std::optional<FreeEnergyCoeffs>& coeffs = {}, const ModelOptions& opt = {});

double clausius_duhem_residual(const ModelKind& model, const ThermalState& state,
                               const std::optional<FreeEnergyCoeffs>& coeffs = {}, const ModelOptions& opt = {});

ConsistencyVerdict check_parameter_consistency(const ModelKind& model);

/// Limit model for an exactly-zero degeneracy parameter.
ModelKind reduce(const ModelKind& model);

/// Free-energy coefficients of the Burgers conductor at temperature theta, in the LSO layout
/// with mu -> kappa, nu -> zeta and the LSO kappa set to 0.
FreeEnergyCoeffs burgers_coeffs(const Burgers& b, double theta);

/// LSO parameters whose rate equation coincides with the Burgers one.
MaterialParams burgers_as_lso(const Burgers& b, double theta_ref = 1.0);

}  // namespace heatrate
