#pragma once

#include "heatrate/models.hpp"
#include "heatrate/sampling.hpp"
#include "heatrate/solver.hpp"

#include <string>
#include <vector>

namespace heatrate {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double worst = 0.0;  // check-specific figure of merit
    long cases = 0;
};

/// Test hooks for the fault-injection path of `validate`.
struct FaultInjection {
    bool corrupt_A = false;  // shift A11 before the PSD verification
};

/// Recipes for items 1..9 verified PSD and recognised by classify; mu < 0 points infeasible.
CheckResult check_classifier(Rng& rng, int per_item, int negative_points, const FaultInjection& fault = {});

/// Minors-based is_psd against eigenvalues on random symmetric matrices.
CheckResult check_psd_equivalence(Rng& rng, long count, const FaultInjection& fault = {});

/// Routh-Hurwitz verdicts against root real parts, plus root residuals.
CheckResult check_hurwitz_roots(Rng& rng, long count);

/// Clausius-Duhem residual for every model with its free energy and entropy production.
CheckResult check_residuals(Rng& rng, int states_per_model);

struct ModelCase {
    std::string label;
    ModelKind model;
    std::optional<FreeEnergyCoeffs> coeffs;
    ModelOptions options;
};

/// Random consistent parameter sets for every (model, free energy) pair.
std::vector<ModelCase> residual_cases(Rng& rng);

/// Initial data theta0 - theta_env = X (L - X), q0 = a cos(pi X / L), qdot0 = 0.
InitialData parabola_data(const Domain1D& d, double flux_amplitude);

/// 1 / |largest real part| over the first mode's roots.
double decay_time(const ModelKind& model, const Domain1D& d, double rho_cv = 1.0);

/// Relative L2 distance of temperature deviations between the spectral solution and the FD reference.
double spectral_fd_distance(const ModelKind& model, const Domain1D& d, const InitialData& ic, double horizon,
                            int modes, int grid, int n_times = 7, double rho_cv = 1.0);

/// Stable parameter sets for the seven models used by the cross-validation checks.
std::vector<std::pair<std::string, ModelKind>> stable_models();

CheckResult check_spectral_fd(int modes, int grid, const std::vector<std::pair<std::string, ModelKind>>& models);

struct Intersection {
    std::vector<int> positive_mu;
    std::vector<int> zero_mu;
};

/// Items 1..8 whose sampled physical points also pass stability_conditions.
Intersection conclusion_intersection(Rng& rng, int samples_per_item);

CheckResult check_intersection(Rng& rng, int samples_per_item);

std::string format_items(const std::vector<int>& items);

}  // namespace heatrate
