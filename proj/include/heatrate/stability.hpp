#pragma once

#include "heatrate/core.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace heatrate {

using cplx = std::complex<double>;

/// c3 w^3 + c2 w^2 + c1 w + c0.
struct CubicCoeffs {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;
    bool operator==(const CubicCoeffs&) const = default;
    std::vector<double> descending() const { return {c3, c2, c1, c0}; }
};

enum class StabilityStatus { Stable, Marginal, Unstable };
const char* to_string(StabilityStatus s);

struct Witness {
    std::string condition;
    double value = 0.0;
};

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Unstable;
    std::vector<Witness> witnesses;
    double max_real_root = 0.0;
    bool roots_agree = true;  // root real parts give the same status outside the band
};

constexpr double kMarginalBand = 1e-9;

/// Per-mode cubic of the LSO temperature equation at eigenvalue Lambda.
CubicCoeffs characteristic_cubic(const MaterialParams& p, double Lambda);

/// Sign conditions plus c2 c1 - c3 c0 > 0, each normalized by the coefficient scale.
StabilityVerdict routh_hurwitz(const CubicCoeffs& c, double band = kMarginalBand);

/// Hurwitz test for degree 1..3 with descending coefficients (leading zeros trimmed first).
StabilityVerdict hurwitz_verdict(std::vector<double> desc, double band = kMarginalBand);

/// Roots with multiplicity, ordered by descending real part then ascending imaginary part.
std::array<cplx, 3> mode_roots(const CubicCoeffs& c);

/// Roots of a polynomial of degree 1..3 with descending coefficients; same ordering.
std::vector<cplx> polynomial_roots(std::vector<double> desc);

/// Evaluate a descending-coefficient polynomial.
cplx polyval(const std::vector<double>& desc, cplx w);

enum class Regime { KappaNuPositive, KappaZero, NuZero, MuZero, KappaNuZero, SignViolation };
const char* to_string(Regime r);

struct ParameterVerdict {
    bool pass = false;
    Regime regime = Regime::SignViolation;
    std::vector<Witness> witnesses;
    std::optional<double> mu_bound;  // closed-form bound on mu for the regime, when one exists
};

/// Conditions for stability of every mode simultaneously (all positive Lambda).
ParameterVerdict stability_conditions(const MaterialParams& p);

/// Quadratic in the scaled eigenvalue whose positivity for all positive values is the Hurwitz product condition.
struct RelpQuadratic {
    double a = 0.0, b = 0.0, c = 0.0;
    double operator()(double x) const { return (a * x + b) * x + c; }
};
RelpQuadratic relp(const MaterialParams& p);

/// Analytic decision whether a x^2 + b x + c > 0 for every x > 0.
bool positive_on_halfline(const RelpQuadratic& q);

/// A scaled eigenvalue where the quadratic is not positive (midpoint of its positive roots), if any.
std::optional<double> relp_violation(const RelpQuadratic& q);

struct MuRegion {
    Regime regime = Regime::KappaNuPositive;
    double lo = 0.0, hi = 0.0;
    bool lo_closed = true, hi_closed = false;
    bool degenerate = false;
    bool contains(double mu) const;
};

MuRegion mu_admissibility(double lambda, double tau, double nu, double kappa);

struct TuningResult {
    double mu = 0.0;
    double Lambda_tilde = 0.0;
    std::array<cplx, 3> roots;  // closed form, ordered like mode_roots
};

/// mu making c2 c1 - c3 c0 vanish at Lambda_bar / rho_cv; p.mu is ignored.
TuningResult oscillatory_tuning(const MaterialParams& p, double Lambda_bar);

/// Per-mode characteristic polynomial (descending, divided by rho_cv, leading zeros trimmed).
/// LSO uses its own rho_cv; the argument applies to the other models.
std::vector<double> model_characteristic(const ModelKind& model, double Lambda, double rho_cv = 1.0);

/// Per-mode verdict of any model through its characteristic polynomial.
StabilityVerdict mode_verdict(const ModelKind& model, double Lambda, double rho_cv = 1.0);

}  // namespace heatrate
