#pragma once

#include "heatrate/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace heatrate {

/// beta4 = kappa beta1, beta5 = kappa alpha2, beta6 = kappa beta3, alpha4 = kappa beta5.
FreeEnergyCoeffs apply_constraints(FreeEnergyCoeffs c, double kappa);

/// Entropy-production form over (q, q', g, g'), evaluated at p.theta_ref.
QuadForm4 build_A(const MaterialParams& p, const FreeEnergyCoeffs& c);
/// Same, at an explicit temperature (the only place theta enters is A13).
QuadForm4 build_A(const MaterialParams& p, const FreeEnergyCoeffs& c, double theta);

/// Principal minors with the deletion convention: d(h,k) deletes rows/columns h and k,
/// d(h) deletes row/column h; indices are 1-based.
struct PrincipalMinors {
    std::array<double, 4> order1{};  // A11..A44
    std::array<double, 6> order2{};  // d(1,2) d(1,3) d(1,4) d(2,3) d(2,4) d(3,4)
    std::array<double, 4> order3{};  // d(1)..d(4)
    double det = 0.0;

    double d(int h, int k) const;
    double d(int h) const;
    std::array<double, 15> all() const;
};

PrincipalMinors principal_minors(const QuadForm4& a);

/// Every principal minor of order r is >= -tol * max(1, ||A||_F^r).
bool is_psd(const QuadForm4& a, double tol = 1e-10);

/// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi rotations, ascending.
std::array<double, 4> jacobi_eigenvalues(const Eigen::Matrix4d& m);

struct PsdReport {
    bool minors_psd = false;
    bool eigen_psd = false;
    double min_eigenvalue = 0.0;
    double relative_min_eigenvalue = 0.0;  // min eigenvalue / max(1, ||A||_F)
    bool agree() const { return minors_psd == eigen_psd; }
};

PsdReport psd_report(const QuadForm4& a, double tol = 1e-10);

enum class ItemStatus { Consistent, ConditionallyConsistent };

struct Predicate {
    std::string name;
    bool value = false;
};

struct Interval {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double v, double rel_tol = 0.0) const;
    bool bounded() const;
};

/// Free coefficients for the Table-2 recipes. Rows 1, 2, 5, 6, 7 take alpha2; row 9 takes beta1, alpha2, alpha1.
struct FreeChoice {
    std::optional<double> alpha1;
    std::optional<double> alpha2;
    std::optional<double> beta1;
};

struct ItemRecipe {
    int item = 0;
    ItemStatus status = ItemStatus::Consistent;
    std::vector<Predicate> conditions;
    std::vector<Interval> intervals;
    std::vector<std::string> coefficient_predicates;
    std::optional<FreeEnergyCoeffs> coeffs;
    bool psd_verified = false;
    bool dynamically_admissible = false;
};

struct FeasibilityOptions {
    double box = 1e4;          // bound on normalized coefficients
    double accept_tol = 1e-9;  // relative smallest-eigenvalue threshold
    int max_newton = 1000;
};

struct FeasibilityResult {
    bool feasible = false;
    FreeEnergyCoeffs coeffs;
    double min_eigenvalue = 0.0;
    double objective = 0.0;  // min eigenvalue / max(1, ||A||_F)
    int newton_steps = 0;
};

FeasibilityResult feasibility_search(const MaterialParams& p, const FeasibilityOptions& opt = {});

struct LsoClassification {
    std::vector<int> matched_items;
    std::vector<ItemRecipe> recipes;
    std::vector<int> rejected_conditional;
    bool infeasible = false;
    std::optional<FeasibilityResult> search;

    bool matched(int item) const;
    const ItemRecipe* recipe(int item) const;
};

struct ClassifyOptions {
    bool run_search = true;
    FeasibilityOptions search;
};

LsoClassification classify(const MaterialParams& p, const ClassifyOptions& opt = {});

/// Items whose parameter conditions do not involve free-energy unknowns.
bool is_decisive_item(int item);

/// Items listed as thermodynamically and dynamically admissible by the paper's closing remarks.
bool conclusion_admissible(int item);

/// Table-1 conditions of a decisive item (1..8) on p.
std::vector<Predicate> item_conditions(int item, const MaterialParams& p);
bool item_matches(int item, const MaterialParams& p);

/// Admissible intervals of the item (mu intervals, free-coefficient intervals).
std::vector<Interval> item_intervals(int item, const MaterialParams& p, const FreeChoice& free = {});

/// Table-2 coefficients, constraint relations applied. Throws ItemConditionViolated or FreeCoeffOutOfRange.
FreeEnergyCoeffs coeffs_for_item(int item, const MaterialParams& p, const FreeChoice& free = {});

/// Predicate checks for row 9 at explicit free coefficients.
std::vector<Predicate> item9_conditions(const MaterialParams& p, double beta1, double alpha2, double alpha1);

}  // namespace heatrate
