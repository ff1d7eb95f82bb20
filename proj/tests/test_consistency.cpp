#include "doctest.h"

#include "heatrate/consistency.hpp"
#include "heatrate/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace heatrate;

namespace {

MaterialParams lso(double l, double t, double m, double n, double k, double theta = 1.0) {
    MaterialParams p;
    p.lambda = l;
    p.tau = t;
    p.mu = m;
    p.nu = n;
    p.kappa = k;
    p.theta_ref = theta;
    return p;
}

double uni(Rng& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

// Leibniz-free cofactor expansion along the first row.
double cofactor_det(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 1) return m(0, 0);
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd sub(n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c)
                if (c != j) sub(r - 1, cc++) = m(r, c);
        d += ((j % 2) ? -1.0 : 1.0) * m(0, j) * cofactor_det(sub);
    }
    return d;
}

double kept_det(const Eigen::Matrix4d& m, std::vector<int> keep) {
    Eigen::MatrixXd s(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t k = 0; k < keep.size(); ++k) s(i, k) = m(keep[i], keep[k]);
    return cofactor_det(s);
}

double min_eig(const QuadForm4& a) {
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(a.matrix()).eigenvalues()[0];
}

FreeEnergyCoeffs random_coeffs(Rng& rng, double kappa) {
    FreeEnergyCoeffs c;
    c.alpha1 = uni(rng, -2, 2);
    c.alpha2 = uni(rng, -2, 2);
    c.alpha3 = uni(rng, -2, 2);
    c.beta1 = uni(rng, -2, 2);
    c.beta2 = uni(rng, -2, 2);
    c.beta3 = uni(rng, -2, 2);
    return apply_constraints(c, kappa);
}

}  // namespace

TEST_CASE("principal minors: identity and a negative diagonal") {
    const auto I = principal_minors(QuadForm4::from_matrix(Eigen::Matrix4d::Identity()));
    for (double v : I.all()) CHECK(v == 1.0);
    Eigen::Matrix4d d = Eigen::Matrix4d::Identity();
    d(1, 1) = -1.0;
    const auto m = principal_minors(QuadForm4::from_matrix(d));
    CHECK(m.order1[1] == -1.0);
    CHECK(m.d(1, 3) == -1.0);  // keeps rows 2 and 4
    CHECK(m.d(2) == 1.0);      // deletes the negative entry
}

TEST_CASE("principal minors agree with cofactor expansion") {
    Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        Eigen::Matrix4d r;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) r(a, b) = uni(rng, -2, 2);
        const Eigen::Matrix4d m = r + r.transpose();
        const auto pm = principal_minors(QuadForm4::from_matrix(m));
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
        for (int h = 1; h <= 4; ++h) {
            std::vector<int> keep;
            for (int k = 1; k <= 4; ++k)
                if (k != h) keep.push_back(k - 1);
            CHECK(close(pm.d(h), kept_det(m, keep)));
            CHECK(close(pm.order1[h - 1], m(h - 1, h - 1)));
            for (int k = h + 1; k <= 4; ++k) {
                std::vector<int> two;
                for (int j = 1; j <= 4; ++j)
                    if (j != h && j != k) two.push_back(j - 1);
                CHECK(close(pm.d(h, k), kept_det(m, two)));
            }
        }
        CHECK(close(pm.det, cofactor_det(m)));
    }
}

TEST_CASE("is_psd examples") {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        Eigen::Matrix<double, 3, 4> M;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 4; ++b) M(a, b) = uni(rng, -1, 1);
        const auto A = QuadForm4::from_matrix(M.transpose() * M);
        CHECK(min_eig(A) >= -1e-12);
        CHECK(is_psd(A));
    }
    Eigen::Matrix4d d = Eigen::Matrix4d::Identity();
    d(3, 3) = -1e-3;
    CHECK_FALSE(is_psd(QuadForm4::from_matrix(d)));
    CHECK(is_psd(QuadForm4{}));
    CHECK(code_of([] { is_psd(QuadForm4{}, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Jacobi eigenvalues match the library eigensolver") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Eigen::Matrix4d r;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) r(a, b) = uni(rng, -3, 3);
        const Eigen::Matrix4d m = r + r.transpose();
        const auto jac = jacobi_eigenvalues(m);
        const auto ref = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(m).eigenvalues();
        for (int k = 0; k < 4; ++k) CHECK(jac[k] == doctest::Approx(ref[k]).epsilon(1e-12).scale(m.norm()));
    }
}

TEST_CASE("build_A entries") {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto p = lso(uni(rng, 0.2, 2), uni(rng, -2, 2), uni(rng, -2, 2), uni(rng, -2, 2), uni(rng, -2, 2),
                           uni(rng, 0.5, 3));
        const auto c = random_coeffs(rng, p.kappa);
        const auto A = build_A(p, c);
        const double l = p.lambda, t = p.tau, m = p.mu, n = p.nu, k = p.kappa, th = p.theta_ref;
        const double a1 = c.alpha1, a2 = c.alpha2, a3 = c.alpha3, b1 = c.beta1, b2 = c.beta2, b3 = c.beta3;
        auto eq = [](double x, double y) { return doctest::Approx(y).epsilon(1e-13).scale(1.0) == x; };
        CHECK(eq(A(0, 0), b1 / l));
        CHECK(eq(A(1, 1), (t * a2 - l * b1) / l));
        CHECK(eq(A(2, 2), m * b3 / l));
        CHECK(eq(A(3, 3), t * n * k * a2 / l - k * b3));
        CHECK(eq(A(0, 1), (a2 + t * b1 - l * a1) / (2 * l)));
        CHECK(eq(A(0, 2), (b1 * m * th + b3 * th - l) / (2 * l * th)));
        CHECK(eq(A(0, 3), (b1 * n * t + k * a2 - l * b2) / (2 * l)));
        CHECK(eq(A(1, 2), (m * a2 + t * b3 - l * b2) / (2 * l)));
        CHECK(eq(A(1, 3), (t * (k + n) * a2 - l * (k * b1 + b3)) / (2 * l)));
        CHECK(eq(A(2, 3), (k * m * a2 + n * t * b3 - l * a3) / (2 * l)));

        // The (2,4) minor is never positive.
        const auto pm = principal_minors(A);
        const double num = l * (b3 - k * b1) + (k - n) * t * a2;
        CHECK(pm.d(1, 3) == doctest::Approx(-num * num / (4 * l * l)).epsilon(1e-10).scale(1.0));
        CHECK(pm.d(1, 3) <= 1e-12);

        // With the forced beta3, d(1) and d(3) factor through A22.
        FreeEnergyCoeffs g = c;
        g.beta3 = k * b1 + t * a2 * (n - k) / l;
        const auto G = principal_minors(build_A(p, apply_constraints(g, k)));
        const double a22 = (t * a2 - l * b1) / l;
        const double n3 = l * b2 - k * l * a1 + (k - n) * t * b1;
        const double n1 = l * l * (a3 - k * b2) + k * l * b1 * (k - n) * t - a2 * (k - n) * (k - n) * t * t;
        CHECK(G.d(3) == doctest::Approx(-a22 * n3 * n3 / (4 * l * l)).epsilon(1e-9).scale(1.0));
        CHECK(G.d(1) == doctest::Approx(-a22 * n1 * n1 / (4 * l * l * l * l)).epsilon(1e-9).scale(1.0));

        // A22 = 0 branch: beta1 = tau alpha2 / lambda empties row 4 once beta2, alpha3 are fixed.
        FreeEnergyCoeffs z = c;
        z.beta1 = t * a2 / l;
        z.beta3 = t * n * a2 / l;
        z.beta2 = (n * t * t + k * l) * a2 / (l * l);
        z.alpha3 = (l * k * m + t * t * n * n) * a2 / (l * l);
        const auto Z = build_A(p, apply_constraints(z, k));
        for (int j = 0; j < 4; ++j) CHECK(std::abs(Z(3, j)) <= 1e-12 * std::max(1.0, Z.frobenius()));
        CHECK(std::abs(Z(1, 1)) <= 1e-12 * std::max(1.0, Z.frobenius()));
        CHECK(Z(0, 0) == doctest::Approx(t * a2 / (l * l)));
        CHECK(Z(1, 2) == doctest::Approx((m - k) * a2 / (2 * l)));
    }
}

TEST_CASE("classify: spec examples") {
    const auto c1 = classify(lso(1, 1, 2, 2, 2));
    CHECK(c1.matched(1));
    CHECK(c1.recipe(1)->psd_verified);
    CHECK(c1.recipe(1)->dynamically_admissible);
    const auto c4 = classify(lso(1, 1, 0, 2, 1));
    CHECK(c4.matched(4));
    CHECK(c4.recipe(4)->dynamically_admissible);
    const auto cn = classify(lso(1, 1, -1, 1, 1));
    CHECK(cn.infeasible);
    REQUIRE(cn.search);
    CHECK_FALSE(cn.search->feasible);
    CHECK(cn.search->objective < -1e-3);
    CHECK(code_of([] { classify(lso(0, 1, 1, 1, 1)); }) == ErrorCode::ExcludedDegenerate);
    CHECK(code_of([] { classify(lso(1, 1, 1, 1, 0)); }) == ErrorCode::ExcludedDegenerate);
}

TEST_CASE("coeffs_for_item: item 1 at the alpha2 lower bound") {
    FreeChoice f;
    f.alpha2 = 1.0 / 8.0;
    const auto c = coeffs_for_item(1, lso(1, 1, 2, 2, 2), f);
    CHECK(c.beta1 == doctest::Approx(1.0 / 8));
    CHECK(c.beta3 == doctest::Approx(1.0 / 4));
    CHECK(c.alpha1 == doctest::Approx(1.0 / 4));
    CHECK(c.alpha3 == doctest::Approx(1.0));
    CHECK(c.lso_constrained);
    CHECK(is_psd(build_A(lso(1, 1, 2, 2, 2), c)));
}

TEST_CASE("coeffs_for_item: item 4") {
    const auto c = coeffs_for_item(4, lso(1, 1, 0, 2, 1));
    CHECK(c.beta1 == doctest::Approx(0.0));
    CHECK(c.beta2 == doctest::Approx(1.0));
    CHECK(c.beta3 == doctest::Approx(1.0));
    CHECK(c.alpha1 == doctest::Approx(1.0));
    CHECK(c.alpha2 == doctest::Approx(1.0));
    CHECK(c.alpha3 == doctest::Approx(2.0));
}

TEST_CASE("coeffs_for_item errors") {
    CHECK(code_of([] { coeffs_for_item(1, lso(1, 1, 2, 3, 2)); }) == ErrorCode::ItemConditionViolated);
    FreeChoice low;
    low.alpha2 = 1.0 / 16.0;
    CHECK(code_of([&] { coeffs_for_item(1, lso(1, 1, 2, 2, 2), low); }) == ErrorCode::FreeCoeffOutOfRange);
    Rng rng(5);
    const auto s = sample_item(9, rng);
    CHECK(code_of([&] { coeffs_for_item(9, s.params); }) == ErrorCode::FreeCoeffOutOfRange);
}

TEST_CASE("every item recipe yields a PSD form at random admissible points") {
    Rng rng(6);
    for (int item = 1; item <= 9; ++item) {
        CAPTURE(item);
        for (int i = 0; i < 60; ++i) {
            const auto s = sample_item(item, rng);
            CHECK(classify(s.params).matched(item));
            const auto A = build_A(s.params, coeffs_for_item(item, s.params, s.free));
            CHECK(min_eig(A) >= -1e-10 * A.frobenius());
            CHECK(psd_report(A).agree());
        }
    }
}

TEST_CASE("feasibility search: feasible items and mu < 0") {
    Rng rng(7);
    for (int item : {1, 3, 8}) {
        const auto s = sample_item(item, rng);
        const auto r = feasibility_search(s.params);
        CHECK(r.feasible);
        const auto A = build_A(s.params, r.coeffs);
        CHECK(min_eig(A) >= -1e-9 * std::max(1.0, A.frobenius()));
    }
    for (int i = 0; i < 20; ++i) {
        const auto r = feasibility_search(sample_negative_mu(rng));
        CHECK_FALSE(r.feasible);
        CHECK(r.objective < -1e-6);
    }
}

TEST_CASE("classifier completeness on a parameter grid") {
    // Wherever the numeric search certifies PSD coefficients, some item is reported.
    int feasible = 0, total = 0;
    for (double l : {-1.0, 0.5, 2.0})
        for (double t : {-1.0, 0.0, 1.5})
            for (double m : {-0.5, 0.0, 0.7, 2.0, 5.0})
                for (double n : {-1.0, 0.0, 1.0, 3.0})
                    for (double k : {-1.0, 1.0, 2.0}) {
                        const auto p = lso(l, t, m, n, k);
                        const auto cls = classify(p);
                        const auto r = feasibility_search(p);
                        ++total;
                        if (r.feasible) {
                            ++feasible;
                            CAPTURE(l);
                            CAPTURE(t);
                            CAPTURE(m);
                            CAPTURE(n);
                            CAPTURE(k);
                            CHECK_FALSE(cls.matched_items.empty());
                        }
                        if (cls.infeasible) CHECK_FALSE(r.feasible);
                    }
    MESSAGE(feasible << " of " << total << " grid points feasible");
}

TEST_CASE("dynamic admissibility flags follow the conclusion") {
    for (int item = 1; item <= 16; ++item) {
        const bool expected = item == 1 || item == 2 || item == 3 || item == 4 || item == 5 || item == 8;
        CHECK(conclusion_admissible(item) == expected);
    }
}
