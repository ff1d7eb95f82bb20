// Numerical search for free-energy coefficients that make A positive semidefinite.
//
// Maximizes t subject to A(c) - tI >= 0 with a log-det barrier and a box on the
// normalized coefficients. A(c) is affine in c = (alpha1, alpha2, alpha3, beta1, beta2, beta3).
#include "heatrate/consistency.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace heatrate {

namespace {

FreeEnergyCoeffs from_vector(const Eigen::VectorXd& c) {
    FreeEnergyCoeffs f;
    f.alpha1 = c[0];
    f.alpha2 = c[1];
    f.alpha3 = c[2];
    f.beta1 = c[3];
    f.beta2 = c[4];
    f.beta3 = c[5];
    return f;
}

struct Barrier {
    Eigen::Matrix4d A0;
    std::vector<Eigen::Matrix4d> E;  // normalized directions of the active coefficients
    double box2 = 1.0;
    double s = 1.0;

    int n() const { return static_cast<int>(E.size()) + 1; }

    Eigen::Matrix4d F(const Eigen::VectorXd& z) const {
        Eigen::Matrix4d m = A0;
        for (std::size_t k = 0; k < E.size(); ++k) m += z[static_cast<Eigen::Index>(k)] * E[k];
        m -= z[n() - 1] * Eigen::Matrix4d::Identity();
        return m;
    }

    // Barrier value, or +inf outside the domain.
    double value(const Eigen::VectorXd& z) const {
        const int m = n() - 1;
        double v = -s * z[m];
        for (int k = 0; k < m; ++k) {
            const double r = box2 - z[k] * z[k];
            if (!(r > 0)) return INFINITY;
            v -= std::log(r);
        }
        Eigen::LLT<Eigen::Matrix4d> llt(F(z));
        if (llt.info() != Eigen::Success) return INFINITY;
        const Eigen::Matrix4d L = llt.matrixL();
        for (int i = 0; i < 4; ++i) {
            if (!(L(i, i) > 0)) return INFINITY;
            v -= 2.0 * std::log(L(i, i));
        }
        return v;
    }

    bool newton_step(const Eigen::VectorXd& z, Eigen::VectorXd& g, Eigen::MatrixXd& H) const {
        const int m = n() - 1;
        Eigen::LLT<Eigen::Matrix4d> llt(F(z));
        if (llt.info() != Eigen::Success) return false;
        const Eigen::Matrix4d Fi = llt.solve(Eigen::Matrix4d::Identity());
        std::vector<Eigen::Matrix4d> FD(n());
        for (int k = 0; k < m; ++k) FD[k] = Fi * E[k];
        FD[m] = -Fi;
        g.setZero(n());
        H.setZero(n(), n());
        for (int a = 0; a < n(); ++a) {
            g[a] = -FD[a].trace();
            for (int b = a; b < n(); ++b) {
                H(a, b) = (FD[a] * FD[b]).trace();
                H(b, a) = H(a, b);
            }
        }
        g[m] -= s;
        for (int k = 0; k < m; ++k) {
            const double r = box2 - z[k] * z[k];
            g[k] += 2.0 * z[k] / r;
            H(k, k) += 2.0 * (box2 + z[k] * z[k]) / (r * r);
        }
        return true;
    }
};

}  // namespace

FeasibilityResult feasibility_search(const MaterialParams& p, const FeasibilityOptions& opt) {
    if (p.lambda == 0.0) throw Error(ErrorCode::ZeroLambda, "feasibility search needs lambda != 0");
    if (!(opt.box > 0)) throw Error(ErrorCode::InvalidArgument, "box must be > 0");

    const FreeEnergyCoeffs zero;
    const Eigen::Matrix4d A0 = build_A(p, zero).matrix();
    Barrier bar;
    bar.A0 = A0;
    std::vector<int> active;
    std::vector<double> scale;
    for (int k = 0; k < 6; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(6);
        e[k] = 1.0;
        const Eigen::Matrix4d Ek = build_A(p, from_vector(e)).matrix() - A0;
        const double nk = Ek.norm();
        if (nk == 0.0) continue;
        active.push_back(k);
        scale.push_back(nk);
        bar.E.push_back(Ek / nk);
    }
    const double B = opt.box * std::max(1.0, A0.norm());
    bar.box2 = B * B;

    const int n = bar.n();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es0(A0, Eigen::EigenvaluesOnly);
    z[n - 1] = es0.eigenvalues()[0] - 1.0;

    const double n_constraints = 4.0 + 2.0 * (n - 1);
    int steps = 0;
    Eigen::VectorXd g;
    Eigen::MatrixXd H;
    for (bar.s = 1.0; n_constraints / bar.s > 1e-13 && steps < opt.max_newton; bar.s *= 10.0) {
        bool stalled = false;
        for (int inner = 0; inner < 60 && steps < opt.max_newton; ++inner) {
            if (!bar.newton_step(z, g, H)) {
                stalled = true;
                break;
            }
            Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
            if (ldlt.info() != Eigen::Success) {
                stalled = true;
                break;
            }
            const Eigen::VectorXd dz = ldlt.solve(-g);
            if (!dz.allFinite()) {
                stalled = true;
                break;
            }
            const double dec = -g.dot(dz);
            ++steps;
            if (dec / 2.0 < 1e-12) break;
            const double f0 = bar.value(z);
            double a = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls, a *= 0.5) {
                const Eigen::VectorXd zn = z + a * dz;
                const double f1 = bar.value(zn);
                if (std::isfinite(f1) && f1 <= f0 - 0.25 * a * dec) {
                    z = zn;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                stalled = true;
                break;
            }
        }
        if (stalled) break;
    }

    Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
    for (std::size_t i = 0; i < active.size(); ++i) c[active[i]] = z[static_cast<Eigen::Index>(i)] / scale[i];

    FeasibilityResult r;
    r.coeffs = apply_constraints(from_vector(c), p.kappa);
    const QuadForm4 A = build_A(p, r.coeffs);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(A.matrix(), Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues()[0];
    r.objective = r.min_eigenvalue / std::max(1.0, A.frobenius());
    r.feasible = r.objective >= -opt.accept_tol;
    r.newton_steps = steps;
    return r;
}

}  // namespace heatrate
