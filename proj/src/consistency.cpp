#include "heatrate/consistency.hpp"

#include <algorithm>
#include <cmath>

namespace heatrate {

FreeEnergyCoeffs apply_constraints(FreeEnergyCoeffs c, double kappa) {
    c.beta4 = kappa * c.beta1;
    c.beta5 = kappa * c.alpha2;
    c.beta6 = kappa * c.beta3;
    c.alpha4 = kappa * c.beta5;
    c.lso_constrained = true;
    return c;
}

QuadForm4 build_A(const MaterialParams& p, const FreeEnergyCoeffs& c) { return build_A(p, c, p.theta_ref); }

QuadForm4 build_A(const MaterialParams& p, const FreeEnergyCoeffs& c, double theta) {
    if (p.lambda == 0.0) throw Error(ErrorCode::ZeroLambda, "A is defined for lambda != 0 only");
    if (!(theta > 0.0)) throw Error(ErrorCode::NonPositiveTemperature, "theta must be > 0");
    const double l = p.lambda, t = p.tau, mu = p.mu, nu = p.nu, k = p.kappa;
    const double a1 = c.alpha1, a2 = c.alpha2, b1 = c.beta1, b2 = c.beta2, b3 = c.beta3, a3 = c.alpha3;
    QuadForm4 A;
    A.set(0, 0, b1 / l);
    A.set(1, 1, (t * a2 - l * b1) / l);
    A.set(2, 2, mu * b3 / l);
    A.set(3, 3, t * nu * k * a2 / l - k * b3);
    A.set(0, 1, (a2 + t * b1 - l * a1) / (2 * l));
    A.set(0, 2, (b1 * mu * theta + b3 * theta - l) / (2 * l * theta));
    A.set(0, 3, (b1 * nu * t + k * a2 - l * b2) / (2 * l));
    A.set(1, 2, (mu * a2 + t * b3 - l * b2) / (2 * l));
    A.set(1, 3, (t * (k + nu) * a2 - l * (k * b1 + b3)) / (2 * l));
    A.set(2, 3, (k * mu * a2 + nu * t * b3 - l * a3) / (2 * l));
    return A;
}

namespace {

template <int N>
double det_sub(const Eigen::Matrix4d& m, const std::array<int, N>& idx) {
    Eigen::Matrix<double, N, N> s;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) s(i, j) = m(idx[i], idx[j]);
    return s.determinant();
}

constexpr std::array<std::array<int, 2>, 6> kPairs{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

}  // namespace

double PrincipalMinors::d(int h, int k) const {
    if (h > k) std::swap(h, k);
    for (std::size_t i = 0; i < kPairs.size(); ++i)
        if (kPairs[i][0] == h && kPairs[i][1] == k) return order2[i];
    throw Error(ErrorCode::InvalidArgument, "minor index out of range");
}

double PrincipalMinors::d(int h) const {
    if (h < 1 || h > 4) throw Error(ErrorCode::InvalidArgument, "minor index out of range");
    return order3[h - 1];
}

std::array<double, 15> PrincipalMinors::all() const {
    std::array<double, 15> out{};
    std::copy(order1.begin(), order1.end(), out.begin());
    std::copy(order2.begin(), order2.end(), out.begin() + 4);
    std::copy(order3.begin(), order3.end(), out.begin() + 10);
    out[14] = det;
    return out;
}

PrincipalMinors principal_minors(const QuadForm4& a) {
    const Eigen::Matrix4d m = a.matrix();
    PrincipalMinors r;
    for (int i = 0; i < 4; ++i) r.order1[i] = m(i, i);
    for (std::size_t i = 0; i < kPairs.size(); ++i) {
        std::array<int, 2> keep{};
        int n = 0;
        for (int j = 1; j <= 4; ++j)
            if (j != kPairs[i][0] && j != kPairs[i][1]) keep[n++] = j - 1;
        r.order2[i] = det_sub<2>(m, keep);
    }
    for (int h = 1; h <= 4; ++h) {
        std::array<int, 3> keep{};
        int n = 0;
        for (int j = 1; j <= 4; ++j)
            if (j != h) keep[n++] = j - 1;
        r.order3[h - 1] = det_sub<3>(m, keep);
    }
    r.det = m.determinant();
    return r;
}

bool is_psd(const QuadForm4& a, double tol) {
    if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be >= 0");
    const auto mins = principal_minors(a);
    const double f = a.frobenius();
    auto ok = [&](double v, int order) { return v >= -tol * std::max(1.0, std::pow(f, order)); };
    for (double v : mins.order1)
        if (!ok(v, 1)) return false;
    for (double v : mins.order2)
        if (!ok(v, 2)) return false;
    for (double v : mins.order3)
        if (!ok(v, 3)) return false;
    return ok(mins.det, 4);
}

std::array<double, 4> jacobi_eigenvalues(const Eigen::Matrix4d& m) {
    Eigen::Matrix4d a = 0.5 * (m + m.transpose());
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += a(i, j) * a(i, j);
        if (off <= 1e-300 || off <= 1e-34 * a.squaredNorm()) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, 4> ev{a(0, 0), a(1, 1), a(2, 2), a(3, 3)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

PsdReport psd_report(const QuadForm4& a, double tol) {
    PsdReport r;
    r.minors_psd = is_psd(a, tol);
    const auto ev = jacobi_eigenvalues(a.matrix());
    r.min_eigenvalue = ev[0];
    r.relative_min_eigenvalue = ev[0] / std::max(1.0, a.frobenius());
    r.eigen_psd = r.relative_min_eigenvalue >= -tol;
    return r;
}

bool Interval::contains(double v, double rel_tol) const {
    const double slack_lo = rel_tol * std::max(1.0, std::abs(lo));
    const double slack_hi = rel_tol * std::max(1.0, std::abs(hi));
    const bool above = lo_closed ? v >= lo - slack_lo : v > lo - slack_lo;
    const bool below = hi_closed ? v <= hi + slack_hi : v < hi + slack_hi;
    return above && below;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool LsoClassification::matched(int item) const {
    return std::find(matched_items.begin(), matched_items.end(), item) != matched_items.end();
}

const ItemRecipe* LsoClassification::recipe(int item) const {
    for (const auto& r : recipes)
        if (r.item == item) return &r;
    return nullptr;
}

}  // namespace heatrate
