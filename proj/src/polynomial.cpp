// Roots of polynomials up to degree three.
#include "heatrate/stability.hpp"

#include <algorithm>
#include <cmath>

namespace heatrate {

namespace {

constexpr double kCluster = 1e-8;

std::vector<double> trim(std::vector<double> desc) {
    while (!desc.empty() && desc.front() == 0.0) desc.erase(desc.begin());
    return desc;
}

std::vector<double> derivative(const std::vector<double>& desc) {
    std::vector<double> d;
    const int n = static_cast<int>(desc.size()) - 1;
    for (int i = 0; i < n; ++i) d.push_back(desc[i] * (n - i));
    return d;
}

// Newton steps on f, kept only while |f| decreases.
cplx polish(const std::vector<double>& f, cplx w, int steps = 4) {
    const auto df = derivative(f);
    cplx fw = polyval(f, w);
    for (int i = 0; i < steps; ++i) {
        const cplx d = polyval(df, w);
        if (d == 0.0) break;
        const cplx wn = w - fw / d;
        const cplx fn = polyval(f, wn);
        if (!(std::abs(fn) < std::abs(fw))) break;
        w = wn;
        fw = fn;
    }
    return w;
}

// Monic quadratic w^2 + b w + c with cancellation-free formulas.
std::array<cplx, 2> quadratic(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + (b >= 0 ? s : -s));
        if (q == 0.0) return {cplx(0.0), cplx(0.0)};
        return {cplx(q), cplx(c / q)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {cplx(-0.5 * b, -im), cplx(-0.5 * b, im)};
}

// One real root of the monic cubic w^3 + a w^2 + b w + d, the largest in magnitude when all are real.
double real_root(double a, double b, double d) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    double y;
    if (disc > 0.0) {
        const double u = std::cbrt(-q / 2.0 - std::copysign(std::sqrt(disc), q));
        y = u == 0.0 ? 0.0 : u - p / (3.0 * u);
    } else if (p == 0.0) {
        y = 0.0;
    } else {
        const double r = std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (2.0 * p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        double best = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double yk = 2.0 * r * std::cos(phi - 2.0 * M_PI * k / 3.0);
            if (std::abs(yk) > std::abs(best)) best = yk;
        }
        y = best;
    }
    return y - a / 3.0;
}

double real_polish(const std::vector<double>& f, double w) {
    const auto df = derivative(f);
    double fw = polyval(f, w).real();
    for (int i = 0; i < 8; ++i) {
        const double d = polyval(df, w).real();
        if (d == 0.0) break;
        const double wn = w - fw / d;
        const double fn = polyval(f, wn).real();
        if (!(std::abs(fn) < std::abs(fw))) break;
        w = wn;
        fw = fn;
    }
    return w;
}

void order(std::vector<cplx>& r) {
    std::sort(r.begin(), r.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() < y.imag();
    });
}

}  // namespace

cplx polyval(const std::vector<double>& desc, cplx w) {
    cplx v = 0.0;
    for (double c : desc) v = v * w + c;
    return v;
}

std::vector<cplx> polynomial_roots(std::vector<double> desc) {
    desc = trim(std::move(desc));
    if (desc.size() < 2) throw Error(ErrorCode::DegenerateCubic, "polynomial has no roots (degree 0)");
    if (desc.size() > 4) throw Error(ErrorCode::InvalidArgument, "degree above 3 is not supported");
    for (double c : desc)
        if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
    const double lead = desc.front();
    std::vector<double> m;
    for (double c : desc) m.push_back(c / lead);

    std::vector<cplx> r;
    if (m.size() == 2) {
        r = {cplx(-m[1])};
    } else if (m.size() == 3) {
        const auto q = quadratic(m[1], m[2]);
        r = {q[0], q[1]};
    } else {
        const double a = m[1], b = m[2], d = m[3];
        const double x = real_polish(m, real_root(a, b, d));
        // Deflate: (w - x)(w^2 + B w + C).
        const double B = a + x;
        const double C = std::abs(x) > 1.0 ? -d / x : b + x * B;
        const auto q = quadratic(B, C);
        r = {cplx(x), q[0], q[1]};
        if (q[0].imag() != 0.0) {
            const cplx z = polish(m, q[1]);
            r[1] = std::conj(z);
            r[2] = z;
        } else {
            r[1] = cplx(real_polish(m, q[0].real()));
            r[2] = cplx(real_polish(m, q[1].real()));
        }
    }

    // Repeated roots: re-polish jointly as a root of the derivative.
    double scale = 1.0;
    for (const auto& z : r) scale = std::max(scale, std::abs(z));
    const auto dm = derivative(m);
    if (r.size() >= 2) {
        bool all3 = r.size() == 3;
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j)
                if (std::abs(r[i] - r[j]) >= kCluster * scale) all3 = false;
        if (all3) {
            const cplx t(-m[1] / 3.0);
            r = {t, t, t};
        } else {
            for (std::size_t i = 0; i < r.size(); ++i)
                for (std::size_t j = i + 1; j < r.size(); ++j) {
                    if (std::abs(r[i] - r[j]) >= kCluster * scale) continue;
                    cplx mid = 0.5 * (r[i] + r[j]);
                    if (std::abs(mid.imag()) < kCluster * scale) mid = cplx(real_polish(dm, mid.real()));
                    else mid = polish(dm, mid);
                    r[i] = r[j] = mid;
                }
        }
    }
    order(r);
    return r;
}

std::array<cplx, 3> mode_roots(const CubicCoeffs& c) {
    if (c.c3 == 0.0) throw Error(ErrorCode::DegenerateCubic, "leading coefficient c3 is zero");
    const auto r = polynomial_roots(c.descending());
    return {r[0], r[1], r[2]};
}

}  // namespace heatrate
