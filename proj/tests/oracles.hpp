#pragma once

// Test-only generators and independent numerical oracles.  Everything here
// deliberately avoids the library's production code paths: convolutions are
// done by quadrature, roots by scalar bisection, operators by naive dense
// assembly, so that agreement with the library is meaningful evidence.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>

#include "kreinkit/diagonal_model.hpp"
#include "kreinkit/errors.hpp"
#include "kreinkit/types.hpp"

namespace oracles {

// Run f and report which library error code it raised, if any.
template <typename F>
std::optional<kreinkit::ErrorCode> thrown_code(F&& f) {
    try {
        std::forward<F>(f)();
        return std::nullopt;
    } catch (const kreinkit::Error& e) {
        return e.code();
    }
}

using kreinkit::Complex;
using kreinkit::DiagonalModel;
using kreinkit::Matrix;
using kreinkit::RealVector;
using kreinkit::Vector;

inline Vector random_cvector(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (int j = 0; j < n; ++j) v(j) = Complex(u(rng), u(rng));
    return v;
}

inline Matrix random_hermitian(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix b(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) b(r, c) = Complex(u(rng), u(rng));
    return 0.5 * (b + b.adjoint().eval());
}

// Random diagonal model with eigenvalues in +-[min_abs, 5] and trace
// vectors scaled by 1/sqrt(M) so that Gamma(i) stays O(1) for every M.
inline DiagonalModel random_diagonal(int m, int n, std::mt19937& rng,
                                     double min_abs = 0.0) {
    std::uniform_real_distribution<double> mag(std::max(min_abs, 0.0), 5.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealVector a(m);
    for (int k = 0; k < m; ++k) a(k) = (u(rng) < 0.0 ? -1.0 : 1.0) * mag(rng);
    Matrix v(n, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) v(r, c) = scale * Complex(u(rng), u(rng));
    return DiagonalModel(std::move(a), std::move(v));
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {
inline Complex simpson_rec(const std::function<Complex(double)>& f, double a,
                           double b, Complex fa, Complex fm, Complex fb,
                           Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const Complex flm = f(lm), frm = f(rm);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}
}  // namespace detail

inline Complex integrate(const std::function<Complex(double)>& f, double a,
                         double b, double tol = 1e-12) {
    const Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

// Mean of G_z(|R e - s omega|) over directions omega: closed form ...
inline Complex yukawa_sphere_mean(Complex z, double big_r, double s) {
    const Complex kappa = std::sqrt(z);
    const double rg = std::max(big_r, s), rl = std::min(big_r, s);
    return std::exp(-kappa * rg) * std::sinh(kappa * rl) /
           (4.0 * std::numbers::pi * kappa * rg * rl);
}

// ... and by direct polar-angle quadrature, used to validate the closed form.
inline Complex yukawa_sphere_mean_quad(Complex z, double big_r, double s) {
    const Complex kappa = std::sqrt(z);
    auto f = [&](double theta) {
        const double d =
            std::sqrt(big_r * big_r + s * s - 2.0 * big_r * s * std::cos(theta));
        return 0.5 * std::sin(theta) * std::exp(-kappa * d) /
               (4.0 * std::numbers::pi * d);
    };
    return integrate(f, 0.0, std::numbers::pi, 1e-13);
}

// (G_z * G_zp)(R): 3D convolution of two free Green kernels reduced to a
// radial integral via the sphere mean.  Independent oracle for the closed
// form (G_z - G_zp)(R) / (zp - z) used by the symbolic resolvent.
inline Complex yukawa_convolution_quad(Complex z, Complex zp, double big_r) {
    const Complex kappa = std::sqrt(z);
    const Complex kappap = std::sqrt(zp);
    const double fourpi = 4.0 * std::numbers::pi;
    auto inner = [&](double s) {
        return std::exp(-kappa * big_r) * std::exp(-kappap * s) *
               std::sinh(kappa * s) / (fourpi * kappa * big_r);
    };
    auto outer = [&](double s) {
        return std::sinh(kappa * big_r) * std::exp(-(kappa + kappap) * s) /
               (fourpi * kappa * big_r);
    };
    const double decay = (kappa + kappap).real();
    const double smax = big_r + 80.0 / decay;
    return integrate(inner, 0.0, big_r, 1e-13) +
           integrate(outer, big_r, smax, 1e-13);
}

// Naive entrywise assembly of Gamma(z) for the diagonal model (plain loops,
// no vectorized library path).
inline Matrix gamma_naive(const DiagonalModel& dm, Complex z, Complex z0) {
    const int n = dm.dim_h();
    const int m = dm.dim_state();
    Matrix g = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int p = 0; p < m; ++p) {
                const double a = dm.eigenvalues()(p);
                const Complex d = 0.5 * (1.0 / (z0 - a) + 1.0 / (std::conj(z0) - a)) -
                                  1.0 / (z - a);
                g(j, k) += std::conj(dm.trace_vectors()(j, p)) *
                           dm.trace_vectors()(k, p) * d;
            }
    return g;
}

// Dense assembly of the full extension as an M x M Hermitian matrix:
// build R_Theta(i) entry by entry from its rank-n structure, invert it,
// and read off A = i - R^{-1}.  Brute-force oracle for the spectral solver.
inline Matrix assemble_extension_dense(const DiagonalModel& dm,
                                       const Matrix& theta, Complex z0) {
    const int n = dm.dim_h();
    const int m = dm.dim_state();
    const Complex z(0.0, 1.0);
    Matrix g(m, n), gb(n, m);
    for (int p = 0; p < m; ++p)
        for (int k = 0; k < n; ++k) {
            g(p, k) = dm.trace_vectors()(k, p) / (z - dm.eigenvalues()(p));
            gb(k, p) = std::conj(dm.trace_vectors()(k, p)) / (z - dm.eigenvalues()(p));
        }
    const Matrix kmat = theta + gamma_naive(dm, z, z0);
    Matrix r = Matrix::Zero(m, m);
    for (int p = 0; p < m; ++p) r(p, p) = 1.0 / (z - dm.eigenvalues()(p));
    r += g * kmat.inverse() * gb;
    return z * Matrix::Identity(m, m) - r.inverse();
}

}  // namespace oracles
