#include "kreinkit/diagonal_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kreinkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string complex_str(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

DiagonalModel::DiagonalModel(RealVector eigenvalues, Matrix trace_vectors)
    : a_(std::move(eigenvalues)), v_(std::move(trace_vectors)) {
    const int m = static_cast<int>(a_.size());
    const int n = static_cast<int>(v_.rows());
    if (m < 1)
        fail(ErrorCode::ConfigInvalid, "diagonal model needs at least one eigenvalue");
    if (n < 1)
        fail(ErrorCode::ConfigInvalid, "diagonal model needs at least one trace vector");
    if (static_cast<int>(v_.cols()) != m)
        fail(ErrorCode::DimensionMismatch,
             "trace vectors must have one column per eigenvalue (got " +
                 std::to_string(v_.cols()) + " columns for " + std::to_string(m) +
                 " eigenvalues)");
    if (n > m)
        fail(ErrorCode::ConfigInvalid,
             "boundary dimension " + std::to_string(n) +
                 " exceeds state dimension " + std::to_string(m));
    if (!a_.allFinite() || !v_.allFinite())
        fail(ErrorCode::ConfigInvalid, "model data must be finite");

    // The boundary calculus needs a surjective trace map, i.e. V of full
    // row rank; without it the charge is not determined by the state.
    Eigen::JacobiSVD<Matrix> svd(v_);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(n - 1);
    if (smax <= 0.0 || smin <= smax * std::max(m, n) * kEps * 100.0)
        fail(ErrorCode::ConfigInvalid,
             "trace map is not surjective: smallest singular value " +
                 std::to_string(smin) + " vs largest " + std::to_string(smax));
}

void DiagonalModel::ensure_dim(const Vector& x, int expected, const char* what) const {
    if (static_cast<int>(x.size()) != expected)
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + ": expected size " + std::to_string(expected) +
                 ", got " + std::to_string(x.size()));
}

bool DiagonalModel::in_resolvent_set(Complex z) const {
    for (int m = 0; m < dim_state(); ++m) {
        const double scale = std::max({1.0, std::abs(z), std::abs(a_(m))});
        if (std::abs(z - Complex(a_(m))) <= 1e3 * kEps * scale) return false;
    }
    return true;
}

void DiagonalModel::ensure_resolvent_point(Complex z) const {
    if (!in_resolvent_set(z))
        fail(ErrorCode::SpectralPointInSpectrum,
             "z = " + complex_str(z) + " collides with an eigenvalue of A");
}

Vector DiagonalModel::resolvent_apply(Complex z, const Vector& phi) const {
    ensure_dim(phi, dim_state(), "resolvent_apply");
    ensure_resolvent_point(z);
    Vector out(dim_state());
    for (int m = 0; m < dim_state(); ++m) out(m) = phi(m) / (z - a_(m));
    return out;
}

Vector DiagonalModel::apply_a(const Vector& phi) const {
    ensure_dim(phi, dim_state(), "apply_a");
    return a_.cast<Complex>().asDiagonal() * phi;
}

Vector DiagonalModel::apply_a_inverse(const Vector& phi) const {
    ensure_dim(phi, dim_state(), "apply_a_inverse");
    const double scale = std::max(1.0, a_.cwiseAbs().maxCoeff());
    Vector out(dim_state());
    for (int m = 0; m < dim_state(); ++m) {
        if (std::abs(a_(m)) <= 1e3 * kEps * scale)
            fail(ErrorCode::ZeroInSpectrum,
                 "eigenvalue a[" + std::to_string(m) + "] = " + std::to_string(a_(m)) +
                     " makes A non-invertible");
        out(m) = phi(m) / a_(m);
    }
    return out;
}

Vector DiagonalModel::trace_apply(const Vector& phi) const {
    ensure_dim(phi, dim_state(), "trace_apply");
    return v_.conjugate() * phi;
}

Vector DiagonalModel::g_apply(Complex z, const Vector& q) const {
    ensure_dim(q, dim_h(), "g_apply");
    ensure_resolvent_point(z);
    Vector w = v_.transpose() * q;
    for (int m = 0; m < dim_state(); ++m) w(m) /= (z - a_(m));
    return w;
}

Vector DiagonalModel::g_breve_apply(Complex z, const Vector& phi) const {
    return trace_apply(resolvent_apply(z, phi));
}

Vector DiagonalModel::g_star_apply(const ReferencePoint& ref, const Vector& q) const {
    ensure_dim(q, dim_h(), "g_star_apply");
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    Vector w = v_.transpose() * q;
    for (int m = 0; m < dim_state(); ++m)
        w(m) *= 0.5 * (1.0 / (z0 - a_(m)) + 1.0 / (std::conj(z0) - a_(m)));
    return w;
}

Vector DiagonalModel::g_diamond_apply(const ReferencePoint& ref, const Vector& q) const {
    ensure_dim(q, dim_h(), "g_diamond_apply");
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    Vector w = v_.transpose() * q;
    for (int m = 0; m < dim_state(); ++m)
        w(m) *= 0.5 * (1.0 / (z0 - a_(m)) - 1.0 / (std::conj(z0) - a_(m)));
    return w;
}

Matrix DiagonalModel::gamma_matrix(Complex z, const ReferencePoint& ref) const {
    ensure_resolvent_point(z);
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    Vector d(dim_state());
    for (int m = 0; m < dim_state(); ++m)
        d(m) = 0.5 * (1.0 / (z0 - a_(m)) + 1.0 / (std::conj(z0) - a_(m))) -
               1.0 / (z - a_(m));
    return v_.conjugate() * d.asDiagonal() * v_.transpose();
}

Matrix DiagonalModel::tau_g_matrix(Complex z) const {
    ensure_resolvent_point(z);
    Vector d(dim_state());
    for (int m = 0; m < dim_state(); ++m) d(m) = 1.0 / (z - a_(m));
    return v_.conjugate() * d.asDiagonal() * v_.transpose();
}

}  // namespace kreinkit
