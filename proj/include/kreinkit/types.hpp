#pragma once

#include <complex>

#include <Eigen/Dense>

#include "kreinkit/errors.hpp"

namespace kreinkit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;      // states / charges
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Library-wide default tolerance for residual checks.
inline constexpr double kDefaultTol = 1e-10;

/// Principal square root: branch cut along (-inf, 0], Re(sqrt) >= 0.
inline Complex sqrt_principal(Complex z) { return std::sqrt(z); }

inline bool is_real(Complex z) { return z.imag() == 0.0; }

/// The reference point z0 used to split extension states into a regular
/// part and a charge.  Nonreal by default; a real reference point is only
/// meaningful together with an invertible boundary parameter, so it has to
/// be requested explicitly via real_axis().
class ReferencePoint {
  public:
    ReferencePoint() : z0_(0.0, 1.0) {}

    explicit ReferencePoint(Complex z0) : z0_(z0) {
        if (z0.imag() == 0.0)
            fail(ErrorCode::ConfigInvalid,
                 "reference point must have nonzero imaginary part; "
                 "use ReferencePoint::real_axis for a real one");
    }

    /// Real reference point x.  The caller is responsible for pairing it
    /// with an invertible Theta and x in the resolvent set of A; extension
    /// construction re-checks both.
    static ReferencePoint real_axis(double x) { return ReferencePoint(x, RealTag{}); }

    Complex z0() const { return z0_; }
    bool real() const { return z0_.imag() == 0.0; }

  private:
    struct RealTag {};
    ReferencePoint(double x, RealTag) : z0_(x, 0.0) {}
    Complex z0_;
};

/// Krein Q-matrix sample: the value of Gamma at a spectral point, tagged
/// with the point and the reference point it was built from.
struct GammaMatrix {
    Matrix value;
    Complex at;
    Complex z0;
};

/// Relative deviation of M from Hermitian, measured in Frobenius norm.
double hermiticity_defect(const Matrix& m);

/// Relative deviation of M from anti-Hermitian.
double anti_hermiticity_defect(const Matrix& m);

}  // namespace kreinkit
