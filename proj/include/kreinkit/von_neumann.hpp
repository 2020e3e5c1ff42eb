#pragma once

#include "kreinkit/krein.hpp"

namespace kreinkit {

/// Gamma(i) for the given model (reference point i), validated to be
/// anti-Hermitian with -i Gamma(i) positive definite.  These two facts make
/// the unitary parametrization below well defined.
Matrix gamma_i(const OperatorModel& model);

/// Validation used by gamma_i and by ReducedUnitary; throws
/// GammaNotAntiHermitian / GammaNotPositive.
void validate_gamma_i(const Matrix& gamma, double tol = kDefaultTol);

/// Hermitian square root S of B = -i Gamma(i), S^2 = B, S > 0.
Matrix gamma_sqrt(const Matrix& gamma);

/// Deficiency-space unitary W pulled down to the boundary space: W is
/// unitary for the inner product weighted by -i Gamma(i) rather than the
/// Euclidean one.  Gamma-unitarity W* (-i Gamma) W = -i Gamma is validated
/// on construction.
class ReducedUnitary {
  public:
    ReducedUnitary(Matrix w, Matrix gamma, double tol = kDefaultTol);

    const Matrix& w() const { return w_; }
    const Matrix& gamma() const { return gamma_; }
    int dim() const { return static_cast<int>(w_.rows()); }

    /// || W* (-i Gamma) W - (-i Gamma) ||_F / || -i Gamma ||_F.
    double unitarity_defect() const;

  private:
    Matrix w_;
    Matrix gamma_;
};

/// Forward map Theta -> W = -(1 + 2 (Theta - Gamma)^{-1} Gamma); Hermitian
/// Theta always gives an invertible Theta - Gamma(i).
ReducedUnitary theta_to_w(const ThetaParam& theta, const Matrix& gamma);

/// Closed form of W^{-1} = -(1 - 2 (Theta + Gamma)^{-1} Gamma); used as an
/// independent cross-check of the forward map.
Matrix theta_to_w_inverse(const ThetaParam& theta, const Matrix& gamma);

/// Inverse map W -> Theta = Gamma (W - 1)(W + 1)^{-1}.  Throws
/// WPlusOneSingular when -1 is (numerically) in the spectrum of W, i.e.
/// at the boundary parameters escaping to infinity.
ThetaParam w_to_theta(const ReducedUnitary& wu);

/// Diagonal model only: residual of the Cayley relation between the two
/// deficiency frames, max over probe charges of
///   || G(-i) Q - U_A G(i) Q || / || G(i) Q ||
/// with U_A acting spectrally as (-a + i)/(-a - i), plus the equivalent
/// resolvent forms (G(-i) - G(i)) Q = +-2i R(-+i) G(+-i) Q.
double cayley_check(const DiagonalModel& model);

}  // namespace kreinkit
