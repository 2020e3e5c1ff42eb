#pragma once

#include "kreinkit/model.hpp"

namespace kreinkit {

/// Hermitian boundary parameter Theta labelling one self-adjoint extension.
/// Hermiticity is validated on construction (relative Frobenius defect
/// below tol) and the stored matrix is exactly symmetrized afterwards.
class ThetaParam {
  public:
    explicit ThetaParam(Matrix m, double tol = 1e-12);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    double norm() const { return m_.norm(); }

    /// Smallest/largest singular value ratio check used by operations that
    /// need Theta^{-1}.
    bool invertible() const;

  private:
    Matrix m_;
};

/// One self-adjoint extension A_Theta of the restricted operator, presented
/// through its resolvent
///   R_Theta(z) = R(z) + G(z) (Theta + Gamma(z))^{-1} Gbreve(z).
/// Holds the model, the boundary parameter and the reference point, and
/// owns the (Theta + Gamma(z)) solves.
class KreinExtension {
  public:
    KreinExtension(OperatorModel model, ThetaParam theta,
                   ReferencePoint ref = ReferencePoint(),
                   double tol = kDefaultTol);

    const OperatorModel& model() const { return model_; }
    const ThetaParam& theta() const { return theta_; }
    const ReferencePoint& ref() const { return ref_; }
    double tol() const { return tol_; }
    int dim_h() const { return theta_.dim(); }

    const DiagonalModel& diagonal() const;   // throws unless diagonal model
    const PointModel3D& point() const;       // throws unless point model

    Matrix gamma(Complex z) const { return gamma_matrix_of(model_, z, ref_); }
    Matrix krein_matrix(Complex z) const { return theta_.matrix() + gamma(z); }

    /// Solve (Theta + Gamma(z)) x = rhs with singularity detection: a real
    /// z where the matrix degenerates is point spectrum of A_Theta and is
    /// reported as KreinMatrixSingular.
    Vector solve_krein(Complex z, const Vector& rhs) const;

    // -- diagonal-model state operations ------------------------------
    Vector resolvent_apply(Complex z, const Vector& phi) const;
    Vector charge_of(Complex z, const Vector& phi) const;

    // -- point-model state operations ----------------------------------
    KernelField resolvent_apply(Complex z, const KernelField& phi) const;
    Vector charge_of(Complex z, const KernelField& phi) const;

  private:
    OperatorModel model_;
    ThetaParam theta_;
    ReferencePoint ref_;
    double tol_;
};

/// Extension state split into a regular part phi* (in the domain of the
/// unperturbed A) and a charge Q; admissible iff tau(phi*) = Theta Q.
struct DecomposedState {   // diagonal model: phi* is a coefficient vector
    Vector regular;
    Vector charge;
};

struct DecomposedField {   // point model: phi* is a kernel field
    KernelField regular;
    Vector charge;
};

/// || tau(phi*) - Theta Q ||, the admissibility defect.
double boundary_residual(const KreinExtension& ext, const DecomposedState& s);
double boundary_residual(const KreinExtension& ext, const DecomposedField& s);

/// phi_z = phi* + (G* - G(z)) Q, the z-shifted regular representative;
/// reference_shift_back inverts it.  tau(phi_z) = (Theta + Gamma(z)) Q for
/// admissible states.
Vector reference_shift(const KreinExtension& ext, Complex z, const DecomposedState& s);
Vector reference_shift_back(const KreinExtension& ext, Complex z,
                            const Vector& phi_z, const Vector& charge);
KernelField reference_shift(const KreinExtension& ext, Complex z, const DecomposedField& s);
KernelField reference_shift_back(const KreinExtension& ext, Complex z,
                                 const KernelField& phi_z, const Vector& charge);

/// Split a raw state psi in ran R_Theta(z) into (phi*, Q): inverts the
/// Krein resolvent through a rank-n update of the diagonal solve, takes the
/// charge of the preimage, and shifts the reference point back.  Diagonal
/// model only.  The decomposition must come out z-independent; feeding
/// different z through this route is a nontrivial consistency check.
DecomposedState decompose(const KreinExtension& ext, Complex z, const Vector& psi);

/// A_Theta phi for an admissible decomposed state (diagonal model):
///   A phi* + Re(z0) G* Q + i Im(z0) Gdiamond Q.
/// Throws BoundaryViolation when tau(phi*) = Theta Q fails at tolerance.
Vector apply_extension(const KreinExtension& ext, const DecomposedState& s);

/// A_Theta^{-1} phi for the extension with real reference point 0 (needs
/// 0 in the resolvent set of A and invertible Theta):
///   A^{-1} phi - G(0) Theta^{-1} Gbreve(0) phi  =  -R_Theta(0) phi.
/// The sign is pinned by the roundtrip contract with apply_extension.
Vector inverse_apply(const KreinExtension& ext, const Vector& phi);

}  // namespace kreinkit
