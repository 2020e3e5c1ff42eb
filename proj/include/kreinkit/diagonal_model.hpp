#pragma once

#include "kreinkit/types.hpp"

namespace kreinkit {

/// Finite model of a restricted self-adjoint operator: A acts diagonally on
/// C^M with real eigenvalues a_m, and the restriction is described by a
/// surjective trace map tau : C^M -> C^n with rows given by the conjugated
/// trace vectors, (tau phi)_j = sum_m conj(V(j,m)) phi(m).
///
/// Everything downstream (Krein resolvents, the von Neumann bridge, the
/// spectral solver) only needs the operations exposed here.
class DiagonalModel {
  public:
    /// eigenvalues: size M; trace_vectors: n x M, must have full row rank.
    DiagonalModel(RealVector eigenvalues, Matrix trace_vectors);

    int dim_state() const { return static_cast<int>(a_.size()); }
    int dim_h() const { return static_cast<int>(v_.rows()); }

    const RealVector& eigenvalues() const { return a_; }
    const Matrix& trace_vectors() const { return v_; }

    /// Throws SpectralPointInSpectrum if z collides with an eigenvalue.
    void ensure_resolvent_point(Complex z) const;
    bool in_resolvent_set(Complex z) const;

    /// (-A + z)^{-1} phi, componentwise phi_m / (z - a_m).
    Vector resolvent_apply(Complex z, const Vector& phi) const;

    /// A phi.
    Vector apply_a(const Vector& phi) const;

    /// A^{-1} phi; throws ZeroInSpectrum when some |a_m| vanishes.
    Vector apply_a_inverse(const Vector& phi) const;

    /// tau phi, an n-vector of boundary values.
    Vector trace_apply(const Vector& phi) const;

    /// G(z) Q = (tau R(zbar))* Q, componentwise (V^T Q)_m / (z - a_m).
    Vector g_apply(Complex z, const Vector& q) const;

    /// Gbreve(z) phi = tau R(z) phi.
    Vector g_breve_apply(Complex z, const Vector& phi) const;

    /// G* Q = (G(z0) + G(z0bar)) Q / 2 (just G(z0) Q when z0 is real).
    Vector g_star_apply(const ReferencePoint& ref, const Vector& q) const;

    /// Gdiamond Q = (G(z0) - G(z0bar)) Q / 2 (zero when z0 is real).
    Vector g_diamond_apply(const ReferencePoint& ref, const Vector& q) const;

    /// Gamma(z) = tau (G* - G(z)), the n x n Krein matrix block.
    Matrix gamma_matrix(Complex z, const ReferencePoint& ref) const;

    /// tau G(z) as an n x n matrix (used by the Woodbury-style solve that
    /// inverts a Krein resolvent).
    Matrix tau_g_matrix(Complex z) const;

  private:
    void ensure_dim(const Vector& x, int expected, const char* what) const;

    RealVector a_;  // eigenvalues of A, length M
    Matrix v_;      // trace vectors, n x M
};

}  // namespace kreinkit
