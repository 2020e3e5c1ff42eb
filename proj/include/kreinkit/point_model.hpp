#pragma once

#include <functional>
#include <vector>

#include "kreinkit/types.hpp"

namespace kreinkit {

/// Free-space Green kernel of -Laplace + z on R^3 at radius r:
///   G_z(r) = exp(-sqrt(z) r) / (4 pi r),
/// principal branch, cut along (-inf, 0].  Throws DegenerateRadius for
/// r <= 0 and BranchCutViolation for z on the cut.
Complex free_green(Complex z, double r);

/// Finite part of G_z at its own center: lim_{r->0} (G_z(r) - 1/(4 pi r)).
Complex free_green_finite_part(Complex z);

/// Symmetrized reference kernel G*(r) = (G_{z0}(r) + G_{z0bar}(r)) / 2.
/// For the default z0 = i this is cos(r/sqrt2) exp(-r/sqrt2) / (4 pi r).
Complex green_star(const ReferencePoint& ref, double r);

/// One Yukawa-type kernel term: amplitude * G_z(|x - center|).
struct KernelTerm {
    Vec3 center;
    Complex z;
    Complex amplitude;
};

/// State of the 3D point-interaction model: a finite combination of free
/// Green kernels plus an optional smooth remainder.  tau, R(z) and the
/// Laplacian act symbolically on the kernel terms, so resolvent chains stay
/// exact; evaluation regularizes groups of kernels whose 1/(4 pi r)
/// singularities cancel at a common center.
class KernelField {
  public:
    using Evaluator = std::function<Complex(const Vec3&)>;

    KernelField() = default;
    explicit KernelField(std::vector<KernelTerm> terms, Evaluator smooth = nullptr);

    const std::vector<KernelTerm>& terms() const { return terms_; }
    bool has_smooth_part() const { return static_cast<bool>(smooth_); }
    bool empty() const { return terms_.empty() && !smooth_; }

    /// Pointwise value.  At a kernel center the singular coefficients must
    /// cancel (SingularAtCenter otherwise); the finite parts survive.
    Complex eval(const Vec3& x) const;

    KernelField scaled(Complex c) const;
    KernelField operator+(const KernelField& other) const;
    KernelField operator-(const KernelField& other) const;

    /// Combine terms with matching (center, z) and drop negligible ones.
    void merge();

  private:
    std::vector<KernelTerm> terms_;
    Evaluator smooth_;
};

/// Laplacian restricted to R^3 minus a finite set of centers; the boundary
/// space is C^n with one coordinate per center and tau evaluates at the
/// centers (with the 1/(4 pi r) singularity removed).
class PointModel3D {
  public:
    explicit PointModel3D(std::vector<Vec3> centers);

    int dim_h() const { return static_cast<int>(centers_.size()); }
    const std::vector<Vec3>& centers() const { return centers_; }
    double min_separation() const { return min_sep_; }

    /// Throws BranchCutViolation if z lies on the spectrum (-inf, 0].
    void ensure_resolvent_point(Complex z) const;
    bool in_resolvent_set(Complex z) const;

    /// tau phi: regularized values of phi at the centers.
    Vector trace_apply(const KernelField& phi) const;

    /// G(z) Q = sum_j Q_j G_z(. - y_j).
    KernelField g_apply(Complex z, const Vector& q) const;

    /// R(z) phi for phi in the kernel class (no smooth part, all kernel
    /// parameters distinct from z); exact via the first resolvent identity.
    KernelField resolvent_apply(Complex z, const KernelField& phi) const;

    /// Gbreve(z) phi = tau R(z) phi.
    Vector g_breve_apply(Complex z, const KernelField& phi) const;

    /// -Laplacian acting on a kernel state; requires the singular
    /// coefficients to cancel at every center (operator-domain condition).
    KernelField apply_a(const KernelField& phi) const;

    KernelField g_star_apply(const ReferencePoint& ref, const Vector& q) const;
    KernelField g_diamond_apply(const ReferencePoint& ref, const Vector& q) const;

    /// Gamma(z)_{jk} = (G* - G_z)(|y_j - y_k|) off the diagonal and
    /// (sqrt(z) - Re sqrt(z0)) / (4 pi) on it.
    Matrix gamma_matrix(Complex z, const ReferencePoint& ref) const;

  private:
    std::vector<Vec3> centers_;
    double min_sep_ = 0.0;
};

/// Boundary parameter of the local point-interaction family with strength
/// alpha at every center (reference point z0 = i):
///   Theta_jj = alpha + 1/(4 pi sqrt 2),  Theta_jk = -G*(|y_j - y_k|).
Matrix aghh_theta(const PointModel3D& model, double alpha);

}  // namespace kreinkit
