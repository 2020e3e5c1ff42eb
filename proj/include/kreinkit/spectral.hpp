#pragma once

#include <vector>

#include "kreinkit/krein.hpp"

namespace kreinkit {

/// One eigenvalue of A_Theta found in the scanned interval.
struct EigenResult {
    double lambda;           // the eigenvalue
    Vector charge;           // unit kernel vector of Theta + Gamma(lambda)
    int multiplicity;        // pencil eigenvalues within tolerance of zero
    double kernel_residual;  // || (Theta + Gamma(lambda)) charge ||
};

/// Sorted (ascending) eigenvalues of the Hermitian pencil
/// Theta + Gamma(lambda) at a real lambda in the resolvent set of A.
/// Zeros of these curves are exactly the point spectrum of A_Theta away
/// from sigma(A).
RealVector krein_eigencurves(const KreinExtension& ext, double lambda);

struct SpectrumOptions {
    int grid = 200;       // initial uniform scan resolution
    double tol = kDefaultTol;
};

/// Scan [lo, hi] (subset of the real resolvent set of A), bisect every sign
/// change of every sorted eigencurve, deduplicate, and return the roots in
/// increasing order.  Crossing curves are handled by refining cells where
/// adjacent curves nearly touch.
std::vector<EigenResult> find_point_spectrum(const KreinExtension& ext,
                                             double lo, double hi,
                                             SpectrumOptions opts = {});

/// Default scan interval for a point model: (1e-8, 4 (1/sqrt2 + 4 pi ||Theta||)^2],
/// which contains every negative-energy bound state sqrt(-E) the boundary
/// parameter can produce.  Diagonal models have no canonical interval and
/// must be given one explicitly.
std::pair<double, double> default_search_interval(const KreinExtension& ext);

/// Eigenfunction attached to a result: G(lambda) charge.
KernelField eigenfunction(const PointModel3D& model, const EigenResult& r);
Vector eigenfunction(const DiagonalModel& model, const EigenResult& r);

/// Pointwise value of a point-model eigenfunction.
Complex eigenfunction_eval(const PointModel3D& model, const EigenResult& r, const Vec3& x);

}  // namespace kreinkit
