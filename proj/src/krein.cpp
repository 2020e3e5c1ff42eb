#include "kreinkit/krein.hpp"

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

ThetaParam::ThetaParam(Matrix m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1)
        fail(ErrorCode::ConfigInvalid, "boundary parameter must be a square matrix");
    if (!m.allFinite())
        fail(ErrorCode::ConfigInvalid, "boundary parameter must be finite");
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        std::ostringstream os;
        os << "boundary parameter is not Hermitian (relative defect " << defect << ")";
        fail(ErrorCode::ConfigInvalid, os.str());
    }
    m_ = 0.5 * (m + m.adjoint().eval());
}

bool ThetaParam::invertible() const {
    Eigen::JacobiSVD<Matrix> svd(m_);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(dim() - 1);
    return smax > 0.0 && smin > smax * dim() * kEps * 1e3;
}

KreinExtension::KreinExtension(OperatorModel model, ThetaParam theta,
                               ReferencePoint ref, double tol)
    : model_(std::move(model)), theta_(std::move(theta)), ref_(ref), tol_(tol) {
    if (!(tol_ > 0.0))
        fail(ErrorCode::ConfigInvalid, "tolerance must be positive");
    if (theta_.dim() != kreinkit::dim_h(model_))
        fail(ErrorCode::DimensionMismatch,
             "boundary parameter is " + std::to_string(theta_.dim()) +
                 "-dimensional but the model boundary space has dimension " +
                 std::to_string(kreinkit::dim_h(model_)));
    if (ref_.real()) {
        // A real reference point only labels a self-adjoint extension when
        // Theta is invertible and the point avoids the spectrum.
        if (!theta_.invertible())
            fail(ErrorCode::ThetaSingular,
                 "a real reference point requires an invertible boundary parameter");
        kreinkit::ensure_resolvent_point(model_, ref_.z0());
    }
}

const DiagonalModel& KreinExtension::diagonal() const {
    if (const auto* m = std::get_if<DiagonalModel>(&model_)) return *m;
    fail(ErrorCode::ConfigInvalid, "operation is only defined for the diagonal model");
}

const PointModel3D& KreinExtension::point() const {
    if (const auto* m = std::get_if<PointModel3D>(&model_)) return *m;
    fail(ErrorCode::ConfigInvalid, "operation is only defined for the point model");
}

Vector KreinExtension::solve_krein(Complex z, const Vector& rhs) const {
    const Matrix k = krein_matrix(z);
    const int n = theta_.dim();
    Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(n - 1);
    // Near-singularity is measured against the natural scale of the
    // summands, not sigma_max of the sum, so that cancellation down to
    // rounding level is flagged even for n = 1.
    const double scale = std::max(smax, theta_.norm() + k.norm());
    if (smax == 0.0 || smin <= scale * n * kEps * 1e3) {
        if (is_real(z))
            fail(ErrorCode::KreinMatrixSingular,
                 "Theta + Gamma(z) is singular at z = " + complex_str(z) +
                     "; z belongs to the point spectrum of the extension");
        fail(ErrorCode::SolveFailed,
             "Theta + Gamma(z) is numerically singular at the nonreal point z = " +
                 complex_str(z));
    }
    Vector x = svd.solve(rhs);
    if (!x.allFinite())
        fail(ErrorCode::SolveFailed, "Krein matrix solve produced non-finite values");
    return x;
}

Vector KreinExtension::charge_of(Complex z, const Vector& phi) const {
    return solve_krein(z, diagonal().g_breve_apply(z, phi));
}

Vector KreinExtension::resolvent_apply(Complex z, const Vector& phi) const {
    const DiagonalModel& dm = diagonal();
    const Vector q = solve_krein(z, dm.g_breve_apply(z, phi));
    return dm.resolvent_apply(z, phi) + dm.g_apply(z, q);
}

Vector KreinExtension::charge_of(Complex z, const KernelField& phi) const {
    return solve_krein(z, point().g_breve_apply(z, phi));
}

KernelField KreinExtension::resolvent_apply(Complex z, const KernelField& phi) const {
    const PointModel3D& pm = point();
    const Vector q = solve_krein(z, pm.g_breve_apply(z, phi));
    return pm.resolvent_apply(z, phi) + pm.g_apply(z, q);
}

double boundary_residual(const KreinExtension& ext, const DecomposedState& s) {
    const DiagonalModel& dm = ext.diagonal();
    return (dm.trace_apply(s.regular) - ext.theta().matrix() * s.charge).norm();
}

double boundary_residual(const KreinExtension& ext, const DecomposedField& s) {
    const PointModel3D& pm = ext.point();
    return (pm.trace_apply(s.regular) - ext.theta().matrix() * s.charge).norm();
}

Vector reference_shift(const KreinExtension& ext, Complex z, const DecomposedState& s) {
    const DiagonalModel& dm = ext.diagonal();
    return s.regular + dm.g_star_apply(ext.ref(), s.charge) - dm.g_apply(z, s.charge);
}

Vector reference_shift_back(const KreinExtension& ext, Complex z,
                            const Vector& phi_z, const Vector& charge) {
    const DiagonalModel& dm = ext.diagonal();
    return phi_z - dm.g_star_apply(ext.ref(), charge) + dm.g_apply(z, charge);
}

KernelField reference_shift(const KreinExtension& ext, Complex z, const DecomposedField& s) {
    const PointModel3D& pm = ext.point();
    return s.regular + pm.g_star_apply(ext.ref(), s.charge) - pm.g_apply(z, s.charge);
}

KernelField reference_shift_back(const KreinExtension& ext, Complex z,
                                 const KernelField& phi_z, const Vector& charge) {
    const PointModel3D& pm = ext.point();
    return phi_z - pm.g_star_apply(ext.ref(), charge) + pm.g_apply(z, charge);
}

DecomposedState decompose(const KreinExtension& ext, Complex z, const Vector& psi) {
    const DiagonalModel& dm = ext.diagonal();
    dm.ensure_resolvent_point(z);

    // Invert the Krein resolvent through its rank-n structure:
    //   R_Theta(z)^{-1} = R(z)^{-1} - V^T (K + tau G(z))^{-1} tau,
    // then split the preimage.  Every factor depends on z, so agreement of
    // the result across different z is a real consistency statement.
    const Vector tau_psi = dm.trace_apply(psi);
    const Matrix inner = ext.krein_matrix(z) + dm.tau_g_matrix(z);
    Eigen::PartialPivLU<Matrix> lu(inner);
    const Vector y = lu.solve(tau_psi);
    if (!y.allFinite())
        fail(ErrorCode::SolveFailed,
             "state decomposition failed: Theta + tau G* is singular");

    Vector phi_pre(psi.size());
    const RealVector& a = dm.eigenvalues();
    const Vector vty = dm.trace_vectors().transpose() * y;
    for (int m = 0; m < static_cast<int>(psi.size()); ++m)
        phi_pre(m) = (z - a(m)) * psi(m) - vty(m);

    const Vector q = ext.charge_of(z, phi_pre);
    const Vector phi_z = dm.resolvent_apply(z, phi_pre);
    return DecomposedState{reference_shift_back(ext, z, phi_z, q), q};
}

Vector apply_extension(const KreinExtension& ext, const DecomposedState& s) {
    const DiagonalModel& dm = ext.diagonal();
    const double resid = boundary_residual(ext, s);
    const double scale = std::max({1.0, dm.trace_apply(s.regular).norm(),
                                   (ext.theta().matrix() * s.charge).norm()});
    if (resid > ext.tol() * scale) {
        std::ostringstream os;
        os << "state violates the boundary condition tau(phi*) = Theta Q "
              "(residual " << resid << ", tolerance " << ext.tol() * scale << ")";
        fail(ErrorCode::BoundaryViolation, os.str());
    }
    const Complex z0 = ext.ref().z0();
    Vector out = dm.apply_a(s.regular) +
                 z0.real() * dm.g_star_apply(ext.ref(), s.charge);
    if (!ext.ref().real())
        out += Complex(0.0, z0.imag()) * dm.g_diamond_apply(ext.ref(), s.charge);
    return out;
}

Vector inverse_apply(const KreinExtension& ext, const Vector& phi) {
    const DiagonalModel& dm = ext.diagonal();
    if (!dm.in_resolvent_set(Complex(0.0)))
        fail(ErrorCode::ZeroInSpectrum,
             "the inverse formula needs 0 in the resolvent set of A");
    if (!ext.theta().invertible())
        fail(ErrorCode::ThetaSingular,
             "the inverse formula needs an invertible boundary parameter");

    // A_Theta^{-1} = A^{-1} - G(0) Theta^{-1} Gbreve(0), the z0 = 0 member
    // of the family; equivalently -R_Theta(0).
    const Vector t = dm.g_breve_apply(Complex(0.0), phi);
    Eigen::JacobiSVD<Matrix> svd(ext.theta().matrix(),
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector s = svd.solve(t);
    const Vector w = dm.trace_vectors().transpose() * s;
    Vector out(phi.size());
    const RealVector& a = dm.eigenvalues();
    for (int m = 0; m < static_cast<int>(phi.size()); ++m)
        out(m) = (phi(m) + w(m)) / a(m);
    return out;
}

}  // namespace kreinkit
