#include "kreinkit/von_neumann.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace kreinkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const Complex kI(0.0, 1.0);

Matrix hermitized(const Matrix& m) { return 0.5 * (m + m.adjoint().eval()); }

}  // namespace

void validate_gamma_i(const Matrix& gamma, double tol) {
    if (gamma.rows() != gamma.cols() || gamma.rows() < 1)
        fail(ErrorCode::DimensionMismatch, "Gamma(i) must be a square matrix");
    const double anti_defect = anti_hermiticity_defect(gamma);
    if (anti_defect > tol) {
        std::ostringstream os;
        os << "Gamma(i) is not anti-Hermitian (relative defect " << anti_defect << ")";
        fail(ErrorCode::GammaNotAntiHermitian, os.str());
    }
    const Matrix b = hermitized(-kI * gamma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    if (lmax <= 0.0 || lmin <= lmax * gamma.rows() * kEps * 1e4) {
        std::ostringstream os;
        os << "-i Gamma(i) is not positive definite (eigenvalue range [" << lmin
           << ", " << lmax << "])";
        fail(ErrorCode::GammaNotPositive, os.str());
    }
}

Matrix gamma_i(const OperatorModel& model) {
    const Matrix g = gamma_matrix_of(model, kI, ReferencePoint());
    validate_gamma_i(g);
    return g;
}

Matrix gamma_sqrt(const Matrix& gamma) {
    validate_gamma_i(gamma);
    const Matrix b = hermitized(-kI * gamma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    RealVector roots = es.eigenvalues();
    for (int j = 0; j < roots.size(); ++j) roots(j) = std::sqrt(roots(j));
    return hermitized(es.eigenvectors() * roots.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint());
}

ReducedUnitary::ReducedUnitary(Matrix w, Matrix gamma, double tol)
    : w_(std::move(w)), gamma_(std::move(gamma)) {
    validate_gamma_i(gamma_, tol);
    if (w_.rows() != w_.cols() || w_.rows() != gamma_.rows())
        fail(ErrorCode::DimensionMismatch,
             "transfer matrix and Gamma(i) must have matching square shapes");
    if (!w_.allFinite())
        fail(ErrorCode::ConfigInvalid, "transfer matrix must be finite");
    const double defect = unitarity_defect();
    if (defect > tol) {
        std::ostringstream os;
        os << "matrix is not Gamma-unitary (relative defect " << defect << ")";
        fail(ErrorCode::ConfigInvalid, os.str());
    }
}

double ReducedUnitary::unitarity_defect() const {
    const Matrix b = hermitized(-kI * gamma_);
    const double scale = b.norm();
    return (w_.adjoint() * b * w_ - b).norm() / (scale > 0.0 ? scale : 1.0);
}

ReducedUnitary theta_to_w(const ThetaParam& theta, const Matrix& gamma) {
    if (theta.dim() != gamma.rows())
        fail(ErrorCode::DimensionMismatch,
             "boundary parameter and Gamma(i) dimensions differ");
    const int n = theta.dim();
    // Theta - Gamma(i) is always invertible: Theta is Hermitian while
    // x* Gamma x is purely imaginary and nonzero for x != 0.
    Eigen::PartialPivLU<Matrix> lu(theta.matrix() - gamma);
    const Matrix x = lu.solve(gamma);
    Matrix w = -(Matrix::Identity(n, n) + 2.0 * x);
    if (!w.allFinite())
        fail(ErrorCode::SolveFailed, "forward Cayley map produced non-finite values");
    return ReducedUnitary(std::move(w), gamma);
}

Matrix theta_to_w_inverse(const ThetaParam& theta, const Matrix& gamma) {
    if (theta.dim() != gamma.rows())
        fail(ErrorCode::DimensionMismatch,
             "boundary parameter and Gamma(i) dimensions differ");
    const int n = theta.dim();
    Eigen::PartialPivLU<Matrix> lu(theta.matrix() + gamma);
    return -(Matrix::Identity(n, n) - 2.0 * lu.solve(gamma));
}

ThetaParam w_to_theta(const ReducedUnitary& wu) {
    const int n = wu.dim();
    const Matrix& w = wu.w();
    const Matrix wp1 = w + Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(wp1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(n - 1);
    if (smin < 1e-10 * n) {
        std::ostringstream os;
        os << "W + 1 is numerically singular (smallest singular value " << smin
           << "); the boundary parameter escapes to infinity";
        fail(ErrorCode::WPlusOneSingular, os.str());
    }
    // Theta = Gamma (W - 1)(W + 1)^{-1}; the two factors are rational in W
    // and commute, so a single left solve does it.
    const Matrix wm1 = w - Matrix::Identity(n, n);
    const Matrix y = svd.solve(wm1);
    const Matrix theta = wu.gamma() * y;
    const double defect = hermiticity_defect(theta);
    if (defect > 1e-10) {
        std::ostringstream os;
        os << "inverse Cayley map produced a non-Hermitian boundary parameter "
              "(relative defect " << defect << "); input was not Gamma-unitary";
        fail(ErrorCode::SolveFailed, os.str());
    }
    return ThetaParam(hermitized(theta));
}

double cayley_check(const DiagonalModel& model) {
    const int n = model.dim_h();
    const int m = model.dim_state();

    std::vector<Vector> probes;
    for (int j = 0; j < n; ++j) {
        Vector e = Vector::Zero(n);
        e(j) = 1.0;
        probes.push_back(e);
    }
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int r = 0; r < 3; ++r) {
        Vector q(n);
        for (int j = 0; j < n; ++j) q(j) = Complex(u(rng), u(rng));
        probes.push_back(q.normalized());
    }

    double worst = 0.0;
    for (const Vector& q : probes) {
        const Vector gp = model.g_apply(kI, q);
        const Vector gm = model.g_apply(-kI, q);
        const double scale = std::max({gp.norm(), gm.norm(), 1e-300});

        // U_A acts spectrally as (-a + i)/(-a - i) on the diagonal frame.
        Vector ua_gp(m);
        for (int k = 0; k < m; ++k) {
            const double a = model.eigenvalues()(k);
            ua_gp(k) = (Complex(-a, 1.0) / Complex(-a, -1.0)) * gp(k);
        }
        worst = std::max(worst, (gm - ua_gp).norm() / scale);

        // Equivalent resolvent forms of the frame exchange.
        const Vector lhs1 = gm - gp;
        const Vector rhs1 = 2.0 * kI * model.resolvent_apply(-kI, gp);
        worst = std::max(worst, (lhs1 - rhs1).norm() / scale);

        const Vector lhs2 = gp - gm;
        const Vector rhs2 = -2.0 * kI * model.resolvent_apply(kI, gm);
        worst = std::max(worst, (lhs2 - rhs2).norm() / scale);
    }
    return worst;
}

}  // namespace kreinkit
