#include "kreinkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace kreinkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void ensure_real_resolvent_point(const KreinExtension& ext, double lambda) {
    if (!in_resolvent_set(ext.model(), Complex(lambda))) {
        std::ostringstream os;
        os << "lambda = " << lambda << " lies in the spectrum of A";
        fail(ErrorCode::SpectralPointInSpectrum, os.str());
    }
}

struct PencilSample {
    RealVector curves;       // ascending eigenvalues of Theta + Gamma(lambda)
};

PencilSample sample(const KreinExtension& ext, double lambda) {
    ensure_real_resolvent_point(ext, lambda);
    const Matrix k = ext.krein_matrix(Complex(lambda));
    const Matrix kh = 0.5 * (k + k.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(kh, Eigen::EigenvaluesOnly);
    return PencilSample{es.eigenvalues()};
}

// Bisection on one sorted eigencurve across a bracketing cell.
double bisect_curve(const KreinExtension& ext, int k, double lo, double hi,
                    double flo, double fhi) {
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int iter = 0; iter < 200; ++iter) {
        const double width_tol = 4.0 * kEps * std::max({1.0, std::abs(a), std::abs(b)});
        if (b - a <= width_tol) break;
        const double mid = 0.5 * (a + b);
        const double fm = sample(ext, mid).curves(k);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

struct RawRoot {
    double lambda;
    double curve_value;
};

void scan_cell(const KreinExtension& ext, int k, double lo, double hi,
               const RealVector& clo, const RealVector& chi, double crowd,
               int depth, std::vector<RawRoot>& out) {
    const double fa = clo(k);
    const double fb = chi(k);
    if ((fa < 0.0) != (fb < 0.0)) {
        const double root = bisect_curve(ext, k, lo, hi, fa, fb);
        out.push_back(RawRoot{root, sample(ext, root).curves(k)});
        return;
    }
    if (depth >= 6) return;
    // Sorted curves can swap order inside a cell when two of them cross;
    // when neighbouring curves crowd each other near zero, split the cell
    // so each half sees a consistent ordering.
    const int n = static_cast<int>(clo.size());
    bool crowded = false;
    for (const RealVector* c : {&clo, &chi}) {
        const double gap_up = (k + 1 < n) ? (*c)(k + 1) - (*c)(k)
                                          : std::numeric_limits<double>::infinity();
        const double gap_dn = (k > 0) ? (*c)(k) - (*c)(k - 1)
                                      : std::numeric_limits<double>::infinity();
        if (std::min(gap_up, gap_dn) < crowd && std::abs((*c)(k)) < crowd)
            crowded = true;
    }
    if (!crowded) return;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return;
    const RealVector cmid = sample(ext, mid).curves;
    scan_cell(ext, k, lo, mid, clo, cmid, crowd, depth + 1, out);
    scan_cell(ext, k, mid, hi, cmid, chi, crowd, depth + 1, out);
}

}  // namespace

RealVector krein_eigencurves(const KreinExtension& ext, double lambda) {
    return sample(ext, lambda).curves;
}

std::vector<EigenResult> find_point_spectrum(const KreinExtension& ext,
                                             double lo, double hi,
                                             SpectrumOptions opts) {
    if (!(lo < hi))
        fail(ErrorCode::ConfigInvalid, "spectral search interval must satisfy lo < hi");
    if (opts.grid < 2)
        fail(ErrorCode::ConfigInvalid, "spectral scan needs a grid of at least 2 cells");
    if (!(opts.tol > 0.0))
        fail(ErrorCode::ConfigInvalid, "spectral tolerance must be positive");

    // The scan only makes sense inside the real resolvent set of A.
    if (const auto* pm = std::get_if<PointModel3D>(&ext.model())) {
        (void)pm;
        if (lo <= 0.0)
            fail(ErrorCode::IntervalOutsideResolventSet,
                 "interval reaches into the essential spectrum (-inf, 0]");
    } else {
        const auto& dm = std::get<DiagonalModel>(ext.model());
        for (int m = 0; m < dm.dim_state(); ++m) {
            const double a = dm.eigenvalues()(m);
            if (a >= lo - 1e3 * kEps * std::max(1.0, std::abs(a)) &&
                a <= hi + 1e3 * kEps * std::max(1.0, std::abs(a))) {
                std::ostringstream os;
                os << "eigenvalue a[" << m << "] = " << a
                   << " of A lies inside the search interval";
                fail(ErrorCode::IntervalOutsideResolventSet, os.str());
            }
        }
    }

    const int n = ext.dim_h();
    const int grid = opts.grid;
    std::vector<double> xs(grid + 1);
    std::vector<RealVector> curves(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / grid;
        curves[i] = sample(ext, xs[i]).curves;
    }

    // Scale for "close to zero" decisions: the pencil entries, not lambda.
    double scale = std::max(1.0, ext.theta().norm());
    for (int i = 0; i <= grid; i += std::max(1, grid / 8))
        scale = std::max(scale, curves[i].cwiseAbs().maxCoeff());
    const double crowd = 10.0 * opts.tol * scale;

    std::vector<RawRoot> raw;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < grid; ++i)
            scan_cell(ext, k, xs[i], xs[i + 1], curves[i], curves[i + 1], crowd, 0, raw);

    std::sort(raw.begin(), raw.end(),
              [](const RawRoot& a, const RawRoot& b) { return a.lambda < b.lambda; });

    // Merge findings that are the same root up to bisection resolution.
    std::vector<RawRoot> unique;
    for (const RawRoot& r : raw) {
        if (!unique.empty() &&
            std::abs(r.lambda - unique.back().lambda) <=
                64.0 * kEps * std::max(1.0, std::abs(r.lambda))) {
            if (std::abs(r.curve_value) < std::abs(unique.back().curve_value))
                unique.back() = r;
            continue;
        }
        unique.push_back(r);
    }

    std::vector<EigenResult> results;
    for (const RawRoot& r : unique) {
        const Matrix k = ext.krein_matrix(Complex(r.lambda));
        const Matrix kh = 0.5 * (k + k.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Matrix> es(kh);
        int mult = 0;
        int best = 0;
        for (int j = 0; j < n; ++j) {
            if (std::abs(es.eigenvalues()(j)) <= opts.tol * scale) ++mult;
            if (std::abs(es.eigenvalues()(j)) < std::abs(es.eigenvalues()(best)))
                best = j;
        }
        if (std::abs(es.eigenvalues()(best)) > opts.tol * scale)
            continue;  // grazing sign flip that does not survive at tolerance
        Vector charge = es.eigenvectors().col(best);
        // Deterministic phase: largest component real and positive.
        int big = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(charge(j)) > std::abs(charge(big))) big = j;
        if (std::abs(charge(big)) > 0.0)
            charge *= std::conj(charge(big)) / std::abs(charge(big));
        charge.normalize();
        results.push_back(EigenResult{r.lambda, charge, std::max(mult, 1),
                                      (kh * charge).norm()});
    }
    return results;
}

std::pair<double, double> default_search_interval(const KreinExtension& ext) {
    const auto* pm = std::get_if<PointModel3D>(&ext.model());
    if (pm == nullptr)
        fail(ErrorCode::ConfigInvalid,
             "diagonal models have no canonical search interval; provide one");
    Eigen::JacobiSVD<Matrix> svd(ext.theta().matrix());
    const double theta_norm = svd.singularValues()(0);
    const double s = 1.0 / std::numbers::sqrt2 + 4.0 * std::numbers::pi * theta_norm;
    return {1e-8, 4.0 * s * s};
}

KernelField eigenfunction(const PointModel3D& model, const EigenResult& r) {
    return model.g_apply(Complex(r.lambda), r.charge);
}

Vector eigenfunction(const DiagonalModel& model, const EigenResult& r) {
    return model.g_apply(Complex(r.lambda), r.charge);
}

Complex eigenfunction_eval(const PointModel3D& model, const EigenResult& r,
                           const Vec3& x) {
    return eigenfunction(model, r).eval(x);
}

}  // namespace kreinkit
