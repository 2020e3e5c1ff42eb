#include "kreinkit/identity_checks.hpp"

#include <cmath>
#include <random>

#include "kreinkit/von_neumann.hpp"

namespace kreinkit {

namespace {

const Complex kI(0.0, 1.0);

double rel(double resid, double scale) { return resid / std::max(scale, 1e-300); }

Vector random_unit(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (int j = 0; j < n; ++j) v(j) = Complex(u(rng), u(rng));
    return v.normalized();
}

struct Recorder {
    std::vector<IdentityCheck>* checks;
    double tol;
    void add(const char* id, const char* label, double resid) const {
        checks->push_back(IdentityCheck{id, label, resid, tol, resid <= tol});
    }
};

// Shared human-readable labels; the ids are the report contract.
constexpr const char* kLabel24 = "resolvent difference of the charge map";
constexpr const char* kLabel28 = "first resolvent identity of the perturbed resolvent";
constexpr const char* kLabel210 = "increment of the Krein matrix between spectral points";
constexpr const char* kLabel41 = "exchange of the two deficiency frames";
constexpr const char* kLabel42 = "difference of inverse boundary pencils";
constexpr const char* kLabel51 = "rational collapse of the symmetrized resolvent combination";
constexpr const char* kLabelGU = "Gamma-weighted unitarity of the boundary transfer matrix";

void check_gamma_unitarity(const KreinExtension& ext, const Recorder& rec) {
    const Matrix gi = gamma_i(ext.model());
    const ReducedUnitary wu = theta_to_w(ext.theta(), gi);
    rec.add("gamma-unitarity", kLabelGU, wu.unitarity_defect());
}

void check_42(const ThetaParam& theta, const Matrix& gi, const Recorder& rec) {
    const int n = theta.dim();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix x_minus = Eigen::PartialPivLU<Matrix>(theta.matrix() - gi).solve(id);
    const Matrix x_plus = Eigen::PartialPivLU<Matrix>(theta.matrix() + gi).solve(id);
    const Matrix lhs = x_minus - x_plus;
    const Matrix rhs = 2.0 * x_plus * gi * x_minus;
    rec.add("4.2", kLabel42,
            rel((lhs - rhs).norm(), std::max(x_minus.norm(), x_plus.norm())));
}

// ------------------------------------------------------------------
// diagonal model
// ------------------------------------------------------------------

void run_diagonal(const KreinExtension& ext, const Recorder& rec, std::mt19937& rng) {
    const DiagonalModel& dm = ext.diagonal();
    const int n = dm.dim_h();
    const int m = dm.dim_state();
    const Complex z1(0.8, 1.1), z2(-0.4, 0.7);

    {
        const Vector q = random_unit(n, rng);
        const Vector g1 = dm.g_apply(z1, q);
        const Vector lhs = (z1 - z2) * dm.resolvent_apply(z2, g1);
        const Vector rhs = dm.g_apply(z2, q) - g1;
        rec.add("2.4", kLabel24,
                rel((lhs - rhs).norm(), std::max(g1.norm(), rhs.norm())));
    }
    {
        const Vector phi = random_unit(m, rng);
        const Vector r1 = ext.resolvent_apply(z1, phi);
        const Vector r2 = ext.resolvent_apply(z2, phi);
        const Vector lhs = (z1 - z2) * ext.resolvent_apply(z2, r1);
        const Vector rhs = r2 - r1;
        rec.add("2.8", kLabel28,
                rel((lhs - rhs).norm(), std::max(r1.norm(), r2.norm())));
    }
    {
        const Matrix gma = ext.gamma(z1);
        const Matrix gmb = ext.gamma(z2);
        Matrix cross(n, n);
        for (int k = 0; k < n; ++k) {
            Vector e = Vector::Zero(n);
            e(k) = 1.0;
            cross.col(k) = dm.g_breve_apply(z2, dm.g_apply(z1, e));
        }
        const Matrix lhs = gma - gmb;
        const Matrix rhs = (z1 - z2) * cross;
        rec.add("2.10", kLabel210,
                rel((lhs - rhs).norm(), std::max(gma.norm(), gmb.norm())));
    }
    {
        const Vector q = random_unit(n, rng);
        const Vector gp = dm.g_apply(kI, q);
        const Vector gm = dm.g_apply(-kI, q);
        const double scale = std::max(gp.norm(), gm.norm());
        const double r1 =
            ((gm - gp) - 2.0 * kI * dm.resolvent_apply(-kI, gp)).norm();
        const double r2 =
            ((gp - gm) + 2.0 * kI * dm.resolvent_apply(kI, gm)).norm();
        rec.add("4.1", kLabel41, rel(std::max(r1, r2), scale));
    }
    check_42(ext.theta(), gamma_i(ext.model()), rec);
    {
        const Vector phi = random_unit(m, rng);
        const Complex z = z1;
        const Vector lhs = 0.5 * (dm.resolvent_apply(kI, phi) +
                                  dm.resolvent_apply(-kI, phi) -
                                  2.0 * dm.resolvent_apply(z, phi));
        Vector rhs(m);
        for (int j = 0; j < m; ++j) {
            const double a = dm.eigenvalues()(j);
            rhs(j) = (1.0 + z * a) / ((1.0 + a * a) * (a - z)) * phi(j);
        }
        rec.add("5.1-identity", kLabel51,
                rel((lhs - rhs).norm(), std::max(lhs.norm(), rhs.norm())));
    }
    check_gamma_unitarity(ext, rec);
}

// ------------------------------------------------------------------
// point model
// ------------------------------------------------------------------

std::vector<Vec3> make_probes(const PointModel3D& pm) {
    const Vec3 u1(0.36, -0.48, 0.8);
    const Vec3 u2(-0.8, 0.36, 0.48);
    const Vec3 u3(0.48, 0.8, -0.36);
    const std::vector<Vec3> dirs{u1, u2, u3};
    double d = 1.0;
    if (pm.dim_h() > 1) d = std::min(1.0, pm.min_separation() / 3.0);

    std::vector<Vec3> probes;
    Vec3 centroid = Vec3::Zero();
    for (std::size_t j = 0; j < pm.centers().size(); ++j) {
        const Vec3& y = pm.centers()[j];
        centroid += y;
        probes.push_back(y + 0.7 * d * dirs[j % 3]);
        probes.push_back(y + 1.3 * d * dirs[(j + 1) % 3]);
    }
    centroid /= static_cast<double>(pm.centers().size());
    probes.push_back(centroid + d * Vec3(0.123, 0.456, -0.789));

    for (auto& p : probes) {
        bool clear = false;
        while (!clear) {
            clear = true;
            for (const Vec3& y : pm.centers())
                if ((p - y).norm() < 1e-6 * d) {
                    p += 0.37 * d * u1;
                    clear = false;
                }
        }
    }
    return probes;
}

double field_residual(const KernelField& lhs, const KernelField& rhs,
                      const std::vector<Vec3>& probes) {
    double resid = 0.0, scale = 0.0;
    for (const Vec3& p : probes) {
        const Complex a = lhs.eval(p);
        const Complex b = rhs.eval(p);
        resid = std::max(resid, std::abs(a - b));
        scale = std::max({scale, std::abs(a), std::abs(b)});
    }
    return rel(resid, scale);
}

void run_point(const KreinExtension& ext, const Recorder& rec, std::mt19937& rng) {
    const PointModel3D& pm = ext.point();
    const int n = pm.dim_h();
    const Complex z1(0.8, 1.1), z2(-0.4, 0.7);
    const std::vector<Vec3> probes = make_probes(pm);

    // Generic kernel state: one kernel on every center plus one off-center.
    const Complex w0(0.3, 0.7), w1(1.2, 0.9);
    KernelField phi;
    {
        std::vector<KernelTerm> terms;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int j = 0; j < n; ++j)
            terms.push_back(KernelTerm{pm.centers()[j], w0,
                                       Complex(u(rng), u(rng))});
        const Vec3 x0 = pm.centers()[0] + Vec3(0.9, 0.27, -0.31);
        terms.push_back(KernelTerm{x0, w1, Complex(1.0, 0.0)});
        phi = KernelField(std::move(terms));
    }

    {
        const Vector q = random_unit(n, rng);
        const Vector lhs = (z1 - z2) * pm.g_breve_apply(z2, pm.g_apply(z1, q));
        const Vector rhs = pm.trace_apply(pm.g_apply(z2, q) - pm.g_apply(z1, q));
        rec.add("2.4", kLabel24,
                rel((lhs - rhs).norm(), std::max(lhs.norm(), rhs.norm())));
    }
    {
        const KernelField r1 = ext.resolvent_apply(z1, phi);
        const KernelField r2 = ext.resolvent_apply(z2, phi);
        const KernelField lhs = ext.resolvent_apply(z2, r1).scaled(z1 - z2);
        const KernelField rhs = r2 - r1;
        rec.add("2.8", kLabel28, field_residual(lhs, rhs, probes));
    }
    {
        const Matrix gma = ext.gamma(z1);
        const Matrix gmb = ext.gamma(z2);
        Matrix cross(n, n);
        for (int k = 0; k < n; ++k) {
            Vector e = Vector::Zero(n);
            e(k) = 1.0;
            cross.col(k) = pm.g_breve_apply(z2, pm.g_apply(z1, e));
        }
        rec.add("2.10", kLabel210,
                rel((gma - gmb - (z1 - z2) * cross).norm(),
                    std::max(gma.norm(), gmb.norm())));
    }
    {
        const Vector q = random_unit(n, rng);
        const KernelField gp = pm.g_apply(kI, q);
        const KernelField gm = pm.g_apply(-kI, q);
        const double r1 = field_residual(gm - gp,
                                         pm.resolvent_apply(-kI, gp).scaled(2.0 * kI),
                                         probes);
        const double r2 = field_residual(gp - gm,
                                         pm.resolvent_apply(kI, gm).scaled(-2.0 * kI),
                                         probes);
        rec.add("4.1", kLabel41, std::max(r1, r2));
    }
    check_42(ext.theta(), gamma_i(ext.model()), rec);
    {
        const Complex z = z1;
        const KernelField lhs = (pm.resolvent_apply(kI, phi) +
                                 pm.resolvent_apply(-kI, phi) -
                                 pm.resolvent_apply(z, phi).scaled(2.0))
                                    .scaled(0.5);
        const KernelField w = pm.resolvent_apply(
            z, pm.resolvent_apply(-kI, pm.resolvent_apply(kI, phi)));
        const KernelField rhs = (w + pm.apply_a(w).scaled(z)).scaled(-1.0);
        rec.add("5.1-identity", kLabel51, field_residual(lhs, rhs, probes));
    }
    check_gamma_unitarity(ext, rec);
}

}  // namespace

bool IdentityReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

IdentityReport run_identity_checks(const KreinExtension& ext, double tol, unsigned seed) {
    IdentityReport report;
    Recorder rec{&report.checks, tol};
    std::mt19937 rng(seed);
    if (is_diagonal(ext.model()))
        run_diagonal(ext, rec, rng);
    else
        run_point(ext, rec, rng);
    return report;
}

}  // namespace kreinkit
