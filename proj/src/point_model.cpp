#include "kreinkit/point_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace kreinkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Distance below which an evaluation point counts as sitting on a kernel
// center; all model geometry is O(1), so this is far below any physical
// separation but far above rounding noise in computed coordinates.
constexpr double kCoincide = 1e-12;

std::string complex_str(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

void ensure_off_cut(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
        fail(ErrorCode::BranchCutViolation,
             "z = " + complex_str(z) + " lies on the spectrum (-inf, 0] of the Laplacian");
}

}  // namespace

Complex free_green(Complex z, double r) {
    if (!(r > 0.0))
        fail(ErrorCode::DegenerateRadius,
             "Green kernel radius must be positive, got " + std::to_string(r));
    ensure_off_cut(z);
    const Complex kappa = sqrt_principal(z);
    return std::exp(-kappa * r) / (kFourPi * r);
}

Complex free_green_finite_part(Complex z) {
    ensure_off_cut(z);
    return -sqrt_principal(z) / kFourPi;
}

Complex green_star(const ReferencePoint& ref, double r) {
    const Complex z0 = ref.z0();
    if (ref.real()) return free_green(z0, r);
    return 0.5 * (free_green(z0, r) + free_green(std::conj(z0), r));
}

KernelField::KernelField(std::vector<KernelTerm> terms, Evaluator smooth)
    : terms_(std::move(terms)), smooth_(std::move(smooth)) {
    for (const auto& t : terms_) {
        if (!t.center.allFinite() || !std::isfinite(std::abs(t.amplitude)))
            fail(ErrorCode::ConfigInvalid, "kernel term with non-finite data");
        ensure_off_cut(t.z);
    }
}

Complex KernelField::eval(const Vec3& x) const {
    Complex val = smooth_ ? smooth_(x) : Complex(0.0);
    Complex sing_sum(0.0);
    double sing_abs = 0.0;
    Complex finite(0.0);
    for (const auto& t : terms_) {
        const double r = (x - t.center).norm();
        if (r < kCoincide) {
            sing_sum += t.amplitude;
            sing_abs += std::abs(t.amplitude);
            finite += t.amplitude * free_green_finite_part(t.z);
        } else {
            val += t.amplitude * free_green(t.z, r);
        }
    }
    if (sing_abs > 0.0) {
        // Kernels sitting on x only have a limit there when their
        // 1/(4 pi r) parts cancel; then the finite parts survive.
        if (std::abs(sing_sum) > 1e-10 * sing_abs)
            fail(ErrorCode::SingularAtCenter,
                 "field is singular at the evaluation point (net kernel "
                 "coefficient " + std::to_string(std::abs(sing_sum)) + ")");
        val += finite;
    }
    return val;
}

KernelField KernelField::scaled(Complex c) const {
    std::vector<KernelTerm> terms = terms_;
    for (auto& t : terms) t.amplitude *= c;
    Evaluator smooth;
    if (smooth_) smooth = [inner = smooth_, c](const Vec3& x) { return c * inner(x); };
    return KernelField(std::move(terms), std::move(smooth));
}

KernelField KernelField::operator+(const KernelField& other) const {
    std::vector<KernelTerm> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    Evaluator smooth;
    if (smooth_ && other.smooth_)
        smooth = [a = smooth_, b = other.smooth_](const Vec3& x) { return a(x) + b(x); };
    else if (smooth_)
        smooth = smooth_;
    else if (other.smooth_)
        smooth = other.smooth_;
    KernelField out(std::move(terms), std::move(smooth));
    out.merge();
    return out;
}

KernelField KernelField::operator-(const KernelField& other) const {
    return *this + other.scaled(Complex(-1.0));
}

void KernelField::merge() {
    std::vector<KernelTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        bool absorbed = false;
        for (auto& m : merged) {
            const bool same_center = (m.center - t.center).norm() < kCoincide;
            const bool same_z = std::abs(m.z - t.z) <=
                                1e-14 * std::max(1.0, std::abs(m.z));
            if (same_center && same_z) {
                m.amplitude += t.amplitude;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(t);
    }
    std::erase_if(merged, [](const KernelTerm& t) {
        return std::abs(t.amplitude) < 1e-300;
    });
    terms_ = std::move(merged);
}

PointModel3D::PointModel3D(std::vector<Vec3> centers) : centers_(std::move(centers)) {
    const int n = static_cast<int>(centers_.size());
    if (n < 1)
        fail(ErrorCode::ConfigInvalid, "point model needs at least one center");
    for (const auto& c : centers_)
        if (!c.allFinite())
            fail(ErrorCode::ConfigInvalid, "center coordinates must be finite");
    min_sep_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            min_sep_ = std::min(min_sep_, (centers_[i] - centers_[j]).norm());
    if (n > 1 && !(min_sep_ > 0.0))
        fail(ErrorCode::ConfigInvalid, "centers must be pairwise distinct");
}

bool PointModel3D::in_resolvent_set(Complex z) const {
    return !(z.imag() == 0.0 && z.real() <= 0.0);
}

void PointModel3D::ensure_resolvent_point(Complex z) const {
    ensure_off_cut(z);
}

Vector PointModel3D::trace_apply(const KernelField& phi) const {
    Vector out(dim_h());
    for (int j = 0; j < dim_h(); ++j) out(j) = phi.eval(centers_[j]);
    return out;
}

KernelField PointModel3D::g_apply(Complex z, const Vector& q) const {
    if (static_cast<int>(q.size()) != dim_h())
        fail(ErrorCode::DimensionMismatch, "g_apply: charge size does not match centers");
    ensure_resolvent_point(z);
    std::vector<KernelTerm> terms;
    terms.reserve(centers_.size());
    for (int j = 0; j < dim_h(); ++j)
        terms.push_back(KernelTerm{centers_[j], z, q(j)});
    return KernelField(std::move(terms));
}

KernelField PointModel3D::resolvent_apply(Complex z, const KernelField& phi) const {
    ensure_resolvent_point(z);
    if (phi.has_smooth_part())
        fail(ErrorCode::KernelClassViolation,
             "resolvent acts in closed form on pure kernel states only");
    std::vector<KernelTerm> terms;
    terms.reserve(2 * phi.terms().size());
    for (const auto& t : phi.terms()) {
        // R(z) G_w = (G_z - G_w) / (w - z); breaks down as w -> z.
        const double sep_scale = std::max({1.0, std::abs(t.z), std::abs(z)});
        if (std::abs(t.z - z) <= 1e3 * kEps * sep_scale)
            fail(ErrorCode::KernelClassViolation,
                 "resolvent parameter z = " + complex_str(z) +
                     " coincides with a kernel parameter; the image leaves "
                     "the kernel class");
        const Complex den = t.z - z;
        terms.push_back(KernelTerm{t.center, z, t.amplitude / den});
        terms.push_back(KernelTerm{t.center, t.z, -t.amplitude / den});
    }
    KernelField out(std::move(terms));
    out.merge();
    return out;
}

Vector PointModel3D::g_breve_apply(Complex z, const KernelField& phi) const {
    return trace_apply(resolvent_apply(z, phi));
}

KernelField PointModel3D::apply_a(const KernelField& phi) const {
    if (phi.has_smooth_part())
        fail(ErrorCode::KernelClassViolation,
             "the Laplacian acts in closed form on pure kernel states only");
    // Delta G_w = w G_w - delta_center: the delta contributions must cancel
    // within each center for the state to lie in the operator domain.
    std::vector<KernelTerm> terms = phi.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Complex net(0.0);
        double scale = 0.0;
        bool first_at_center = true;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if ((terms[k].center - terms[i].center).norm() < kCoincide) {
                net += terms[k].amplitude;
                scale += std::abs(terms[k].amplitude);
                if (k < i) first_at_center = false;
            }
        }
        if (first_at_center && scale > 0.0 && std::abs(net) > 1e-10 * scale)
            fail(ErrorCode::KernelClassViolation,
                 "state is outside the operator domain: kernel singularities "
                 "do not cancel at a center");
    }
    for (auto& t : terms) t.amplitude *= t.z;
    KernelField out(std::move(terms));
    out.merge();
    return out;
}

KernelField PointModel3D::g_star_apply(const ReferencePoint& ref, const Vector& q) const {
    if (static_cast<int>(q.size()) != dim_h())
        fail(ErrorCode::DimensionMismatch, "g_star_apply: charge size does not match centers");
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    std::vector<KernelTerm> terms;
    for (int j = 0; j < dim_h(); ++j) {
        if (ref.real()) {
            terms.push_back(KernelTerm{centers_[j], z0, q(j)});
        } else {
            terms.push_back(KernelTerm{centers_[j], z0, 0.5 * q(j)});
            terms.push_back(KernelTerm{centers_[j], std::conj(z0), 0.5 * q(j)});
        }
    }
    return KernelField(std::move(terms));
}

KernelField PointModel3D::g_diamond_apply(const ReferencePoint& ref, const Vector& q) const {
    if (static_cast<int>(q.size()) != dim_h())
        fail(ErrorCode::DimensionMismatch, "g_diamond_apply: charge size does not match centers");
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    if (ref.real()) return KernelField();
    std::vector<KernelTerm> terms;
    for (int j = 0; j < dim_h(); ++j) {
        terms.push_back(KernelTerm{centers_[j], z0, 0.5 * q(j)});
        terms.push_back(KernelTerm{centers_[j], std::conj(z0), -0.5 * q(j)});
    }
    return KernelField(std::move(terms));
}

Matrix PointModel3D::gamma_matrix(Complex z, const ReferencePoint& ref) const {
    ensure_resolvent_point(z);
    const Complex z0 = ref.z0();
    ensure_resolvent_point(z0);
    const int n = dim_h();
    Matrix out(n, n);
    // Diagonal: regularized value of G* - G_z at a center; the 1/(4 pi r)
    // parts cancel and the finite parts leave (sqrt z - Re sqrt z0)/(4 pi).
    const Complex diag = (sqrt_principal(z) - sqrt_principal(z0).real()) / kFourPi;
    for (int j = 0; j < n; ++j) {
        out(j, j) = diag;
        for (int k = j + 1; k < n; ++k) {
            const double r = (centers_[j] - centers_[k]).norm();
            const Complex off = green_star(ref, r) - free_green(z, r);
            out(j, k) = off;
            out(k, j) = off;
        }
    }
    return out;
}

Matrix aghh_theta(const PointModel3D& model, double alpha) {
    const ReferencePoint ref;  // z0 = i, where this parametrization lives
    const int n = model.dim_h();
    Matrix theta(n, n);
    const double diag = alpha + 1.0 / (kFourPi * std::numbers::sqrt2);
    for (int j = 0; j < n; ++j) {
        theta(j, j) = diag;
        for (int k = j + 1; k < n; ++k) {
            const double r = (model.centers()[j] - model.centers()[k]).norm();
            const double off = -green_star(ref, r).real();
            theta(j, k) = off;
            theta(k, j) = off;
        }
    }
    return theta;
}

}  // namespace kreinkit
