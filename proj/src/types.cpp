#include "kreinkit/types.hpp"

namespace kreinkit {

double hermiticity_defect(const Matrix& m) {
    double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / scale;
}

double anti_hermiticity_defect(const Matrix& m) {
    double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m + m.adjoint()).norm() / scale;
}

}  // namespace kreinkit
