#pragma once

#include <variant>

#include "kreinkit/diagonal_model.hpp"
#include "kreinkit/point_model.hpp"

namespace kreinkit {

/// Runtime choice of the underlying restricted operator.
using OperatorModel = std::variant<DiagonalModel, PointModel3D>;

inline int dim_h(const OperatorModel& model) {
    return std::visit([](const auto& m) { return m.dim_h(); }, model);
}

inline void ensure_resolvent_point(const OperatorModel& model, Complex z) {
    std::visit([&](const auto& m) { m.ensure_resolvent_point(z); }, model);
}

inline bool in_resolvent_set(const OperatorModel& model, Complex z) {
    return std::visit([&](const auto& m) { return m.in_resolvent_set(z); }, model);
}

inline Matrix gamma_matrix_of(const OperatorModel& model, Complex z,
                              const ReferencePoint& ref) {
    return std::visit([&](const auto& m) { return m.gamma_matrix(z, ref); }, model);
}

inline GammaMatrix gamma_sample(const OperatorModel& model, Complex z,
                                const ReferencePoint& ref) {
    return GammaMatrix{gamma_matrix_of(model, z, ref), z, ref.z0()};
}

inline bool is_diagonal(const OperatorModel& model) {
    return std::holds_alternative<DiagonalModel>(model);
}

inline bool is_point(const OperatorModel& model) {
    return std::holds_alternative<PointModel3D>(model);
}

}  // namespace kreinkit
