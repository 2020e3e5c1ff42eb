#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreinkit/krein.hpp"

namespace kreinkit {

/// Everything a CLI task can pull out of a config file.  Model and theta
/// are mandatory; the rest is task-specific and validated by the task that
/// consumes it.  Any malformed content raises ConfigInvalid.
struct RunConfig {
    OperatorModel model;
    ThetaParam theta;
    ReferencePoint ref;
    std::optional<double> tol;

    // bound-states
    std::optional<std::pair<double, double>> interval;
    std::optional<int> grid;

    // resolvent
    std::optional<Complex> z;
    std::optional<Vector> state;          // diagonal input state
    std::optional<KernelField> field;     // point-model input state
    std::vector<Vec3> points;             // evaluation points (point model)

    // vn-inverse
    std::optional<Matrix> w;
};

RunConfig load_config(const std::string& path);

}  // namespace kreinkit
