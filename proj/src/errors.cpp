#include "kreinkit/errors.hpp"

namespace kreinkit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SpectralPointInSpectrum: return "SpectralPointInSpectrum";
        case ErrorCode::BranchCutViolation: return "BranchCutViolation";
        case ErrorCode::DegenerateRadius: return "DegenerateRadius";
        case ErrorCode::SingularAtCenter: return "SingularAtCenter";
        case ErrorCode::KernelClassViolation: return "KernelClassViolation";
        case ErrorCode::KreinMatrixSingular: return "KreinMatrixSingular";
        case ErrorCode::BoundaryViolation: return "BoundaryViolation";
        case ErrorCode::ZeroInSpectrum: return "ZeroInSpectrum";
        case ErrorCode::ThetaSingular: return "ThetaSingular";
        case ErrorCode::GammaNotAntiHermitian: return "GammaNotAntiHermitian";
        case ErrorCode::GammaNotPositive: return "GammaNotPositive";
        case ErrorCode::SolveFailed: return "SolveFailed";
        case ErrorCode::WPlusOneSingular: return "WPlusOneSingular";
        case ErrorCode::IntervalOutsideResolventSet: return "IntervalOutsideResolventSet";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "UnknownError";
}

}  // namespace kreinkit
