#pragma once

#include <stdexcept>
#include <string>

namespace kreinkit {

/// Machine-readable failure categories.  The names double as the "error"
/// field of the CLI's JSON error reports, so they are part of the output
/// contract and must stay stable.
enum class ErrorCode {
    SpectralPointInSpectrum,    // resolvent/eigencurve requested at a point of sigma(A)
    BranchCutViolation,         // point model: z on the cut (-inf, 0]
    DegenerateRadius,           // Green kernel evaluated at r <= 0
    SingularAtCenter,           // field evaluated on a center where kernels do not cancel
    KernelClassViolation,       // operation leaves the closed class of kernel states
    KreinMatrixSingular,        // Theta + Gamma(z) numerically singular
    BoundaryViolation,          // decomposed state fails tau(phi*) = Theta Q
    ZeroInSpectrum,             // inverse formula needs 0 in the resolvent set of A
    ThetaSingular,              // operation needs invertible Theta
    GammaNotAntiHermitian,      // Gamma(i) fails Gamma* = -Gamma
    GammaNotPositive,           // -i Gamma(i) fails positive definiteness
    SolveFailed,                // linear solve produced garbage / inconsistent input
    WPlusOneSingular,           // Cayley back-map at W with -1 in its spectrum
    IntervalOutsideResolventSet,// spectral search interval meets sigma(A)
    DimensionMismatch,          // incompatible shapes between model / Theta / data
    ConfigInvalid,              // unusable configuration or input file
};

const char* error_code_name(ErrorCode code);

/// Exception carrying one of the codes above plus a human-readable detail
/// string.  Everything thrown on purpose by this library is an Error.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code), detail_(detail) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace kreinkit
