#pragma once

#include <string>
#include <vector>

#include "kreinkit/krein.hpp"

namespace kreinkit {

/// One verified identity of the resolvent / boundary calculus.  The id
/// strings ("2.4", "2.8", "2.10", "4.1", "4.2", "5.1-identity",
/// "gamma-unitarity") are part of the machine-readable report contract.
struct IdentityCheck {
    std::string id;
    std::string label;
    double residual;   // relative residual
    double tolerance;
    bool pass;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
};

/// Run the full identity suite against one extension.  Deterministic: the
/// probe data depends only on the model dimensions and the fixed seed.
IdentityReport run_identity_checks(const KreinExtension& ext, double tol,
                                   unsigned seed = 20260825u);

}  // namespace kreinkit
