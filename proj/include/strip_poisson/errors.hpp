#pragma once

#include <stdexcept>
#include <string>

namespace strip {

/// A declared decay class makes a weighted integral divergent.
struct non_integrable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Green-function evaluation on the singular lattice {(j, 0), j integer}.
struct singularity_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Compatibility-moment policy violation; carries the measured moments.
struct moment_violation : std::runtime_error {
  double mass;
  double dipole;
  double tol;
  moment_violation(double mass_, double dipole_, double tol_)
      : std::runtime_error("moment violation: <f,1> = " + std::to_string(mass_) +
                           ", <f,y2> = " + std::to_string(dipole_) +
                           " exceed tolerance " + std::to_string(tol_)),
        mass(mass_), dipole(dipole_), tol(tol_) {}
};

/// O(N^2) routine asked to run past its configured node budget.
struct cost_budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tabulated input does not match the expected schema or grid shape.
struct table_format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Near-singular normal equations (weighted polynomial basis degenerate).
struct conditioning_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source field does not satisfy a solver support precondition.
struct support_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace strip
