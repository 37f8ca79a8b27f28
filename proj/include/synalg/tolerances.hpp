#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace synalg {

/// Numerical thresholds shared by every operation. Defaults sit about two
/// orders of magnitude above the accuracy of the Jacobi eigensolver.
struct Tolerances {
  double sym = 1e-10;      // entrywise asymmetry accepted for an Element
  double proj = 1e-8;      // idempotence / involution / equality residuals
  double rank = 1e-10;     // eigenvalue cutoff for carriers, scaled by max(1, spectral radius)
  double psd = 1e-9;       // slack on the order a <= b
  double comm = 1e-9;      // relative commutator cutoff
  double inv = 1e-10;      // smallest |eigenvalue| accepted by inverse()
  double cluster = 1e-9;   // relative gap merging eigenvalues into one jump

  /// Sets a tolerance by name ("sym", "proj", ...). Returns false for an
  /// unknown name.
  bool set(std::string_view name, double value);

  static const std::vector<std::string>& names();
};

}  // namespace synalg
