#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synalg/report.hpp"
#include "synalg/shape.hpp"
#include "synalg/tolerances.hpp"

namespace synalg {

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  ModelShape shape{std::vector<int>{2, 3}};
  Tolerances tol;
  /// Names from suite_names(), or "all".
  std::vector<std::string> suites{"all"};
};

/// synalg, lattice, symmetry, comparability, oml
const std::vector<std::string>& suite_names();

/// Spectral calculus: polar decomposition, spectral reconstruction, the
/// spectral projection formula, positive parts, square roots and inverses.
Report synalg_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                    const Tolerances& tol = {});

/// Runs one suite. Throws kPrecondition for an unknown name.
Report run_suite(const std::string& name, const SuiteConfig& config);

/// Runs the configured suites in the canonical order.
std::vector<Report> run_suites(const SuiteConfig& config);

}  // namespace synalg
