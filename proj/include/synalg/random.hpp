#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "synalg/element.hpp"
#include "synalg/projection.hpp"

namespace synalg {

/// xoshiro256** seeded through splitmix64. Output is identical on every
/// platform, which the standard distributions do not guarantee.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t s_[4];
};

/// Entries uniform in [-1, 1] in every block, then symmetrized.
Element random_element(const ModelShape& shape, Rng& rng);

/// a^2 for a random element.
Element random_positive(const ModelShape& shape, Rng& rng);

/// Projection onto the positive eigenspace of a random element.
Projection random_projection(const ModelShape& shape, Rng& rng);

/// Random projection with the requested rank in each block.
Projection random_projection_with_ranks(const ModelShape& shape, const std::vector<int>& ranks,
                                        Rng& rng);

/// Random subprojection of p (possibly 0 or p).
Projection random_subprojection(const Projection& p, Rng& rng);

/// Random subprojection of p with the requested rank in each block; every
/// rank must not exceed the block rank of p.
Projection random_subprojection_with_ranks(const Projection& p, const std::vector<int>& ranks,
                                           Rng& rng);

/// 2p - 1 for a random projection p.
Symmetry random_symmetry(const ModelShape& shape, Rng& rng);

/// The Householder reflection 1 - 2 w w^T / |w|^2 (w supported in one block).
Symmetry householder(const ModelShape& shape, const Vector& w);

/// Orthonormal basis (columns) of the range of p, block by block.
Matrix range_basis(const Projection& p);

}  // namespace synalg
