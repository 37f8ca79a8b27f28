#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "synalg/lattice.hpp"
#include "synalg/projection.hpp"
#include "synalg/report.hpp"

namespace synalg {

/// A symmetry s together with the projections it exchanges (ses = f, sfs = e).
struct ExchangeWitness {
  Symmetry s;
  Projection e;
  Projection f;

  /// ||ses - f||
  double residual() const { return exchange_residual(s, e, f); }
  bool valid(const Tolerances& tol = {}) const { return residual() <= tol.proj; }
};

/// e and f with a common complement w inside [0, top], where top is the
/// ambient projection when present and 1 otherwise.
struct PerspectivityWitness {
  Projection e;
  Projection f;
  Projection common_complement;
  std::optional<Projection> ambient;

  Projection top() const { return ambient ? *ambient : Projection::identity(e.shape()); }
  /// Worst residual over e v w = f v w = top and e ^ w = f ^ w = 0.
  double residual(const Tolerances& tol = {}) const;
  bool valid(const Tolerances& tol = {}) const { return residual(tol) <= tol.proj; }
};

/// s = 2p - 1 and its inverse p = (1 + s)/2.
Symmetry sym_from_proj(const Projection& p);
Projection proj_from_sym(const Symmetry& s);

/// s = t + (1 - t^2). Throws kNotPartialSymmetry when t^2 is not a projection.
Symmetry canonical_extension(const Element& t, const Tolerances& tol = {});

/// t = sgn(e + f - 1) extended to a symmetry; s(efe)s = fef.
Symmetry exchange_efe_fef(const Projection& e, const Projection& f, const Tolerances& tol = {});

/// The symmetry above exchanging phi_e f and phi_f e.
ExchangeWitness sasaki_exchange(const Projection& e, const Projection& f,
                                const Tolerances& tol = {});

/// Exchanges e - (e ^ f) and (e v f) - f, via the Sasaki exchange of e and f'.
ExchangeWitness parallelogram_exchange(const Projection& e, const Projection& f,
                                       const Tolerances& tol = {});

/// For complements e and f, a symmetry with ses = f'. Throws kPrecondition
/// when e and f are not complements.
Symmetry complement_exchange(const Projection& e, const Projection& f, const Tolerances& tol = {});

/// Nonzero exchanged subprojections phi_e f <= e and phi_f e <= f, or nullopt
/// when e and f are orthogonal.
std::optional<ExchangeWitness> related_witness(const Projection& e, const Projection& f,
                                               const Tolerances& tol = {});

/// (1 + s)/2 as a common complement of the complements e and f.
PerspectivityWitness common_complement_from_exchange(const ExchangeWitness& w,
                                                     const Tolerances& tol = {});

/// With p = e v f, r = p - (e ^ f), t = rsr and q = (r + t)/2: q is a common
/// complement of e and f in [0, p].
PerspectivityWitness strong_perspectivity(const ExchangeWitness& w, const Tolerances& tol = {});

/// Symmetries s1, s2 with s2 s1 e s1 s2 = f from a common complement in P.
std::pair<Symmetry, Symmetry> perspective_to_chain(const PerspectivityWitness& pw,
                                                   const Tolerances& tol = {});

/// For orthogonal e, f with s2 s1 e s1 s2 = f: s = (x + y) + 1 - e - f with
/// x = s2 s1 e and y = e s1 s2 exchanges e and f.
Symmetry orthogonal_chain_to_symmetry(const Projection& e, const Projection& f,
                                      const Symmetry& s1, const Symmetry& s2,
                                      const Tolerances& tol = {});

/// s = s1 p1 + s2 p2 + (1 - p1 - p2) with pi = ei v fi exchanges e1 + e2 and
/// f1 + f2.
Symmetry finite_additivity(const ExchangeWitness& w1, const ExchangeWitness& w2,
                           const Tolerances& tol = {});

/// Orthogonal families (ei), (fi) with (sum ei) orthogonal to (sum fi):
/// pi = (si ei + ei si + ei + fi)/2, p = sum pi, s = 2p - 1. The identities
/// the construction relies on are recorded in `identities` when given.
Symmetry family_additivity(std::span<const ExchangeWitness> ws, const ModelShape& shape,
                           const Tolerances& tol = {}, Report* identities = nullptr);

/// Pieces of the decomposition of p v q = e v f (p orthogonal to q, e to f):
///   p1 = p ^ (p ^ f)', p2 = p ^ f, q1 = q ^ e, q2 = q ^ (q ^ e)',
///   e1 = e ^ (e ^ q)', f2 = f ^ (f ^ p)'.
/// v1 and v2 are the common complements exhibiting p1 ~ e1 and q2 ~ f2 as
/// strongly perspective; they also serve p1 v q1 against e and p2 v q2
/// against f.
struct SixPiece {
  Projection p1, p2, q1, q2, e1, f2;
  Projection v1, v2;
};

SixPiece six_piece_decomposition(const Projection& p, const Projection& q, const Projection& e,
                                 const Projection& f, const Tolerances& tol = {});
/// Every clause of the decomposition, as report checks.
Report six_piece_check(const Projection& p, const Projection& q, const Projection& e,
                       const Projection& f, const SixPiece& d, const Tolerances& tol = {});

/// Witness constructions and the symmetry transformation properties on
/// seeded random instances.
Report symmetry_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                      const Tolerances& tol = {});

}  // namespace synalg
