#pragma once

#include <cstdint>
#include <vector>

#include "synalg/lattice.hpp"
#include "synalg/projection.hpp"
#include "synalg/report.hpp"
#include "synalg/symmetry.hpp"

namespace synalg {

class Rng;

/// s1, ..., sn acting as a -> sn ... s1 a s1 ... sn. The empty chain is the
/// identity.
struct SymmetryChain {
  std::vector<Symmetry> syms;

  Element apply(const Element& a) const;
  Projection apply(const Projection& p) const;
  std::size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
};

Element apply_chain(const SymmetryChain& c, const Element& a);

/// p ~ q witnessed by a chain carrying p onto q.
struct EquivalenceWitness {
  Projection p;
  Projection q;
  SymmetryChain chain;

  /// ||chain(p) - q||
  double residual() const;
};

bool equivalent_check(const EquivalenceWitness& w, const Tolerances& tol = {});

/// e and f are related iff their central covers overlap, i.e. some block
/// carries both.
bool related(const Projection& e, const Projection& f, const Tolerances& tol = {});

/// In this model p ~ q iff the ranks agree block by block. The chain applies,
/// step by step, one Householder reflection per block carrying the next basis
/// vector of e's range onto the matching one of f's. Throws kRankMismatch.
EquivalenceWitness equal_rank_chain(const Projection& e, const Projection& f,
                                    const Tolerances& tol = {});

/// Nonzero p1 <= w.p and q1 <= w.q exchanged by a single symmetry, by
/// induction on the chain length. Throws kPrecondition when w.p = 0.
ExchangeWitness key_subprojection_exchange(const EquivalenceWitness& w,
                                           const Tolerances& tol = {});

/// e = e1 + e2, f = f1 + f2 with s e1 s = f1 and gamma e2 orthogonal to
/// gamma f2.
struct Decomposition {
  Projection e1, e2, f1, f2;
  Symmetry s;
};

/// Works for any e, f. The orthogonal parts e ^ f', e' ^ f are exhausted
/// greedily: while the remainders are related, equal-rank pieces are taken
/// in every shared block and reduced to one exchanged pair.
Decomposition orthogonal_decomposition(const Projection& e, const Projection& f,
                                       const Tolerances& tol = {});

/// Worst violation of the decomposition invariants.
double decomposition_residual(const Projection& e, const Projection& f, const Decomposition& d,
                              const Tolerances& tol = {});

/// A central h and a symmetry s with s(eh)s <= fh and s f(1-h) s <= e(1-h).
struct ComparabilityResult {
  CentralProjection h;
  Symmetry s;
  Projection e;
  Projection f;

  /// max(0, -min eig(fh - s(eh)s))
  double lower_residual() const;
  /// max(0, -min eig(e(1-h) - s f(1-h) s))
  double upper_residual() const;
};

ComparabilityResult generalized_comparability(const Projection& e, const Projection& f,
                                              const Tolerances& tol = {});

/// For d <= p central in pAp: a central c with c ^ p = d. Throws kPrecondition
/// when d is not below p or not central in pAp.
CentralProjection relative_center_witness(const Projection& p, const Projection& d,
                                          const Tolerances& tol = {});

/// Invariant iff central: the forward implications for central h, a
/// counterexample to "q ^ h = 0 implies q orthogonal to h" for every
/// non-central h tried (at most 100 samples each), unrelatedness to central
/// projections and the blockwise relatedness criterion.
Report invariant_is_central_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                                  const Tolerances& tol = {});

/// gamma p as the join of conjugates sqs of subprojections q <= p: no
/// conjugate leaves gamma p and the sampled join reaches it. `samples` is
/// the number of conjugates per rank-one piece of p (default: largest block
/// size + 1).
Report gamma_as_subequivalence_sup(const Projection& p, Rng& rng, int samples = 0,
                                   const Tolerances& tol = {});

/// Equivalence witnesses, decompositions, comparability and the relative
/// center property on seeded random instances.
Report comparability_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                           const Tolerances& tol = {});

}  // namespace synalg
