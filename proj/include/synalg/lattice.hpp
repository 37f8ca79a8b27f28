#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "synalg/projection.hpp"
#include "synalg/report.hpp"

namespace synalg {

// The orthomodular lattice P of projections of the block model.

/// p v q = (p + q)°
Projection join(const Projection& p, const Projection& q, const Tolerances& tol = {});
/// Join of a finite family; the join of an empty family is 0.
Projection join(std::span<const Projection> ps, const ModelShape& shape,
                const Tolerances& tol = {});
/// p ^ q = (p' v q')'
Projection meet(const Projection& p, const Projection& q, const Tolerances& tol = {});
/// p' = 1 - p
Projection ortho(const Projection& p);

/// e ^ f = 0 and e v f = 1.
bool complements(const Projection& e, const Projection& f, const Tolerances& tol = {});

/// Compatible projections are exactly the commuting ones.
bool compatible(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// phi_p(q) = (pqp)°, which equals p ^ (p' v q).
Projection sasaki(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// A central projection: blockwise 0 or 1. The mask records which blocks are 1.
class CentralProjection {
 public:
  static CentralProjection from_mask(const ModelShape& shape, std::vector<bool> mask);

  const Projection& projection() const { return p_; }
  operator const Projection&() const { return p_; }
  operator const Element&() const { return p_.element(); }
  const std::vector<bool>& mask() const { return mask_; }
  const ModelShape& shape() const { return p_.shape(); }

  CentralProjection complement() const;
  CentralProjection operator&(const CentralProjection& other) const;
  CentralProjection operator|(const CentralProjection& other) const;
  bool operator==(const CentralProjection& other) const { return mask_ == other.mask_; }
  bool is_zero() const;

 private:
  CentralProjection(Projection p, std::vector<bool> mask) : p_(std::move(p)), mask_(std::move(mask)) {}
  Projection p_;
  std::vector<bool> mask_;
};

/// Structural test: each block of p is 0 or the block identity.
bool is_central(const Projection& p, const Tolerances& tol = {});
std::optional<CentralProjection> as_central(const Projection& p, const Tolerances& tol = {});

/// Cross-check of centrality: p commutes with the symmetric matrix units of
/// every block, which span the model.
bool commutes_with_spanning_set(const Projection& p, const Tolerances& tol = {});

/// The k atoms of the center, one per block.
std::vector<CentralProjection> center_basis(const ModelShape& shape);
/// All 2^k central projections.
std::vector<CentralProjection> center_elements(const ModelShape& shape);

/// gamma(a): the smallest central projection dominating a°.
CentralProjection central_cover(const Element& a, const Tolerances& tol = {});

/// p c for central c (exact, by clearing blocks).
Projection restrict_to(const Projection& p, const CentralProjection& c);

/// Witnessing pairwise orthogonal central family (gamma p_i), or nullopt
/// when the covers overlap.
std::optional<std::vector<CentralProjection>> centrally_orthogonal(
    std::span<const Projection> ps, const Tolerances& tol = {});
/// Supremum of a centrally orthogonal family (their sum).
Projection co_join(std::span<const Projection> ps, const Tolerances& tol = {});

/// The sub-algebra pAp with unit p; its projection lattice is P[0, p].
class IntervalModel {
 public:
  explicit IntervalModel(Projection top) : top_(std::move(top)) {}

  const Projection& top() const { return top_; }
  /// pap
  Element compress(const Element& a) const;
  bool contains(const Element& a, const Tolerances& tol = {}) const;

  /// Lattice operations computed inside the interval: q v r as in P, and
  /// q ^ r via the relative orthocomplement q -> p - q.
  Projection join(const Projection& q, const Projection& r, const Tolerances& tol = {}) const;
  Projection meet(const Projection& q, const Projection& r, const Tolerances& tol = {}) const;
  Projection ortho(const Projection& q, const Tolerances& tol = {}) const;
  /// phi^p_q(r) = q ^_p (q^{perp_p} v r)
  Projection sasaki(const Projection& q, const Projection& r, const Tolerances& tol = {}) const;

  /// A spanning set of pAp (compressions of the symmetric matrix units).
  std::vector<Element> spanning_set() const;

 private:
  void require_member(const Projection& q, const Tolerances& tol) const;
  Projection top_;
};

IntervalModel interval(const Projection& p);
Projection interval_ortho(const IntervalModel& m, const Projection& q, const Tolerances& tol = {});
Projection interval_sasaki(const IntervalModel& m, const Projection& q, const Projection& r,
                           const Tolerances& tol = {});
/// Orthomodular law, De Morgan, meets of projections sharing a known common
/// part, and the Sasaki projection properties on seeded random projections.
Report lattice_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                     const Tolerances& tol = {});

/// Randomized check of the central cover properties: gamma 1 = 1, gamma p = 0
/// iff p = 0, idempotence and monotonicity, gamma(p ^ gamma q) = gamma p ^
/// gamma q, the orthogonality chain, and gamma of finite joins. Shapes with at
/// most four blocks are also checked exhaustively over the center.
Report gamma_props_suite(std::uint64_t seed, const ModelShape& shape, int trials = 50,
                         const Tolerances& tol = {});

}  // namespace synalg
