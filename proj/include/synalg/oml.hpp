#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synalg/projection.hpp"
#include "synalg/report.hpp"

namespace synalg {

/// A finite ortholattice candidate: named elements, an order given by any
/// generating set of relations (closed reflexively and transitively), and an
/// orthocomplement map. Nothing is assumed; verify_oml decides the axioms.
///
/// Text format, one statement per line, '#' starts a comment:
///   elem <name>
///   leq <a> <b>
///   ortho <a> <b>      (b is the orthocomplement of a; the reverse is
///                       inferred when not given)
///   top <name>
///   bottom <name>
class FiniteOml {
 public:
  FiniteOml(std::vector<std::string> names, const std::vector<std::pair<int, int>>& leq,
            std::vector<int> ortho, std::optional<int> top = {}, std::optional<int> bottom = {});

  static FiniteOml parse(std::string_view text);
  static FiniteOml load(const std::string& path);
  std::string to_text() const;

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  /// Throws kPrecondition for an unknown name.
  int index(std::string_view name) const;

  bool leq(int a, int b) const { return leq_[idx(a, b)]; }
  int ortho(int a) const { return ortho_[static_cast<std::size_t>(a)]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }

  /// Greatest lower bound / least upper bound when it exists.
  std::optional<int> try_meet(int a, int b) const;
  std::optional<int> try_join(int a, int b) const;
  /// Throws kPrecondition when the bound does not exist.
  int meet(int a, int b) const;
  int join(int a, int b) const;
  int meet(std::span<const int> xs) const;
  int join(std::span<const int> xs) const;

  bool orthogonal(int a, int b) const { return leq(a, ortho(b)); }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * names_.size() + static_cast<std::size_t>(b);
  }
  std::optional<int> bound(int a, int b, bool lower) const;

  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<int> ortho_;
  std::vector<int> meet_;   // -1 when missing
  std::vector<int> join_;
  int top_ = 0;
  int bottom_ = 0;
};

/// The boolean algebra 2^n. Elements are named by their atoms ("a", "ab",
/// ...), with "0" for the bottom and "1" for the top.
FiniteOml boolean_oml(int n);
/// MO_n: 0, 1 and n pairs of atoms a, a', b, b', ...
FiniteOml mo_oml(int n);
/// Product lattice with componentwise operations; names "x|y".
FiniteOml product_oml(const FiniteOml& l, const FiniteOml& m);

struct OmlVerification {
  Report report{"oml"};
  bool is_oml = false;
  bool distributive = false;
  bool modular = false;
  /// Fraction of tuples examined by the cubic checks (1 when exhaustive).
  double coverage = 1.0;
};

/// Partial order, lattice totality, orthocomplementation, orthomodular law and
/// De Morgan duality for all subsets of up to three elements; distributive
/// and modular flags. Cubic checks are exhaustive up to `cap` elements and
/// sampled beyond.
OmlVerification verify_oml(const FiniteOml& l, int cap = 64);

/// phi_p q = p ^ (p' v q)
int oml_sasaki(const FiniteOml& l, int p, int q);
/// (p ^ q) v (p ^ q') = p
bool oml_compatible(const FiniteOml& l, int p, int q);
/// Elements compatible with every element.
std::vector<int> oml_center(const FiniteOml& l);

/// The six Sasaki projection properties, over all triples.
Report sasaki_properties_check(const FiniteOml& l);

/// L[0, p] with q -> q' ^ p. Names are kept.
FiniteOml oml_interval(const FiniteOml& l, int p);
/// The interval Sasaki projection is the restriction of phi_q, and
/// phi^p_q(r^{perp_p}) = phi_q(r').
Report interval_sasaki_check(const FiniteOml& l, int p);

struct OmlElementPairReport {
  bool compatible = false;
  int sasaki_pq = 0;
  int sasaki_qp = 0;
  /// A common complement in L.
  std::optional<int> perspective;
  /// A common complement in [0, p v q].
  std::optional<int> strongly_perspective;
};

/// Common complement of a and b inside [0, top], by exhaustive search.
std::optional<int> common_complement(const FiniteOml& l, int a, int b, int top);
OmlElementPairReport oml_perspectivity(const FiniteOml& l, int p, int q);

/// A common complement w of e, f in [0, p] lifts to w v p' in L: checked on
/// every triple and every witness.
Report relcompl_lift_check(const FiniteOml& l);
/// phi_p q is strongly perspective to phi_q p for every pair.
Report parallelogram_check(const FiniteOml& l);

struct OmlSixPiece {
  int p1, p2, q1, q2, e1, f2;
  /// Common complement of p1 and e1 in [0, p1 v e1] serving also p1 v q1
  /// against e, and the analogue for q2, f2.
  int v1, v2;
};

/// Throws kPrecondition unless p is orthogonal to q, e to f and p v q = e v f.
/// Among the common complements of p1, e1 (and q2, f2) the first that also
/// serves the composite pair is returned; throws kNoConvergence when none does.
OmlSixPiece oml_six_piece(const FiniteOml& l, int p, int q, int e, int f);
/// Every admissible quadruple: all five clauses. Returns the number of
/// quadruples examined through `count` when given.
Report six_piece_exhaustive(const FiniteOml& l, int* count = nullptr);

/// Orthosum defined exactly on orthogonal pairs, induced order equal to leq,
/// compatibility preserved by meets and joins, the distributive triple rule,
/// centrality of c ^ p in [0, p], and the relative center property.
Report oml_structure_check(const FiniteOml& l);

/// Closes a set of projections under meet, join and orthocomplement. Throws
/// kCapExceeded past `cap` elements.
struct ProjectionOml {
  FiniteOml lattice;
  std::vector<Projection> members;
  /// Index of each input projection.
  std::vector<int> inputs;
};
ProjectionOml oml_from_projections(std::span<const Projection> ps, int cap = 64,
                                   const Tolerances& tol = {});

/// Fixture lattices (boolean 2^1..2^4, MO2, MO3, 2 x MO3) verified and
/// analysed; the six-piece decomposition exhaustively on 2 x MO3 and against
/// the matrix model on random 3x3 quadruples.
Report oml_suite(std::uint64_t seed, int trials = 20, const Tolerances& tol = {});

}  // namespace synalg
