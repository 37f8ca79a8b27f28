#pragma once

#include "synalg/element.hpp"

namespace synalg {

enum class Snap { kYes, kNo };

/// An idempotent Element. Construction validates ||p^2 - p|| <= tol.proj and,
/// by default, snaps the matrix back onto an exact spectral projection so
/// chained constructions do not drift.
class Projection {
 public:
  static Projection from(const Element& p, const Tolerances& tol = {}, Snap snap = Snap::kYes);

  /// Projection onto the eigenvectors of a with eigenvalue > 1/2. No validation.
  static Projection snap(const Element& a);

  static Projection zero(const ModelShape& shape);
  static Projection identity(const ModelShape& shape);

  const Element& element() const { return p_; }
  operator const Element&() const { return p_; }
  const Matrix& data() const { return p_.data(); }
  const ModelShape& shape() const { return p_.shape(); }

  int rank() const;
  int block_rank(int b) const;
  bool is_zero() const { return rank() == 0; }

 private:
  explicit Projection(Element p) : p_(std::move(p)) {}
  Element p_;
};

/// An Element with s^2 = 1 (symmetric and orthogonal).
class Symmetry {
 public:
  static Symmetry from(const Element& s, const Tolerances& tol = {}, Snap snap = Snap::kYes);
  static Symmetry identity(const ModelShape& shape);

  const Element& element() const { return s_; }
  operator const Element&() const { return s_; }
  const Matrix& data() const { return s_.data(); }
  const ModelShape& shape() const { return s_.shape(); }

 private:
  explicit Symmetry(Element s) : s_(std::move(s)) {}
  Element s_;
};

/// An Element t whose square is a projection.
class PartialSymmetry {
 public:
  static PartialSymmetry from(const Element& t, const Tolerances& tol = {});

  const Element& element() const { return t_; }
  operator const Element&() const { return t_; }
  const ModelShape& shape() const { return t_.shape(); }

 private:
  explicit PartialSymmetry(Element t) : t_(std::move(t)) {}
  Element t_;
};

/// Relations between projections, all decided to tol.proj.
bool below(const Projection& p, const Projection& q, const Tolerances& tol = {});      // p <= q
bool orthogonal(const Projection& p, const Projection& q, const Tolerances& tol = {});
bool same(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// s a s
Element conjugate(const Symmetry& s, const Element& a);
Projection conjugate(const Symmetry& s, const Projection& p);

/// Residual ||s e s - f||.
double exchange_residual(const Symmetry& s, const Projection& e, const Projection& f);

}  // namespace synalg
