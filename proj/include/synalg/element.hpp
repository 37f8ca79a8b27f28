#pragma once

#include <Eigen/Dense>

#include "synalg/shape.hpp"
#include "synalg/tolerances.hpp"

namespace synalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Frobenius norm; an upper bound for the operator norm, used for every
/// residual reported by the library.
double residual(const Matrix& m);

/// Member of the enveloping algebra: a square block-diagonal matrix that need
/// not be symmetric. Houses intermediates such as s2*s1*e.
class EnvelopingElement {
 public:
  EnvelopingElement(ModelShape shape, Matrix data);

  static EnvelopingElement zero(const ModelShape& shape);
  static EnvelopingElement identity(const ModelShape& shape);

  const ModelShape& shape() const { return shape_; }
  const Matrix& data() const { return data_; }

  EnvelopingElement transpose() const;

  EnvelopingElement operator+(const EnvelopingElement& other) const;
  EnvelopingElement operator-(const EnvelopingElement& other) const;
  EnvelopingElement operator*(const EnvelopingElement& other) const;
  EnvelopingElement operator*(double scalar) const;

 private:
  ModelShape shape_;
  Matrix data_;
};

/// Member of the synaptic algebra: a real symmetric block-diagonal matrix.
class Element {
 public:
  /// Validates block structure and symmetry (entrywise within tol.sym), then
  /// stores the exactly symmetrized matrix.
  Element(ModelShape shape, const Matrix& data, const Tolerances& tol = {});

  static Element zero(const ModelShape& shape);
  static Element identity(const ModelShape& shape);
  static Element scalar(const ModelShape& shape, double value);
  static Element diagonal(const ModelShape& shape, const Vector& diag);

  /// For results that are symmetric up to rounding (products such as aba):
  /// symmetrizes and clears off-block entries without validation.
  static Element symmetrized_from(const ModelShape& shape, const Matrix& data);

  const ModelShape& shape() const { return shape_; }
  const Matrix& data() const { return data_; }
  int dim() const { return shape_.dim(); }

  EnvelopingElement env() const { return EnvelopingElement(shape_, data_); }

  /// Restriction to block b (a block-size square matrix).
  Matrix block(int b) const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(double scalar) const;
  friend Element operator*(double scalar, const Element& a) { return a * scalar; }

 private:
  struct Trusted {};
  Element(ModelShape shape, Matrix data, Trusted);

  ModelShape shape_;
  Matrix data_;
};

void require_same_shape(const ModelShape& a, const ModelShape& b);

/// Product in the enveloping algebra.
EnvelopingElement operator*(const Element& a, const Element& b);
EnvelopingElement operator*(const EnvelopingElement& x, const Element& a);
EnvelopingElement operator*(const Element& a, const EnvelopingElement& x);

/// a o b = (ab + ba) / 2
Element jordan(const Element& a, const Element& b);

/// J_a(b) = aba
Element quad(const Element& a, const Element& b);

/// ||ab - ba|| <= tol.comm * (||a|| ||b|| + 1), norms in the order-unit norm.
bool commutes(const Element& a, const Element& b, const Tolerances& tol = {});

EnvelopingElement env_mul(const EnvelopingElement& x, const EnvelopingElement& y);

/// x + y as an Element; fails with kNotSymmetric unless x + y is symmetric
/// within tol.sym (as for x = s2 s1 e and y = e s1 s2).
Element symmetrize_sum(const EnvelopingElement& x, const EnvelopingElement& y,
                       const Tolerances& tol = {});

double distance(const Element& a, const Element& b);

}  // namespace synalg
