#pragma once

#include <vector>

#include "synalg/element.hpp"
#include "synalg/projection.hpp"

namespace synalg {

/// Eigenpairs of an Element, computed block by block so that every
/// eigenvector is supported in a single block.
struct EigenDecomposition {
  ModelShape shape;
  Vector values;                   // ascending
  Matrix vectors;                  // columns pair with values
  std::vector<int> column_block;   // block owning each column

  /// sum_k f(lambda_k) v_k v_k^T
  template <typename F>
  Element apply(F f) const {
    const int n = shape.dim();
    Matrix out = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      const double w = f(values(k));
      if (w != 0.0) out.noalias() += w * vectors.col(k) * vectors.col(k).transpose();
    }
    return Element::symmetrized_from(shape, out);
  }

  Matrix reconstruct() const;
};

EigenDecomposition eig_sym(const Element& a, int max_sweeps = 100);

/// Order-unit norm: max |eigenvalue|.
double order_unit_norm(const Element& a);
double min_eigenvalue(const Element& a);

/// a <= b iff the least eigenvalue of b - a is >= -tol.psd.
bool leq(const Element& a, const Element& b, const Tolerances& tol = {});

Element sqrt_pos(const Element& a, const Tolerances& tol = {});
Element abs(const Element& a);
Element pos_part(const Element& a);
Element neg_part(const Element& a);

/// a°: sum of the eigenprojections with |lambda| > tol.rank * max(1, ||a||).
/// carrier(0) = 0.
Projection carrier(const Element& a, const Tolerances& tol = {});

/// sgn(a) = (a+)° - (a-)°, with signum(0) = 0.
Element signum(const Element& a, const Tolerances& tol = {});

Element inverse(const Element& a, const Tolerances& tol = {});

/// The right-continuous ascending family p_{a,lambda} as a finite step
/// function. Eigenvalues closer than tol.cluster * ||a|| share one jump.
class SpectralResolution {
 public:
  struct Jump {
    double lambda;
    Projection projection;
  };

  SpectralResolution(std::vector<Jump> jumps, ModelShape shape);

  const std::vector<Jump>& jumps() const { return jumps_; }
  double lower() const { return jumps_.front().lambda; }
  double upper() const { return jumps_.back().lambda; }

  /// p_{a,lambda} = sum of the jump projections with lambda_i <= lambda.
  Projection at(double lambda) const;

  /// sum lambda_i q_i
  Element reconstruct() const;

 private:
  std::vector<Jump> jumps_;
  ModelShape shape_;
};

SpectralResolution spectral_resolution(const Element& a, const Tolerances& tol = {});

/// p_{a,lambda} from its defining formula 1 - ((a - lambda)+)°.
Projection spectral_projection_formula(const Element& a, double lambda,
                                       const Tolerances& tol = {});

}  // namespace synalg
