#include "synalg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synalg/eigen_jacobi.hpp"
#include "synalg/error.hpp"

namespace synalg {

Matrix EigenDecomposition::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.transpose();
}

EigenDecomposition eig_sym(const Element& a, int max_sweeps) {
  const ModelShape& shape = a.shape();
  const int n = shape.dim();
  Vector values(n);
  Matrix vectors = Matrix::Zero(n, n);
  std::vector<int> block(static_cast<std::size_t>(n));
  int column = 0;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int off = shape.block_offset(b);
    const int nb = shape.block_size(b);
    const JacobiResult r = jacobi_eigen(a.block(b), max_sweeps);
    for (int k = 0; k < nb; ++k, ++column) {
      values(column) = r.values(k);
      vectors.block(off, column, nb, 1) = r.vectors.col(k);
      block[static_cast<std::size_t>(column)] = b;
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return values(x) < values(y); });

  EigenDecomposition out{shape, Vector(n), Matrix(n, n), std::vector<int>(order.size())};
  for (int k = 0; k < n; ++k) {
    out.values(k) = values(order[k]);
    out.vectors.col(k) = vectors.col(order[k]);
    out.column_block[static_cast<std::size_t>(k)] = block[static_cast<std::size_t>(order[k])];
  }
  return out;
}

namespace {

double max_abs(const Vector& values) {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

// Relative to the spectral radius, but never below tol.rank itself, so that
// round-off noise in an element that should vanish is not promoted to rank.
double rank_cutoff(const Vector& values, const Tolerances& tol) {
  return tol.rank * std::max(1.0, max_abs(values));
}

}  // namespace

double order_unit_norm(const Element& a) { return max_abs(eig_sym(a).values); }

double min_eigenvalue(const Element& a) { return eig_sym(a).values(0); }

bool leq(const Element& a, const Element& b, const Tolerances& tol) {
  return min_eigenvalue(b - a) >= -tol.psd;
}

Element sqrt_pos(const Element& a, const Tolerances& tol) {
  const EigenDecomposition eig = eig_sym(a);
  if (eig.values(0) < -tol.psd) {
    throw Error(ErrorKind::kNotPositive,
                "least eigenvalue " + std::to_string(eig.values(0)) + " is negative");
  }
  return eig.apply([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

Element abs(const Element& a) {
  return eig_sym(a).apply([](double x) { return std::abs(x); });
}

Element pos_part(const Element& a) {
  return eig_sym(a).apply([](double x) { return x > 0.0 ? x : 0.0; });
}

Element neg_part(const Element& a) {
  return eig_sym(a).apply([](double x) { return x < 0.0 ? -x : 0.0; });
}

Projection carrier(const Element& a, const Tolerances& tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double cutoff = rank_cutoff(eig.values, tol);
  return Projection::from(eig.apply([&](double x) { return std::abs(x) > cutoff ? 1.0 : 0.0; }),
                          tol, Snap::kNo);
}

Element signum(const Element& a, const Tolerances& tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double cutoff = rank_cutoff(eig.values, tol);
  return eig.apply([&](double x) {
    if (std::abs(x) <= cutoff) return 0.0;
    return x > 0.0 ? 1.0 : -1.0;
  });
}

Element inverse(const Element& a, const Tolerances& tol) {
  const EigenDecomposition eig = eig_sym(a);
  const double smallest = eig.values.cwiseAbs().minCoeff();
  if (smallest <= tol.inv) {
    throw Error(ErrorKind::kNotInvertible,
                "smallest |eigenvalue| " + std::to_string(smallest) + " <= " +
                    std::to_string(tol.inv));
  }
  return eig.apply([](double x) { return 1.0 / x; });
}

SpectralResolution::SpectralResolution(std::vector<Jump> jumps, ModelShape shape)
    : jumps_(std::move(jumps)), shape_(std::move(shape)) {
  if (jumps_.empty()) throw Error(ErrorKind::kPrecondition, "empty spectral resolution");
}

Projection SpectralResolution::at(double lambda) const {
  Element sum = Element::zero(shape_);
  for (const Jump& j : jumps_) {
    if (j.lambda <= lambda) sum = sum + j.projection.element();
  }
  return Projection::from(sum);
}

Element SpectralResolution::reconstruct() const {
  Element sum = Element::zero(shape_);
  for (const Jump& j : jumps_) sum = sum + j.lambda * j.projection.element();
  return sum;
}

SpectralResolution spectral_resolution(const Element& a, const Tolerances& tol) {
  const EigenDecomposition eig = eig_sym(a);
  const int n = a.dim();
  const double gap = tol.cluster * max_abs(eig.values);

  std::vector<SpectralResolution::Jump> jumps;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && eig.values(end) - eig.values(end - 1) <= gap) ++end;
    double lambda = 0.0;
    Matrix q = Matrix::Zero(n, n);
    for (int k = start; k < end; ++k) {
      lambda += eig.values(k);
      q.noalias() += eig.vectors.col(k) * eig.vectors.col(k).transpose();
    }
    lambda /= static_cast<double>(end - start);
    jumps.push_back({lambda, Projection::from(Element::symmetrized_from(a.shape(), q))});
    start = end;
  }
  return SpectralResolution(std::move(jumps), a.shape());
}

Projection spectral_projection_formula(const Element& a, double lambda, const Tolerances& tol) {
  const Element shifted = a - Element::scalar(a.shape(), lambda);
  const Projection c = carrier(pos_part(shifted), tol);
  return Projection::from(Element::identity(a.shape()) - c.element(), tol);
}

}  // namespace synalg
