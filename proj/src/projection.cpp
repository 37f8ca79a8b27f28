#include "synalg/projection.hpp"

#include <cmath>

#include "synalg/error.hpp"
#include "synalg/spectral.hpp"

namespace synalg {

Projection Projection::from(const Element& p, const Tolerances& tol, Snap snap) {
  const double idem = residual(p.data() * p.data() - p.data());
  if (idem > tol.proj) {
    throw Error(ErrorKind::kNotProjection, "||p^2 - p|| = " + std::to_string(idem));
  }
  if (snap == Snap::kNo) return Projection(p);
  return Projection::snap(p);
}

Projection Projection::snap(const Element& a) {
  return Projection(eig_sym(a).apply([](double x) { return x > 0.5 ? 1.0 : 0.0; }));
}

Projection Projection::zero(const ModelShape& shape) { return Projection(Element::zero(shape)); }

Projection Projection::identity(const ModelShape& shape) {
  return Projection(Element::identity(shape));
}

int Projection::rank() const { return static_cast<int>(std::lround(p_.data().trace())); }

int Projection::block_rank(int b) const {
  return static_cast<int>(std::lround(p_.block(b).trace()));
}

Symmetry Symmetry::from(const Element& s, const Tolerances& tol, Snap snap) {
  const int n = s.dim();
  const double inv = residual(s.data() * s.data() - Matrix::Identity(n, n));
  if (inv > tol.proj) {
    throw Error(ErrorKind::kNotSymmetry, "||s^2 - 1|| = " + std::to_string(inv));
  }
  if (snap == Snap::kNo) return Symmetry(s);
  return Symmetry(eig_sym(s).apply([](double x) { return x >= 0.0 ? 1.0 : -1.0; }));
}

Symmetry Symmetry::identity(const ModelShape& shape) { return Symmetry(Element::identity(shape)); }

PartialSymmetry PartialSymmetry::from(const Element& t, const Tolerances& tol) {
  const Matrix t2 = t.data() * t.data();
  const double idem = residual(t2 * t2 - t2);
  if (idem > tol.proj) {
    throw Error(ErrorKind::kNotPartialSymmetry, "t^2 is not a projection, residual " +
                                                    std::to_string(idem));
  }
  return PartialSymmetry(t);
}

bool below(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape());
  return residual(p.data() - q.data() * p.data()) <= tol.proj;
}

bool orthogonal(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape());
  return residual(p.data() * q.data()) <= tol.proj;
}

bool same(const Projection& p, const Projection& q, const Tolerances& tol) {
  return distance(p, q) <= tol.proj;
}

Element conjugate(const Symmetry& s, const Element& a) { return quad(s, a); }

Projection conjugate(const Symmetry& s, const Projection& p) {
  return Projection::from(quad(s, p));
}

double exchange_residual(const Symmetry& s, const Projection& e, const Projection& f) {
  require_same_shape(e.shape(), f.shape());
  return residual(s.data() * e.data() * s.data() - f.data());
}

}  // namespace synalg
