#include "synalg/element.hpp"

#include "synalg/error.hpp"
#include "synalg/spectral.hpp"

namespace synalg {
namespace {

void require_square(const ModelShape& shape, const Matrix& data) {
  if (data.rows() != shape.dim() || data.cols() != shape.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "matrix is " + std::to_string(data.rows()) + "x" +
                                               std::to_string(data.cols()) + ", shape " +
                                               shape.to_string() + " needs dimension " +
                                               std::to_string(shape.dim()));
  }
}

void require_block_diagonal(const ModelShape& shape, const Matrix& data) {
  const int n = shape.dim();
  for (int i = 0; i < n; ++i) {
    const int bi = shape.block_of(i);
    for (int j = 0; j < n; ++j) {
      if (shape.block_of(j) != bi && data(i, j) != 0.0) {
        throw Error(ErrorKind::kOffBlock, "entry (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") lies outside the blocks");
      }
    }
  }
}

Matrix clear_off_block(const ModelShape& shape, Matrix data) {
  const int n = shape.dim();
  for (int i = 0; i < n; ++i) {
    const int bi = shape.block_of(i);
    for (int j = 0; j < n; ++j) {
      if (shape.block_of(j) != bi) data(i, j) = 0.0;
    }
  }
  return data;
}

}  // namespace

double residual(const Matrix& m) { return m.norm(); }

void require_same_shape(const ModelShape& a, const ModelShape& b) {
  if (!(a == b)) {
    throw Error(ErrorKind::kShapeMismatch, a.to_string() + " vs " + b.to_string());
  }
}

EnvelopingElement::EnvelopingElement(ModelShape shape, Matrix data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  require_square(shape_, data_);
  require_block_diagonal(shape_, data_);
}

EnvelopingElement EnvelopingElement::zero(const ModelShape& shape) {
  return EnvelopingElement(shape, Matrix::Zero(shape.dim(), shape.dim()));
}

EnvelopingElement EnvelopingElement::identity(const ModelShape& shape) {
  return EnvelopingElement(shape, Matrix::Identity(shape.dim(), shape.dim()));
}

EnvelopingElement EnvelopingElement::transpose() const {
  return EnvelopingElement(shape_, data_.transpose());
}

EnvelopingElement EnvelopingElement::operator+(const EnvelopingElement& other) const {
  require_same_shape(shape_, other.shape_);
  return EnvelopingElement(shape_, data_ + other.data_);
}

EnvelopingElement EnvelopingElement::operator-(const EnvelopingElement& other) const {
  require_same_shape(shape_, other.shape_);
  return EnvelopingElement(shape_, data_ - other.data_);
}

EnvelopingElement EnvelopingElement::operator*(const EnvelopingElement& other) const {
  require_same_shape(shape_, other.shape_);
  return EnvelopingElement(shape_, data_ * other.data_);
}

EnvelopingElement EnvelopingElement::operator*(double scalar) const {
  return EnvelopingElement(shape_, data_ * scalar);
}

Element::Element(ModelShape shape, const Matrix& data, const Tolerances& tol)
    : shape_(std::move(shape)) {
  require_square(shape_, data);
  require_block_diagonal(shape_, data);
  const double asym = (data - data.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.sym) {
    throw Error(ErrorKind::kNotSymmetric, "max |a - a^T| = " + std::to_string(asym));
  }
  data_ = 0.5 * (data + data.transpose());
}

Element::Element(ModelShape shape, Matrix data, Trusted)
    : shape_(std::move(shape)), data_(std::move(data)) {}

Element Element::zero(const ModelShape& shape) {
  return Element(shape, Matrix::Zero(shape.dim(), shape.dim()), Trusted{});
}

Element Element::identity(const ModelShape& shape) {
  return Element(shape, Matrix::Identity(shape.dim(), shape.dim()), Trusted{});
}

Element Element::scalar(const ModelShape& shape, double value) {
  return Element(shape, value * Matrix::Identity(shape.dim(), shape.dim()), Trusted{});
}

Element Element::diagonal(const ModelShape& shape, const Vector& diag) {
  if (diag.size() != shape.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "diagonal length does not match shape");
  }
  return Element(shape, Matrix(diag.asDiagonal()), Trusted{});
}

Element Element::symmetrized_from(const ModelShape& shape, const Matrix& data) {
  require_square(shape, data);
  Matrix sym = 0.5 * (data + data.transpose());
  return Element(shape, clear_off_block(shape, std::move(sym)), Trusted{});
}

Matrix Element::block(int b) const {
  const int off = shape_.block_offset(b);
  const int n = shape_.block_size(b);
  return data_.block(off, off, n, n);
}

Element Element::operator+(const Element& other) const {
  require_same_shape(shape_, other.shape_);
  return Element(shape_, data_ + other.data_, Trusted{});
}

Element Element::operator-(const Element& other) const {
  require_same_shape(shape_, other.shape_);
  return Element(shape_, data_ - other.data_, Trusted{});
}

Element Element::operator-() const { return Element(shape_, -data_, Trusted{}); }

Element Element::operator*(double scalar) const {
  return Element(shape_, data_ * scalar, Trusted{});
}

EnvelopingElement operator*(const Element& a, const Element& b) {
  require_same_shape(a.shape(), b.shape());
  return EnvelopingElement(a.shape(), a.data() * b.data());
}

EnvelopingElement operator*(const EnvelopingElement& x, const Element& a) {
  return x * a.env();
}

EnvelopingElement operator*(const Element& a, const EnvelopingElement& x) {
  return a.env() * x;
}

Element jordan(const Element& a, const Element& b) {
  require_same_shape(a.shape(), b.shape());
  const Matrix ab = a.data() * b.data();
  return Element::symmetrized_from(a.shape(), ab);
}

Element quad(const Element& a, const Element& b) {
  require_same_shape(a.shape(), b.shape());
  return Element::symmetrized_from(a.shape(), a.data() * b.data() * a.data());
}

bool commutes(const Element& a, const Element& b, const Tolerances& tol) {
  require_same_shape(a.shape(), b.shape());
  const Matrix c = a.data() * b.data() - b.data() * a.data();
  return residual(c) <= tol.comm * (order_unit_norm(a) * order_unit_norm(b) + 1.0);
}

EnvelopingElement env_mul(const EnvelopingElement& x, const EnvelopingElement& y) {
  return x * y;
}

Element symmetrize_sum(const EnvelopingElement& x, const EnvelopingElement& y,
                       const Tolerances& tol) {
  require_same_shape(x.shape(), y.shape());
  return Element(x.shape(), x.data() + y.data(), tol);
}

double distance(const Element& a, const Element& b) {
  require_same_shape(a.shape(), b.shape());
  return residual(a.data() - b.data());
}

}  // namespace synalg
