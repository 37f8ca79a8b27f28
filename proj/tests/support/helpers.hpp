#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "synalg/element.hpp"
#include "synalg/projection.hpp"

namespace testing_support {

using synalg::Element;
using synalg::Matrix;
using synalg::ModelShape;
using synalg::Projection;
using synalg::Symmetry;

inline ModelShape shape_of(std::initializer_list<int> blocks) {
  return ModelShape(std::vector<int>(blocks));
}

/// Row-major dense matrix.
inline Matrix mat(int n, std::initializer_list<double> values) {
  Matrix m(n, n);
  auto it = values.begin();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = *it++;
  }
  return m;
}

inline Element elem(const ModelShape& shape, const Matrix& m) { return Element(shape, m); }

inline Element diag(const ModelShape& shape, std::initializer_list<double> d) {
  synalg::Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return Element::diagonal(shape, v);
}

/// The standard plane pair: e onto (1, 0), f onto (1, 1)/sqrt 2.
inline Projection plane_e() { return Projection::from(diag(shape_of({2}), {1, 0})); }
inline Projection plane_f() {
  return Projection::from(elem(shape_of({2}), mat(2, {0.5, 0.5, 0.5, 0.5})));
}

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

inline std::string fixture(const std::string& name) {
  return std::string(SYNALG_FIXTURE_DIR) + "/" + name;
}

}  // namespace testing_support
