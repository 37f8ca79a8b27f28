#include "synalg/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synalg/error.hpp"

namespace synalg {
namespace {

constexpr double kRelativeStop = 1e-14;

double off_diagonal_mass(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(sum);
}

// Applies the rotation annihilating a(p, q) to both a and the accumulated basis v.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

JacobiResult jacobi_eigen(const Matrix& input, int max_sweeps) {
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double scale = a.norm();

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_mass(a);
    if (off <= kRelativeStop * scale) break;
    if (sweep >= max_sweeps) {
      throw Error(ErrorKind::kNoConvergence,
                  "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }
    // Early sweeps skip small entries; later sweeps rotate everything left.
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  JacobiResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    result.values(k) = a(order[k], order[k]);
    result.vectors.col(k) = v.col(order[k]);
  }
  result.sweeps = sweep;
  return result;
}

}  // namespace synalg
