#include "oracles.hpp"

namespace oracle {

Vector eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix column_space(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  const Matrix q = qr.householderQ();
  return q.leftCols(r);
}

Matrix projector(const Matrix& basis) { return basis * basis.transpose(); }

Matrix join(const Matrix& p, const Matrix& q) {
  Matrix both(p.rows(), p.cols() + q.cols());
  both << p, q;
  return projector(column_space(both));
}

Matrix meet(const Matrix& p, const Matrix& q) {
  const Matrix bp = column_space(p);
  const Matrix bq = column_space(q);
  if (bp.cols() == 0 || bq.cols() == 0) return Matrix::Zero(p.rows(), p.cols());
  Matrix stacked(p.rows(), bp.cols() + bq.cols());
  stacked << bp, -bq;
  Eigen::FullPivLU<Matrix> lu(stacked);
  lu.setThreshold(1e-7);
  const Matrix kernel = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return Matrix::Zero(p.rows(), p.cols());
  return projector(column_space(bp * kernel.topRows(bp.cols())));
}

Matrix sasaki(const Matrix& p, const Matrix& q) { return projector(column_space(p * q)); }

bool mackey_compatible(const Matrix& p, const Matrix& q, double tol) {
  const Matrix r = meet(p, q);
  return ((p - r) * (q - r)).norm() <= tol;
}

Matrix plane_exchange(double c, double s) {
  Matrix m(2, 2);
  m << c, s, s, -c;
  return m;
}

double min_eig(const Matrix& a) { return eigenvalues(a)(0); }

}  // namespace oracle
