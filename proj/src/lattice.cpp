#include "synalg/lattice.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "synalg/error.hpp"
#include "synalg/random.hpp"
#include "synalg/spectral.hpp"

namespace synalg {

namespace {

// Orthonormal basis of the range of p inside block b.
Matrix block_range(const EigenDecomposition& eig, const ModelShape& shape, int b) {
  const int off = shape.block_offset(b);
  const int n = shape.block_size(b);
  std::vector<int> cols;
  for (int k = 0; k < eig.values.size(); ++k) {
    if (eig.column_block[static_cast<std::size_t>(k)] == b && eig.values(k) > 0.5) cols.push_back(k);
  }
  Matrix basis(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]).segment(off, n);
  }
  return basis;
}

}  // namespace

Projection join(const Projection& p, const Projection& q, const Tolerances& tol) {
  const Projection pair[] = {p, q};
  return join(pair, p.shape(), tol);
}

// carrier(sum p_i) is the column span of the stacked range bases B, and the
// eigenvalues of sum p_i are the squared singular values of B. Working with B
// keeps the gap at sin(angle) instead of sin^2 for nearly parallel ranges.
Projection join(std::span<const Projection> ps, const ModelShape& shape, const Tolerances& tol) {
  std::vector<EigenDecomposition> eigs;
  for (const Projection& p : ps) {
    require_same_shape(p.shape(), shape);
    eigs.push_back(eig_sym(p));
  }
  Matrix out = Matrix::Zero(shape.dim(), shape.dim());
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block_size(b);
    std::vector<Matrix> parts;
    Eigen::Index cols = 0;
    for (const EigenDecomposition& eig : eigs) {
      parts.push_back(block_range(eig, shape, b));
      cols += parts.back().cols();
    }
    if (cols == 0) continue;
    Matrix stacked(n, cols);
    Eigen::Index at = 0;
    for (const Matrix& m : parts) {
      stacked.middleCols(at, m.cols()) = m;
      at += m.cols();
    }
    const Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    const Vector& sv = svd.singularValues();
    const double cutoff = std::sqrt(tol.rank * std::max(1.0, sv(0) * sv(0)));
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv(keep) > cutoff) ++keep;
    const Matrix basis = svd.matrixU().leftCols(keep);
    const int off = shape.block_offset(b);
    out.block(off, off, n, n) = basis * basis.transpose();
  }
  return Projection::from(Element::symmetrized_from(shape, out), tol, Snap::kNo);
}

Projection ortho(const Projection& p) {
  return Projection::from(Element::identity(p.shape()) - p.element(), {}, Snap::kNo);
}

Projection meet(const Projection& p, const Projection& q, const Tolerances& tol) {
  return ortho(join(ortho(p), ortho(q), tol));
}

bool complements(const Projection& e, const Projection& f, const Tolerances& tol) {
  return meet(e, f, tol).is_zero() && join(e, f, tol).rank() == e.shape().dim();
}

bool compatible(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape());
  return residual(p.data() * q.data() - q.data() * p.data()) <= tol.comm;
}


// (pqp)° is the range of pq. With P, Q orthonormal range bases the range of
// pq is spanned by P u for the left singular vectors u of P^T Q, whose
// singular values are cos(angle) rather than cos^2; near-orthogonal pairs
// keep their accuracy this way.
Projection sasaki(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape());
  const ModelShape& shape = p.shape();
  const EigenDecomposition ep = eig_sym(p);
  const EigenDecomposition eq = eig_sym(q);
  const double cutoff = std::sqrt(tol.rank);
  Matrix out = Matrix::Zero(shape.dim(), shape.dim());
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const Matrix pb = block_range(ep, shape, b);
    const Matrix qb = block_range(eq, shape, b);
    if (pb.cols() == 0 || qb.cols() == 0) continue;
    const Eigen::JacobiSVD<Matrix> svd(pb.transpose() * qb, Eigen::ComputeThinU);
    const Vector& sv = svd.singularValues();
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv(keep) > cutoff) ++keep;
    const Matrix basis = pb * svd.matrixU().leftCols(keep);
    const int off = shape.block_offset(b);
    const int n = shape.block_size(b);
    out.block(off, off, n, n) = basis * basis.transpose();
  }
  return Projection::from(Element::symmetrized_from(shape, out), tol, Snap::kNo);
}

// ---------------------------------------------------------------------------
// Center

CentralProjection CentralProjection::from_mask(const ModelShape& shape, std::vector<bool> mask) {
  if (static_cast<int>(mask.size()) != shape.num_blocks()) {
    throw Error(ErrorKind::kShapeMismatch, "central mask needs one entry per block");
  }
  Vector diag = Vector::Zero(shape.dim());
  for (int b = 0; b < shape.num_blocks(); ++b) {
    if (mask[static_cast<std::size_t>(b)]) {
      diag.segment(shape.block_offset(b), shape.block_size(b)).setOnes();
    }
  }
  return CentralProjection(Projection::from(Element::diagonal(shape, diag), {}, Snap::kNo),
                           std::move(mask));
}

CentralProjection CentralProjection::complement() const {
  std::vector<bool> m = mask_;
  m.flip();
  return from_mask(shape(), std::move(m));
}

CentralProjection CentralProjection::operator&(const CentralProjection& other) const {
  std::vector<bool> m(mask_.size());
  for (std::size_t b = 0; b < m.size(); ++b) m[b] = mask_[b] && other.mask_[b];
  return from_mask(shape(), std::move(m));
}

CentralProjection CentralProjection::operator|(const CentralProjection& other) const {
  std::vector<bool> m(mask_.size());
  for (std::size_t b = 0; b < m.size(); ++b) m[b] = mask_[b] || other.mask_[b];
  return from_mask(shape(), std::move(m));
}

bool CentralProjection::is_zero() const {
  for (bool b : mask_) {
    if (b) return false;
  }
  return true;
}

std::optional<CentralProjection> as_central(const Projection& p, const Tolerances& tol) {
  const ModelShape& shape = p.shape();
  std::vector<bool> mask;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const Matrix blk = p.element().block(b);
    const int n = shape.block_size(b);
    if (residual(blk) <= tol.proj) {
      mask.push_back(false);
    } else if (residual(blk - Matrix::Identity(n, n)) <= tol.proj) {
      mask.push_back(true);
    } else {
      return std::nullopt;
    }
  }
  return CentralProjection::from_mask(shape, std::move(mask));
}

bool is_central(const Projection& p, const Tolerances& tol) {
  return as_central(p, tol).has_value();
}

namespace {

// Symmetric matrix units E_ij + E_ji inside each block.
std::vector<Matrix> matrix_units(const ModelShape& shape) {
  std::vector<Matrix> units;
  const int n = shape.dim();
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int off = shape.block_offset(b);
    for (int i = 0; i < shape.block_size(b); ++i) {
      for (int j = i; j < shape.block_size(b); ++j) {
        Matrix u = Matrix::Zero(n, n);
        u(off + i, off + j) = 1.0;
        u(off + j, off + i) = 1.0;
        units.push_back(std::move(u));
      }
    }
  }
  return units;
}

}  // namespace

bool commutes_with_spanning_set(const Projection& p, const Tolerances& tol) {
  for (const Matrix& u : matrix_units(p.shape())) {
    if (residual(p.data() * u - u * p.data()) > tol.comm) return false;
  }
  return true;
}

std::vector<CentralProjection> center_basis(const ModelShape& shape) {
  std::vector<CentralProjection> atoms;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    std::vector<bool> mask(static_cast<std::size_t>(shape.num_blocks()), false);
    mask[static_cast<std::size_t>(b)] = true;
    atoms.push_back(CentralProjection::from_mask(shape, std::move(mask)));
  }
  return atoms;
}

std::vector<CentralProjection> center_elements(const ModelShape& shape) {
  const int k = shape.num_blocks();
  if (k > 20) throw Error(ErrorKind::kCapExceeded, "center too large to enumerate");
  std::vector<CentralProjection> all;
  for (unsigned bits = 0; bits < (1u << k); ++bits) {
    std::vector<bool> mask(static_cast<std::size_t>(k));
    for (int b = 0; b < k; ++b) mask[static_cast<std::size_t>(b)] = (bits >> b) & 1u;
    all.push_back(CentralProjection::from_mask(shape, std::move(mask)));
  }
  return all;
}

CentralProjection central_cover(const Element& a, const Tolerances& tol) {
  const Projection c = carrier(a, tol);
  std::vector<bool> mask;
  for (int b = 0; b < a.shape().num_blocks(); ++b) mask.push_back(c.block_rank(b) > 0);
  return CentralProjection::from_mask(a.shape(), std::move(mask));
}

Projection restrict_to(const Projection& p, const CentralProjection& c) {
  require_same_shape(p.shape(), c.shape());
  return Projection::from(Element::symmetrized_from(p.shape(), p.data() * c.projection().data()),
                          {}, Snap::kNo);
}

std::optional<std::vector<CentralProjection>> centrally_orthogonal(std::span<const Projection> ps,
                                                                   const Tolerances& tol) {
  std::vector<CentralProjection> covers;
  if (ps.size() == 1) {
    covers.push_back(CentralProjection::from_mask(
        ps[0].shape(), std::vector<bool>(static_cast<std::size_t>(ps[0].shape().num_blocks()), true)));
    return covers;
  }
  for (const Projection& p : ps) covers.push_back(central_cover(p, tol));
  for (std::size_t i = 0; i < covers.size(); ++i) {
    for (std::size_t j = i + 1; j < covers.size(); ++j) {
      if (!(covers[i] & covers[j]).is_zero()) return std::nullopt;
    }
  }
  return covers;
}

Projection co_join(std::span<const Projection> ps, const Tolerances& tol) {
  if (ps.empty()) throw Error(ErrorKind::kPrecondition, "co_join of an empty family");
  if (!centrally_orthogonal(ps, tol)) {
    throw Error(ErrorKind::kPrecondition, "family is not centrally orthogonal");
  }
  Element sum = Element::zero(ps[0].shape());
  for (const Projection& p : ps) sum = sum + p.element();
  return Projection::from(sum, tol);
}

// ---------------------------------------------------------------------------
// Intervals

Element IntervalModel::compress(const Element& a) const { return quad(top_, a); }

bool IntervalModel::contains(const Element& a, const Tolerances& tol) const {
  return distance(compress(a), a) <= tol.proj * (1.0 + residual(a.data()));
}

void IntervalModel::require_member(const Projection& q, const Tolerances& tol) const {
  if (!below(q, top_, tol)) {
    throw Error(ErrorKind::kPrecondition, "projection is not below the interval top");
  }
}

Projection IntervalModel::ortho(const Projection& q, const Tolerances& tol) const {
  require_member(q, tol);
  return Projection::from(top_.element() - q.element(), tol);
}

Projection IntervalModel::join(const Projection& q, const Projection& r,
                               const Tolerances& tol) const {
  require_member(q, tol);
  require_member(r, tol);
  return carrier(q.element() + r.element(), tol);
}

Projection IntervalModel::meet(const Projection& q, const Projection& r,
                               const Tolerances& tol) const {
  return ortho(join(ortho(q, tol), ortho(r, tol), tol), tol);
}

Projection IntervalModel::sasaki(const Projection& q, const Projection& r,
                                 const Tolerances& tol) const {
  return meet(q, join(ortho(q, tol), r, tol), tol);
}

std::vector<Element> IntervalModel::spanning_set() const {
  std::vector<Element> out;
  for (const Matrix& u : matrix_units(top_.shape())) {
    out.push_back(compress(Element(top_.shape(), u)));
  }
  return out;
}

IntervalModel interval(const Projection& p) { return IntervalModel(p); }

Projection interval_ortho(const IntervalModel& m, const Projection& q, const Tolerances& tol) {
  return m.ortho(q, tol);
}

Projection interval_sasaki(const IntervalModel& m, const Projection& q, const Projection& r,
                           const Tolerances& tol) {
  return m.sasaki(q, r, tol);
}

// ---------------------------------------------------------------------------

namespace {

bool central_orthogonal(const CentralProjection& a, const CentralProjection& b) {
  return (a & b).is_zero();
}

Projection random_masked_projection(const ModelShape& shape, Rng& rng) {
  std::vector<bool> mask;
  for (int b = 0; b < shape.num_blocks(); ++b) mask.push_back(rng.uniform() < 0.6);
  return restrict_to(random_projection(shape, rng), CentralProjection::from_mask(shape, mask));
}

}  // namespace

Report lattice_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                     const Tolerances& tol) {
  Report report("lattice");
  Rng rng(seed);
  auto dist = [](const Projection& a, const Projection& b) { return distance(a, b); };
  auto perp = [](const Projection& a, const Projection& b) { return residual(a.data() * b.data()); };
  auto plus = [&](const Projection& a, const Projection& b) {
    return Projection::from(a.element() + b.element(), tol);
  };

  for (int t = 0; t < trials; ++t) {
    const Projection p = random_projection(shape, rng);
    const Projection q = random_projection(shape, rng);
    const Projection r = random_projection(shape, rng);

    const Projection sub = random_subprojection(q, rng);
    report.check("orthomodular", dist(join(sub, meet(q, ortho(sub), tol), tol), q), tol.proj);

    const std::vector<Projection> trio = {p, q, r};
    report.check("de_morgan",
                 dist(ortho(join(trio, shape, tol)),
                      meet(meet(ortho(p), ortho(q), tol), ortho(r), tol)),
                 tol.proj);
    report.check("de_morgan.meet",
                 dist(ortho(meet(p, q, tol)), join(ortho(p), ortho(q), tol)), tol.proj);

    // Meets of projections with a planted common part c.
    {
      const Projection c = random_subprojection(p, rng);
      const Projection rest = ortho(c);
      const Projection a = plus(c, random_subprojection(rest, rng));
      const Projection b = plus(c, random_subprojection(rest, rng));
      const Projection m = meet(a, b, tol);
      report.check("meet.lower_bound",
                   residual(m.data() - a.data() * m.data()) + residual(m.data() - b.data() * m.data()),
                   tol.proj);
      report.expect("meet.contains_common", below(c, m, tol));
      const Projection j = join(a, b, tol);
      report.check("join.upper_bound",
                   residual(a.data() - j.data() * a.data()) + residual(b.data() - j.data() * b.data()),
                   tol.proj);
    }

    const Projection phi = sasaki(p, q, tol);
    report.check("sasaki.formula", dist(phi, meet(p, join(ortho(p), q, tol), tol)), tol.proj);

    // (i) phi_p q orthogonal to r iff q orthogonal to phi_p r.
    {
      const Projection rr = random_subprojection(ortho(phi), rng);
      report.check("sasaki.adjoint", perp(q, sasaki(p, rr, tol)), tol.proj);
    }
    // (ii) order preserving.
    {
      const Projection below_q = random_subprojection(q, rng);
      const Projection lo = sasaki(p, below_q, tol);
      report.check("sasaki.monotone", residual(lo.data() - phi.data() * lo.data()), tol.proj);
    }
    // (iii) idempotent.
    report.check("sasaki.idempotent", dist(sasaki(p, phi, tol), phi), tol.proj);
    // (iv) compatible iff phi_p q = p ^ q iff phi_p q <= q.
    {
      const Projection cq =
          plus(random_subprojection(p, rng), random_subprojection(ortho(p), rng));
      const Projection cphi = sasaki(p, cq, tol);
      report.check("sasaki.compatible_meet", dist(cphi, meet(p, cq, tol)), tol.proj);
      report.check("sasaki.compatible_below", residual(cphi.data() - cq.data() * cphi.data()),
                   tol.proj);
      const bool comp = compatible(p, q, tol);
      report.expect("sasaki.compatibility_criterion",
                    comp == same(phi, meet(p, q, tol), tol) && comp == below(phi, q, tol));
    }
    // (v) orthogonal iff phi_p q = 0.
    {
      const Projection oq = random_subprojection(ortho(p), rng);
      report.check("sasaki.orthogonal_zero", residual(sasaki(p, oq, tol).data()), tol.proj);
      report.expect("sasaki.zero_iff_orthogonal", phi.is_zero() == orthogonal(p, q, tol));
    }
    // (vi) joins.
    report.check("sasaki.joins",
                 dist(sasaki(p, join(q, r, tol), tol), join(phi, sasaki(p, r, tol), tol)),
                 tol.proj);
  }
  return report;
}

Report gamma_props_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                         const Tolerances& tol) {
  Report report("lattice");
  Rng rng(seed);
  const Projection one = Projection::identity(shape);
  const Projection zero = Projection::zero(shape);

  report.expect("gamma.unit", central_cover(one, tol).projection().rank() == shape.dim());
  report.expect("gamma.zero", central_cover(zero, tol).is_zero());
  for (const CentralProjection& c : center_elements(shape)) {
    report.expect("gamma.onto_center", central_cover(c, tol) == c);
  }

  for (int t = 0; t < trials; ++t) {
    const Projection p = random_masked_projection(shape, rng);
    const Projection q = random_masked_projection(shape, rng);
    const Projection r = random_masked_projection(shape, rng);
    const CentralProjection gp = central_cover(p, tol);
    const CentralProjection gq = central_cover(q, tol);

    report.expect("gamma.zero_iff_zero", gp.is_zero() == p.is_zero());
    report.check("gamma.dominates", residual(p.data() - gp.projection().data() * p.data()),
                 tol.proj);
    report.expect("gamma.idempotent", central_cover(gp, tol) == gp);

    const Projection sub = random_subprojection(q, rng);
    report.expect("gamma.monotone", (central_cover(sub, tol) & gq) == central_cover(sub, tol));

    const Projection p_meet_gq = meet(p, gq, tol);
    report.expect("gamma.meet_cover", central_cover(p_meet_gq, tol) == (gp & gq));

    const bool gp_perp_q = orthogonal(gp, q, tol);
    const bool gp_perp_gq = central_orthogonal(gp, gq);
    const bool p_perp_gq = orthogonal(p, gq, tol);
    report.expect("gamma.perp_chain", gp_perp_q == gp_perp_gq && gp_perp_gq == p_perp_gq);
    report.expect("gamma.perp_implies", !p_perp_gq || orthogonal(p, q, tol));

    const std::vector<Projection> family = {p, q, r};
    const CentralProjection lhs = central_cover(join(family, shape, tol), tol);
    report.expect("gamma.join", lhs == (gp | gq | central_cover(r, tol)));
  }

  if (shape.num_blocks() <= 4) {
    const auto center = center_elements(shape);
    for (const auto& c : center) {
      for (const auto& d : center) {
        report.expect("gamma.exhaustive_meet",
                      central_cover(meet(c, d, tol), tol) == (c & d));
        report.expect("gamma.exhaustive_perp",
                      orthogonal(c, d, tol) == central_orthogonal(c, d));
      }
    }
  }
  return report;
}

}  // namespace synalg
