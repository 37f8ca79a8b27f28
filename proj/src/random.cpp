#include "synalg/random.hpp"

#include <algorithm>

#include "synalg/error.hpp"
#include "synalg/spectral.hpp"

namespace synalg {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Largest ranks[b] eigenvectors of c in each block.
Projection top_eigenprojection(const Element& c, const std::vector<int>& ranks) {
  const ModelShape& shape = c.shape();
  if (static_cast<int>(ranks.size()) != shape.num_blocks()) {
    throw Error(ErrorKind::kShapeMismatch, "one rank per block expected");
  }
  const EigenDecomposition eig = eig_sym(c);
  const int n = shape.dim();
  std::vector<int> taken(ranks.size(), 0);
  Matrix p = Matrix::Zero(n, n);
  for (int k = n - 1; k >= 0; --k) {
    const auto b = static_cast<std::size_t>(eig.column_block[static_cast<std::size_t>(k)]);
    if (taken[b] < ranks[b]) {
      p.noalias() += eig.vectors.col(k) * eig.vectors.col(k).transpose();
      ++taken[b];
    }
  }
  return Projection::from(Element::symmetrized_from(shape, p));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>((*this)() % span);
}

Element random_element(const ModelShape& shape, Rng& rng) {
  const int n = shape.dim();
  Matrix m = Matrix::Zero(n, n);
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int off = shape.block_offset(b);
    for (int i = 0; i < shape.block_size(b); ++i) {
      for (int j = 0; j < shape.block_size(b); ++j) m(off + i, off + j) = rng.uniform(-1.0, 1.0);
    }
  }
  return Element::symmetrized_from(shape, m);
}

Element random_positive(const ModelShape& shape, Rng& rng) {
  const Element a = random_element(shape, rng);
  return quad(a, Element::identity(shape));
}

Projection random_projection(const ModelShape& shape, Rng& rng) {
  return Projection::snap(signum(random_element(shape, rng)) * 0.5 +
                          Element::scalar(shape, 0.5));
}

Projection random_projection_with_ranks(const ModelShape& shape, const std::vector<int>& ranks,
                                        Rng& rng) {
  for (int b = 0; b < shape.num_blocks(); ++b) {
    if (ranks[static_cast<std::size_t>(b)] < 0 ||
        ranks[static_cast<std::size_t>(b)] > shape.block_size(b)) {
      throw Error(ErrorKind::kPrecondition, "rank out of range for block " + std::to_string(b));
    }
  }
  return top_eigenprojection(random_element(shape, rng), ranks);
}

Projection random_subprojection(const Projection& p, Rng& rng) {
  std::vector<int> ranks;
  for (int b = 0; b < p.shape().num_blocks(); ++b) {
    ranks.push_back(rng.uniform_int(0, p.block_rank(b)));
  }
  return random_subprojection_with_ranks(p, ranks, rng);
}

Projection random_subprojection_with_ranks(const Projection& p, const std::vector<int>& ranks,
                                           Rng& rng) {
  const ModelShape& shape = p.shape();
  for (int b = 0; b < shape.num_blocks(); ++b) {
    if (ranks[static_cast<std::size_t>(b)] > p.block_rank(b)) {
      throw Error(ErrorKind::kPrecondition, "requested rank exceeds the projection's rank");
    }
  }
  // Shift so that every eigenvalue inside the range of p is positive; the
  // compression vanishes outside it.
  const double shift = 2.0 * shape.dim() + 1.0;
  const Element c = quad(p, random_element(shape, rng) + Element::scalar(shape, shift));
  return top_eigenprojection(c, ranks);
}

Symmetry random_symmetry(const ModelShape& shape, Rng& rng) {
  const Projection p = random_projection(shape, rng);
  return Symmetry::from(2.0 * p.element() - Element::identity(shape));
}

Symmetry householder(const ModelShape& shape, const Vector& w) {
  const int n = shape.dim();
  const double norm2 = w.squaredNorm();
  if (norm2 == 0.0) return Symmetry::identity(shape);
  Matrix h = Matrix::Identity(n, n) - 2.0 * w * w.transpose() / norm2;
  return Symmetry::from(Element(shape, h, Tolerances{}));
}

Matrix range_basis(const Projection& p) {
  const EigenDecomposition eig = eig_sym(p);
  const int n = p.shape().dim();
  std::vector<int> cols;
  for (int k = 0; k < n; ++k) {
    if (eig.values(k) > 0.5) cols.push_back(k);
  }
  Matrix basis(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
  }
  return basis;
}

}  // namespace synalg
