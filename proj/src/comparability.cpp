#include "synalg/comparability.hpp"

#include <algorithm>
#include <cmath>

#include "synalg/error.hpp"
#include "synalg/random.hpp"
#include "synalg/spectral.hpp"

namespace synalg {

namespace {

Projection difference(const Projection& a, const Projection& b, const Tolerances& tol) {
  return Projection::from(a.element() - b.element(), tol);
}

Projection sum(const Projection& a, const Projection& b, const Tolerances& tol) {
  return Projection::from(a.element() + b.element(), tol);
}

// Orthonormal basis of the range of p inside block b, as full-length columns.
std::vector<Vector> block_basis(const Projection& p, int b) {
  const EigenDecomposition eig = eig_sym(p);
  std::vector<Vector> out;
  for (int k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) > 0.5 && eig.column_block[static_cast<std::size_t>(k)] == b) {
      out.push_back(eig.vectors.col(k));
    }
  }
  return out;
}

Projection span_of(const ModelShape& shape, const std::vector<Vector>& vs) {
  Matrix m = Matrix::Zero(shape.dim(), shape.dim());
  for (const Vector& v : vs) m += v * v.transpose();
  return Projection::from(Element::symmetrized_from(shape, m));
}

// Subprojection of p spanned by the first ranks[b] basis vectors of each block.
Projection leading_subprojection(const Projection& p, const std::vector<int>& ranks) {
  std::vector<Vector> vs;
  for (int b = 0; b < p.shape().num_blocks(); ++b) {
    const std::vector<Vector> basis = block_basis(p, b);
    for (int i = 0; i < ranks[static_cast<std::size_t>(b)]; ++i) {
      vs.push_back(basis[static_cast<std::size_t>(i)]);
    }
  }
  return span_of(p.shape(), vs);
}

double negative_part(const Element& a) { return std::max(0.0, -min_eigenvalue(a)); }

// Greedy exhaustion for orthogonal e, f.
Decomposition exhaust_orthogonal(const Projection& e, const Projection& f,
                                 const Tolerances& tol) {
  const ModelShape& shape = e.shape();
  std::vector<ExchangeWitness> pairs;
  Projection e_rem = e;
  Projection f_rem = f;
  for (int guard = 0; guard <= shape.dim() && related(e_rem, f_rem, tol); ++guard) {
    std::vector<int> ranks;
    for (int b = 0; b < shape.num_blocks(); ++b) {
      ranks.push_back(std::min(e_rem.block_rank(b), f_rem.block_rank(b)));
    }
    const Projection ep = leading_subprojection(e_rem, ranks);
    const Projection fp = leading_subprojection(f_rem, ranks);
    const ExchangeWitness w = key_subprojection_exchange(equal_rank_chain(ep, fp, tol), tol);
    pairs.push_back(w);
    e_rem = difference(e_rem, w.e, tol);
    f_rem = difference(f_rem, w.f, tol);
  }
  if (related(e_rem, f_rem, tol)) {
    throw Error(ErrorKind::kNoConvergence, "greedy decomposition did not exhaust");
  }
  const Symmetry s = family_additivity(pairs, shape, tol);
  return Decomposition{difference(e, e_rem, tol), e_rem, difference(f, f_rem, tol), f_rem, s};
}

}  // namespace

Element SymmetryChain::apply(const Element& a) const {
  Element out = a;
  for (const Symmetry& s : syms) {
    require_same_shape(s.shape(), a.shape());
    out = quad(s, out);
  }
  return out;
}

Projection SymmetryChain::apply(const Projection& p) const {
  return Projection::from(apply(p.element()));
}

Element apply_chain(const SymmetryChain& c, const Element& a) { return c.apply(a); }

double EquivalenceWitness::residual() const { return distance(chain.apply(p.element()), q); }

bool equivalent_check(const EquivalenceWitness& w, const Tolerances& tol) {
  require_same_shape(w.p.shape(), w.q.shape());
  return w.residual() <= tol.proj;
}

bool related(const Projection& e, const Projection& f, const Tolerances& tol) {
  return !(central_cover(e, tol) & central_cover(f, tol)).is_zero();
}

EquivalenceWitness equal_rank_chain(const Projection& e, const Projection& f,
                                    const Tolerances& tol) {
  const ModelShape& shape = e.shape();
  require_same_shape(shape, f.shape());
  for (int b = 0; b < shape.num_blocks(); ++b) {
    if (e.block_rank(b) != f.block_rank(b)) {
      throw Error(ErrorKind::kRankMismatch,
                  "block " + std::to_string(b) + " ranks " + std::to_string(e.block_rank(b)) +
                      " and " + std::to_string(f.block_rank(b)) + " differ");
    }
  }
  EquivalenceWitness w{e, f, {}};
  if (same(e, f, tol)) return w;

  const int n = shape.dim();
  // Per block, the sequence of reflections; step i reflects u_i onto v_i
  // after the earlier reflections have acted.
  std::vector<std::vector<Vector>> normals(static_cast<std::size_t>(shape.num_blocks()));
  std::size_t steps = 0;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const std::vector<Vector> us = block_basis(e, b);
    const std::vector<Vector> vs = block_basis(f, b);
    Matrix acc = Matrix::Identity(n, n);
    for (std::size_t i = 0; i < us.size(); ++i) {
      const Vector u = acc * us[i];
      Vector v = vs[i];
      if (u.dot(v) < 0.0) v = -v;
      const Vector wv = u - v;
      if (wv.norm() <= 1e-12) continue;
      const Vector unit = wv / wv.norm();
      acc = (Matrix::Identity(n, n) - 2.0 * unit * unit.transpose()) * acc;
      normals[static_cast<std::size_t>(b)].push_back(unit);
    }
    steps = std::max(steps, normals[static_cast<std::size_t>(b)].size());
  }
  for (std::size_t i = 0; i < steps; ++i) {
    Matrix s = Matrix::Identity(n, n);
    for (const auto& blk : normals) {
      if (i < blk.size()) s -= 2.0 * blk[i] * blk[i].transpose();
    }
    w.chain.syms.push_back(Symmetry::from(Element::symmetrized_from(shape, s), tol));
  }
  return w;
}

ExchangeWitness key_subprojection_exchange(const EquivalenceWitness& w, const Tolerances& tol) {
  if (w.p.is_zero()) throw Error(ErrorKind::kPrecondition, "zero projection has no subprojections");
  const ModelShape& shape = w.p.shape();
  if (w.chain.empty()) return ExchangeWitness{Symmetry::identity(shape), w.p, w.q};
  if (w.chain.size() == 1) return ExchangeWitness{w.chain.syms.front(), w.p, w.q};

  const Symmetry& last = w.chain.syms.back();
  EquivalenceWitness shorter{w.p, conjugate(last, w.q), w.chain};
  shorter.chain.syms.pop_back();
  const ExchangeWitness inner = key_subprojection_exchange(shorter, tol);
  const Projection k = conjugate(last, inner.f);
  if (std::optional<ExchangeWitness> rel = related_witness(inner.e, k, tol)) return *rel;
  return ExchangeWitness{orthogonal_chain_to_symmetry(inner.e, k, inner.s, last, tol), inner.e, k};
}

Decomposition orthogonal_decomposition(const Projection& e, const Projection& f,
                                       const Tolerances& tol) {
  require_same_shape(e.shape(), f.shape());
  const ExchangeWitness first = sasaki_exchange(e, f, tol);
  const Projection e12 = difference(e, first.e, tol);
  const Projection f12 = difference(f, first.f, tol);
  const Decomposition rest = exhaust_orthogonal(e12, f12, tol);
  const Symmetry s =
      finite_additivity(first, ExchangeWitness{rest.s, rest.e1, rest.f1}, tol);
  return Decomposition{sum(first.e, rest.e1, tol), rest.e2, sum(first.f, rest.f1, tol), rest.f2,
                       s};
}

double decomposition_residual(const Projection& e, const Projection& f, const Decomposition& d,
                              const Tolerances& tol) {
  double worst = 0.0;
  worst = std::max(worst, distance(d.e1.element() + d.e2.element(), e));
  worst = std::max(worst, distance(d.f1.element() + d.f2.element(), f));
  worst = std::max(worst, residual(d.e1.data() * d.e2.data()));
  worst = std::max(worst, residual(d.f1.data() * d.f2.data()));
  worst = std::max(worst, exchange_residual(d.s, d.e1, d.f1));
  if (!(central_cover(d.e2, tol) & central_cover(d.f2, tol)).is_zero()) {
    worst = std::max(worst, 1.0);
  }
  return worst;
}

double ComparabilityResult::lower_residual() const {
  const Projection eh = restrict_to(e, h);
  const Projection fh = restrict_to(f, h);
  return negative_part(fh.element() - quad(s, eh));
}

double ComparabilityResult::upper_residual() const {
  const CentralProjection g = h.complement();
  const Projection eg = restrict_to(e, g);
  const Projection fg = restrict_to(f, g);
  return negative_part(eg.element() - quad(s, fg));
}

ComparabilityResult generalized_comparability(const Projection& e, const Projection& f,
                                              const Tolerances& tol) {
  require_same_shape(e.shape(), f.shape());
  const ExchangeWitness first = sasaki_exchange(e, f, tol);
  const Projection e2 = difference(e, first.e, tol);
  const Projection f2 = difference(f, first.f, tol);

  // Comparability of the orthogonal remainders.
  const Decomposition d = exhaust_orthogonal(e2, f2, tol);
  // Blocks where neither remainder survives go to h.
  const CentralProjection g = central_cover(d.e2, tol);
  const CentralProjection h = g.complement();
  const Projection e2h = restrict_to(e2, h);
  const Projection f2g = restrict_to(f2, g);
  const Projection f3 = conjugate(d.s, e2h);
  const Projection e3 = conjugate(d.s, f2g);

  const ExchangeWitness second{d.s, sum(e2h, e3, tol), sum(f3, f2g, tol)};
  return ComparabilityResult{h, finite_additivity(first, second, tol), e, f};
}

CentralProjection relative_center_witness(const Projection& p, const Projection& d,
                                          const Tolerances& tol) {
  if (!below(d, p, tol)) throw Error(ErrorKind::kPrecondition, "d is not below p");
  for (const Element& a : interval(p).spanning_set()) {
    if (residual(d.data() * a.data() - a.data() * d.data()) > tol.comm) {
      throw Error(ErrorKind::kPrecondition, "d is not central in the interval below p");
    }
  }
  const ComparabilityResult r = generalized_comparability(d, difference(p, d, tol), tol);
  return r.h.complement();
}

// ---------------------------------------------------------------------------

namespace {

Projection random_chain_image(const Projection& p, Rng& rng, SymmetryChain* chain, int length) {
  SymmetryChain c;
  for (int i = 0; i < length; ++i) c.syms.push_back(random_symmetry(p.shape(), rng));
  const Projection out = c.apply(p);
  if (chain != nullptr) *chain = std::move(c);
  return out;
}

CentralProjection random_central(const ModelShape& shape, Rng& rng) {
  std::vector<bool> mask;
  for (int b = 0; b < shape.num_blocks(); ++b) mask.push_back(rng.uniform() < 0.5);
  return CentralProjection::from_mask(shape, std::move(mask));
}

// Searches for q with q ^ h = 0 and q not orthogonal to h. Returns the
// number of samples used, or 0 when none was found within the budget.
int counterexample_search(const Projection& h, Rng& rng, int budget, const Tolerances& tol) {
  const ModelShape& shape = h.shape();
  for (int sample = 1; sample <= budget; ++sample) {
    std::vector<int> ranks;
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const int n = shape.block_size(b);
      const int r = h.block_rank(b);
      ranks.push_back(r == 0 ? rng.uniform_int(0, n) : r == n ? 0 : rng.uniform_int(1, n - r));
    }
    const Projection q = random_projection_with_ranks(shape, ranks, rng);
    if (meet(q, h, tol).is_zero() && !orthogonal(q, h, tol)) return sample;
  }
  return 0;
}

Projection random_noncentral(const ModelShape& shape, Rng& rng, const Tolerances& tol) {
  for (;;) {
    const Projection h = random_projection(shape, rng);
    if (!is_central(h, tol)) return h;
  }
}

bool has_partial_block(const ModelShape& shape) {
  for (int n : shape.blocks()) {
    if (n > 1) return true;
  }
  return false;
}

}  // namespace

Report invariant_is_central_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                                  const Tolerances& tol) {
  Report r("comparability");
  Rng rng(seed);
  std::vector<CentralProjection> centrals;
  if (shape.num_blocks() <= 4) {
    centrals = center_elements(shape);
  } else {
    for (int i = 0; i < 16; ++i) centrals.push_back(random_central(shape, rng));
  }

  for (int t = 0; t < trials; ++t) {
    const CentralProjection& h = centrals[static_cast<std::size_t>(t) % centrals.size()];
    const Projection hp = h.projection();

    r.expect("invariant.central_is_invariant", !related(hp, ortho(hp), tol));
    const Projection q = random_subprojection(hp, rng);
    const Symmetry s = random_symmetry(shape, rng);
    r.expect("invariant.conjugate_below", below(conjugate(s, q), hp, tol));
    const Projection sub = random_chain_image(q, rng, nullptr, rng.uniform_int(1, 3));
    r.expect("invariant.subequivalent_below", below(sub, hp, tol));
    const Projection any = random_projection(shape, rng);
    const Projection any_off = restrict_to(any, random_central(shape, rng));
    r.expect("invariant.disjoint_is_orthogonal",
             !meet(any_off, hp, tol).is_zero() || orthogonal(any_off, hp, tol));
    r.expect("invariant.unrelated_iff_orthogonal",
             related(any_off, hp, tol) == !orthogonal(any_off, hp, tol));

    const Projection e = restrict_to(random_projection(shape, rng), random_central(shape, rng));
    const Projection f = restrict_to(random_projection(shape, rng), random_central(shape, rng));
    const CentralProjection ge = central_cover(e, tol);
    const CentralProjection gf = central_cover(f, tol);
    const bool covers_perp = (ge & gf).is_zero();
    r.expect("related.cover_criterion",
             covers_perp == orthogonal(e, gf, tol) && covers_perp == !related(e, f, tol));
    if (!orthogonal(e, f, tol)) {
      const std::optional<ExchangeWitness> w = related_witness(e, f, tol);
      r.expect("related.nonorthogonal_witness",
               w && !w->e.is_zero() && !w->f.is_zero() && related(e, f, tol));
      if (w) r.check("related.witness_exchange", w->residual(), tol.proj);
    }
    if (shape.num_blocks() == 1 && !e.is_zero() && !f.is_zero()) {
      r.expect("related.irreducible", related(e, f, tol));
    }

    if (has_partial_block(shape)) {
      const Projection nh = random_noncentral(shape, rng, tol);
      r.expect("invariant.noncentral_counterexample", counterexample_search(nh, rng, 100, tol) > 0);
      r.expect("invariant.noncentral_not_invariant", related(nh, ortho(nh), tol));
    }
  }

  // Rank-1 h in the 2x2 model.
  const ModelShape two({2});
  for (int t = 0; t < std::max(1, trials / 5); ++t) {
    const Projection nh = random_projection_with_ranks(two, {1}, rng);
    r.expect("invariant.noncentral_counterexample_n2", counterexample_search(nh, rng, 100, tol) > 0);
  }
  return r;
}

Report gamma_as_subequivalence_sup(const Projection& p, Rng& rng, int samples,
                                   const Tolerances& tol) {
  Report r("comparability");
  const ModelShape& shape = p.shape();
  const CentralProjection gp = central_cover(p, tol);
  if (samples <= 0) {
    for (int b = 0; b < shape.num_blocks(); ++b) samples = std::max(samples, shape.block_size(b) + 1);
  }
  const EigenDecomposition eig = eig_sym(p);
  const std::vector<int> ones(static_cast<std::size_t>(shape.num_blocks()), 1);
  Projection acc = Projection::zero(shape);
  for (int k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= 0.5) continue;
    const Projection q = span_of(shape, {Vector(eig.vectors.col(k))});
    for (int i = 0; i < samples; ++i) {
      // A reflection in every block moves q generically.
      const Projection h = random_projection_with_ranks(shape, ones, rng);
      const Symmetry s = Symmetry::from(Element::identity(shape) - 2.0 * h.element(), tol);
      const Projection c = conjugate(s, q);
      r.expect("gamma_sup.conjugate_below_cover", below(c, gp, tol));
      acc = join(acc, c, tol);
    }
  }
  r.expect("gamma_sup.join_reaches_cover", same(acc, gp, tol));
  return r;
}

Report comparability_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                           const Tolerances& tol) {
  Report r("comparability");
  Rng rng(seed);

  for (int t = 0; t < trials; ++t) {
    // Equivalence witnesses and the key exchange.
    const Projection e = random_projection(shape, rng);
    SymmetryChain chain;
    const Projection je = random_chain_image(e, rng, &chain, rng.uniform_int(1, 3));
    const EquivalenceWitness given{e, je, chain};
    r.check("chain.apply", given.residual(), tol.proj);
    const EquivalenceWitness built = equal_rank_chain(e, je, tol);
    r.check("equal_rank_chain", built.residual(), tol.proj);
    r.expect("equal_rank_chain.length",
             built.chain.size() <= static_cast<std::size_t>(2 * shape.dim()));
    r.expect("equivalence.zero_only_to_zero",
             equivalent_check(EquivalenceWitness{e, Projection::zero(shape), {}}, tol) ==
                 e.is_zero());
    if (!e.is_zero()) {
      const ExchangeWitness key = key_subprojection_exchange(given, tol);
      r.expect("key_exchange.nonzero", !key.e.is_zero() && !key.f.is_zero());
      r.expect("key_exchange.below", below(key.e, e, tol) && below(key.f, je, tol));
      r.check("key_exchange.exchange", key.residual(), tol.proj);
    }

    // Chains carry orthogonal families to orthogonal families.
    {
      const Projection top = random_projection(shape, rng);
      const Projection part = random_subprojection(top, rng);
      const Projection rest = Projection::from(top.element() - part.element(), tol);
      const Projection a = chain.apply(part);
      const Projection b = chain.apply(rest);
      r.check("divisibility.orthogonal", residual(a.data() * b.data()), tol.proj);
      r.check("divisibility.sum", distance(a.element() + b.element(), chain.apply(top)),
              tol.proj);
    }

    // Six-piece relation through perspectivity chains.
    {
      const Projection k = random_projection(shape, rng);
      const Projection p = random_subprojection(k, rng);
      const Projection se = random_subprojection(k, rng);
      const Projection q = difference(k, p, tol);
      const Projection sf = difference(k, se, tol);
      const SixPiece d = six_piece_decomposition(p, q, se, sf, tol);
      auto check_chain = [&](const Projection& x, const Projection& y, const Projection& v,
                             const char* name) {
        const Projection amb = join(x, y, tol);
        const Projection lifted = sum(v, ortho(amb), tol);
        const auto [s1, s2] = perspective_to_chain(PerspectivityWitness{x, y, lifted, std::nullopt}, tol);
        r.check(name, distance(quad(s2, quad(s1, x)), y), tol.proj);
      };
      check_chain(join(d.p1, d.q1, tol), se, d.v1, "six_piece.first_equivalent");
      check_chain(join(d.p2, d.q2, tol), sf, d.v2, "six_piece.second_equivalent");
    }

    // Decomposition and comparability.
    const Projection f = random_projection(shape, rng);
    const Projection e_loc = restrict_to(e, random_central(shape, rng));
    const Decomposition dec = orthogonal_decomposition(e_loc, f, tol);
    r.check("decomposition", decomposition_residual(e_loc, f, dec, tol), tol.proj);

    const Projection eo = random_projection(shape, rng);
    const Projection fo = random_subprojection(ortho(eo), rng);
    r.check("decomposition.orthogonal",
            decomposition_residual(eo, fo, orthogonal_decomposition(eo, fo, tol), tol), tol.proj);

    const ComparabilityResult cr = generalized_comparability(e_loc, f, tol);
    r.expect("comparability.h_central", is_central(cr.h, tol));
    r.check("comparability.symmetry",
            residual(cr.s.data() * cr.s.data() - Element::identity(shape).data()), tol.proj);
    r.check("comparability.eh_below_fh", cr.lower_residual(), tol.psd);
    r.check("comparability.f1h_below_e1h", cr.upper_residual(), tol.psd);
    if (shape.num_blocks() == 1) {
      r.expect("comparability.irreducible_dichotomy", cr.h.projection().rank() % shape.dim() == 0);
    }

    // Relative center property.
    {
      const Projection p = random_projection(shape, rng);
      const Projection d = restrict_to(p, random_central(shape, rng));
      const CentralProjection c = relative_center_witness(p, d, tol);
      r.check("relative_center", distance(meet(c, p, tol), d), tol.proj);
    }

    r.merge(gamma_as_subequivalence_sup(random_projection(shape, rng), rng, 0, tol));
  }
  r.merge(invariant_is_central_suite(seed ^ 0x9e3779b97f4a7c15ULL, shape, trials, tol));
  return r;
}

}  // namespace synalg
