#include "synalg/symmetry.hpp"

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

bool is_identity(const Projection& p) { return p.rank() == p.shape().dim(); }

void require_complements(const Projection& e, const Projection& f, const Tolerances& tol) {
  if (!complements(e, f, tol)) {
    throw Error(ErrorKind::kPrecondition, "projections are not complements");
  }
}

void require_valid(const ExchangeWitness& w, const Tolerances& tol) {
  if (!w.valid(tol)) {
    throw Error(ErrorKind::kPrecondition,
                "symmetry does not exchange the projections, residual " +
                    std::to_string(w.residual()));
  }
}

void require_orthogonal(const Projection& a, const Projection& b, const Tolerances& tol,
                        const char* what) {
  if (!orthogonal(a, b, tol)) {
    throw Error(ErrorKind::kPrecondition, std::string(what) + " are not orthogonal");
  }
}

}  // namespace

double PerspectivityWitness::residual(const Tolerances& tol) const {
  const Projection t = top();
  const Projection& w = common_complement;
  double worst = 0.0;
  worst = std::max(worst, distance(join(e, w, tol), t));
  worst = std::max(worst, distance(join(f, w, tol), t));
  worst = std::max(worst, synalg::residual(meet(e, w, tol).data()));
  worst = std::max(worst, synalg::residual(meet(f, w, tol).data()));
  // w must live in the interval.
  worst = std::max(worst, synalg::residual(w.data() - t.data() * w.data()));
  return worst;
}

Symmetry sym_from_proj(const Projection& p) {
  return Symmetry::from(2.0 * p.element() - Element::identity(p.shape()), {}, Snap::kNo);
}

Projection proj_from_sym(const Symmetry& s) {
  return Projection::from(0.5 * (Element::identity(s.shape()) + s.element()), {}, Snap::kNo);
}

Symmetry canonical_extension(const Element& t, const Tolerances& tol) {
  const PartialSymmetry pt = PartialSymmetry::from(t, tol);
  const Element t2 = quad(pt.element(), Element::identity(t.shape()));
  return Symmetry::from(t + Element::identity(t.shape()) - t2, tol);
}

Symmetry exchange_efe_fef(const Projection& e, const Projection& f, const Tolerances& tol) {
  require_same_shape(e.shape(), f.shape());
  const Element a = e.element() + f.element() - Element::identity(e.shape());
  return canonical_extension(signum(a, tol), tol);
}

ExchangeWitness sasaki_exchange(const Projection& e, const Projection& f, const Tolerances& tol) {
  return ExchangeWitness{exchange_efe_fef(e, f, tol), sasaki(e, f, tol), sasaki(f, e, tol)};
}

ExchangeWitness parallelogram_exchange(const Projection& e, const Projection& f,
                                       const Tolerances& tol) {
  return sasaki_exchange(e, ortho(f), tol);
}

Symmetry complement_exchange(const Projection& e, const Projection& f, const Tolerances& tol) {
  require_complements(e, f, tol);
  return parallelogram_exchange(e, f, tol).s;
}

std::optional<ExchangeWitness> related_witness(const Projection& e, const Projection& f,
                                               const Tolerances& tol) {
  if (orthogonal(e, f, tol)) return std::nullopt;
  return sasaki_exchange(e, f, tol);
}

PerspectivityWitness common_complement_from_exchange(const ExchangeWitness& w,
                                                     const Tolerances& tol) {
  require_complements(w.e, w.f, tol);
  require_valid(w, tol);
  PerspectivityWitness pw{w.e, w.f, proj_from_sym(w.s), std::nullopt};
  if (!pw.valid(tol)) {
    throw Error(ErrorKind::kPrecondition, "(1 + s)/2 is not a common complement");
  }
  return pw;
}

PerspectivityWitness strong_perspectivity(const ExchangeWitness& w, const Tolerances& tol) {
  require_valid(w, tol);
  const Projection p = join(w.e, w.f, tol);
  const Projection r = difference(p, meet(w.e, w.f, tol), tol);
  const Element t = quad(r, w.s);
  const Projection q = Projection::from(0.5 * (r.element() + t), tol);
  return PerspectivityWitness{w.e, w.f, q, p};
}

std::pair<Symmetry, Symmetry> perspective_to_chain(const PerspectivityWitness& pw,
                                                   const Tolerances& tol) {
  if (pw.ambient && !is_identity(*pw.ambient)) {
    throw Error(ErrorKind::kPrecondition, "common complement must be taken in P");
  }
  if (!pw.valid(tol)) throw Error(ErrorKind::kPrecondition, "invalid perspectivity witness");
  return {complement_exchange(pw.e, pw.common_complement, tol),
          complement_exchange(pw.f, pw.common_complement, tol)};
}

Symmetry orthogonal_chain_to_symmetry(const Projection& e, const Projection& f,
                                      const Symmetry& s1, const Symmetry& s2,
                                      const Tolerances& tol) {
  require_orthogonal(e, f, tol, "e and f");
  const double chain = distance(quad(s2, quad(s1, e)), f);
  if (chain > tol.proj) {
    throw Error(ErrorKind::kPrecondition,
                "s2 s1 e s1 s2 != f, residual " + std::to_string(chain));
  }
  const EnvelopingElement x = s2.element() * s1.element() * e.element();
  const EnvelopingElement y = e.element() * s1.element() * s2.element();
  const Element xy = symmetrize_sum(x, y, tol);
  return Symmetry::from(xy + Element::identity(e.shape()) - e.element() - f.element(), tol);
}

Symmetry finite_additivity(const ExchangeWitness& w1, const ExchangeWitness& w2,
                           const Tolerances& tol) {
  require_valid(w1, tol);
  require_valid(w2, tol);
  require_orthogonal(w1.e, w2.f, tol, "e1 and f2");
  require_orthogonal(w2.e, w1.f, tol, "e2 and f1");
  require_orthogonal(w1.e, w2.e, tol, "e1 and e2");
  require_orthogonal(w1.f, w2.f, tol, "f1 and f2");
  const ModelShape& shape = w1.e.shape();
  const Projection p1 = join(w1.e, w1.f, tol);
  const Projection p2 = join(w2.e, w2.f, tol);
  const Element u = jordan(w1.s, p1);
  const Element v = jordan(w2.s, p2);
  return Symmetry::from(u + v + Element::identity(shape) - p1.element() - p2.element(), tol);
}

Symmetry family_additivity(std::span<const ExchangeWitness> ws, const ModelShape& shape,
                           const Tolerances& tol, Report* identities) {
  for (const ExchangeWitness& w : ws) {
    require_same_shape(w.e.shape(), shape);
    require_valid(w, tol);
  }
  Element e_sum = Element::zero(shape);
  Element f_sum = Element::zero(shape);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      require_orthogonal(ws[i].e, ws[j].e, tol, "family members e_i");
      require_orthogonal(ws[i].f, ws[j].f, tol, "family members f_i");
    }
    e_sum = e_sum + ws[i].e.element();
    f_sum = f_sum + ws[i].f.element();
  }
  const Projection e = Projection::from(e_sum, tol);
  const Projection f = Projection::from(f_sum, tol);
  require_orthogonal(e, f, tol, "the family suprema");

  std::vector<Projection> parts;
  for (const ExchangeWitness& w : ws) {
    const EnvelopingElement x = w.s.element() * w.e.element();
    const EnvelopingElement y = w.e.element() * w.s.element();
    const Projection pi =
        Projection::from(0.5 * (symmetrize_sum(x, y, tol) + w.e.element() + w.f.element()), tol);
    if (identities != nullptr) {
      const Matrix& em = w.e.data();
      const Matrix& fm = w.f.data();
      const Matrix& pm = pi.data();
      identities->check("family.xy_is_f", residual(x.data() * y.data() - fm), tol.proj);
      identities->check("family.yx_is_e", residual(y.data() * x.data() - em), tol.proj);
      identities->check("family.x_squared", residual(x.data() * x.data()), tol.proj);
      identities->check("family.y_squared", residual(y.data() * y.data()), tol.proj);
      identities->check("family.2epe_is_e", residual(2.0 * em * pm * em - em), tol.proj);
      identities->check("family.2pep_is_p", residual(2.0 * pm * em * pm - pm), tol.proj);
      identities->check("family.2fpf_is_f", residual(2.0 * fm * pm * fm - fm), tol.proj);
      identities->check("family.2pfp_is_p", residual(2.0 * pm * fm * pm - pm), tol.proj);
    }
    parts.push_back(pi);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!orthogonal(parts[i], parts[j], tol)) {
        throw Error(ErrorKind::kNotProjection, "family parts p_i are not pairwise orthogonal");
      }
    }
  }
  Element p_sum = Element::zero(shape);
  for (const Projection& pi : parts) p_sum = p_sum + pi.element();
  const Projection p = Projection::from(p_sum, tol);
  if (identities != nullptr) {
    const Matrix& em = e.data();
    const Matrix& fm = f.data();
    const Matrix& pm = p.data();
    identities->check("family.sup_2epe_is_e", residual(2.0 * em * pm * em - em), tol.proj);
    identities->check("family.sup_2pep_is_p", residual(2.0 * pm * em * pm - pm), tol.proj);
    identities->check("family.sup_2fpf_is_f", residual(2.0 * fm * pm * fm - fm), tol.proj);
    identities->check("family.sup_2pfp_is_p", residual(2.0 * pm * fm * pm - pm), tol.proj);
  }
  return sym_from_proj(p);
}

SixPiece six_piece_decomposition(const Projection& p, const Projection& q, const Projection& e,
                                 const Projection& f, const Tolerances& tol) {
  require_orthogonal(p, q, tol, "p and q");
  require_orthogonal(e, f, tol, "e and f");
  if (!same(join(p, q, tol), join(e, f, tol), tol)) {
    throw Error(ErrorKind::kPrecondition, "p v q differs from e v f");
  }
  const Projection p2 = meet(p, f, tol);
  const Projection q1 = meet(q, e, tol);
  const Projection p1 = meet(p, ortho(p2), tol);
  const Projection q2 = meet(q, ortho(q1), tol);
  const Projection e1 = meet(e, ortho(q1), tol);
  const Projection f2 = meet(f, ortho(p2), tol);

  // Inside [0, p v q] the Sasaki projections of p onto e and of e onto p are
  // exactly p1 and e1; likewise q2 and f2.
  const ExchangeWitness w1{exchange_efe_fef(p, e, tol), p1, e1};
  const ExchangeWitness w2{exchange_efe_fef(q, f, tol), q2, f2};
  const Projection v1 = strong_perspectivity(w1, tol).common_complement;
  const Projection v2 = strong_perspectivity(w2, tol).common_complement;
  return SixPiece{p1, p2, q1, q2, e1, f2, v1, v2};
}

Report six_piece_check(const Projection& p, const Projection& q, const Projection& e,
                       const Projection& f, const SixPiece& d, const Tolerances& tol) {
  Report r("symmetry");
  auto perp = [](const Projection& a, const Projection& b) {
    return residual(a.data() * b.data());
  };
  r.check("six_piece.p1_is_sasaki", distance(sasaki(p, e, tol), d.p1), tol.proj);
  r.check("six_piece.e1_is_sasaki", distance(sasaki(e, p, tol), d.e1), tol.proj);
  r.check("six_piece.q2_is_sasaki", distance(sasaki(q, f, tol), d.q2), tol.proj);
  r.check("six_piece.f2_is_sasaki", distance(sasaki(f, q, tol), d.f2), tol.proj);

  r.check("six_piece.p1_e1_strongly_perspective",
          PerspectivityWitness{d.p1, d.e1, d.v1, join(d.p1, d.e1, tol)}.residual(tol), tol.proj);
  r.check("six_piece.q2_f2_strongly_perspective",
          PerspectivityWitness{d.q2, d.f2, d.v2, join(d.q2, d.f2, tol)}.residual(tol), tol.proj);

  r.check("six_piece.p_split", perp(d.p1, d.p2) + distance(d.p1.element() + d.p2.element(), p), tol.proj);
  r.check("six_piece.e_split", perp(d.q1, d.e1) + distance(d.q1.element() + d.e1.element(), e), tol.proj);
  r.check("six_piece.f_split", perp(d.p2, d.f2) + distance(d.p2.element() + d.f2.element(), f), tol.proj);
  r.check("six_piece.q_split", perp(d.q1, d.q2) + distance(d.q1.element() + d.q2.element(), q), tol.proj);

  const Projection pq1 = join(d.p1, d.q1, tol);
  const Projection pq2 = join(d.p2, d.q2, tol);
  r.check("six_piece.p1_perp_q1", perp(d.p1, d.q1), tol.proj);
  r.check("six_piece.p2_perp_q2", perp(d.p2, d.q2), tol.proj);
  r.check("six_piece.p1q1_e_strongly_perspective",
          PerspectivityWitness{pq1, e, d.v1, join(pq1, e, tol)}.residual(tol), tol.proj);
  r.check("six_piece.p2q2_f_strongly_perspective",
          PerspectivityWitness{pq2, f, d.v2, join(pq2, f, tol)}.residual(tol), tol.proj);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> random_ranks(const ModelShape& shape, Rng& rng, bool half) {
  std::vector<int> ranks;
  for (int n : shape.blocks()) ranks.push_back(rng.uniform_int(0, half ? n / 2 : n));
  return ranks;
}

// A symmetry 1 - 2h with h <= k: it commutes with k.
Symmetry symmetry_inside(const Projection& k, Rng& rng) {
  const Projection h = random_subprojection(k, rng);
  return Symmetry::from(Element::identity(k.shape()) - 2.0 * h.element(), {}, Snap::kNo);
}

// Orthogonal families (e_i), (f_i) with the e's orthogonal to the f's, each
// pair exchanged by a symmetry that swaps matched orthonormal vectors.
std::vector<ExchangeWitness> random_family(const ModelShape& shape, Rng& rng, int members) {
  const int n = shape.dim();
  const EigenDecomposition frame = eig_sym(random_element(shape, rng));
  std::vector<Matrix> es(static_cast<std::size_t>(members), Matrix::Zero(n, n));
  std::vector<Matrix> fs = es;
  std::vector<Matrix> ts = es;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    std::vector<int> cols;
    for (int c = 0; c < n; ++c) {
      if (frame.column_block[static_cast<std::size_t>(c)] == b) cols.push_back(c);
    }
    const int pairs = rng.uniform_int(0, static_cast<int>(cols.size()) / 2);
    for (int j = 0; j < pairs; ++j) {
      const Vector u = frame.vectors.col(cols[static_cast<std::size_t>(2 * j)]);
      const Vector v = frame.vectors.col(cols[static_cast<std::size_t>(2 * j + 1)]);
      const auto m = static_cast<std::size_t>(rng.uniform_int(0, members - 1));
      es[m] += u * u.transpose();
      fs[m] += v * v.transpose();
      ts[m] += u * v.transpose() + v * u.transpose();
    }
  }
  std::vector<ExchangeWitness> out;
  for (std::size_t m = 0; m < es.size(); ++m) {
    const Element ident = Element::identity(shape);
    const Element s = ident - Element::symmetrized_from(shape, es[m] + fs[m]) +
                      Element::symmetrized_from(shape, ts[m]);
    out.push_back(ExchangeWitness{Symmetry::from(s),
                                  Projection::from(Element::symmetrized_from(shape, es[m])),
                                  Projection::from(Element::symmetrized_from(shape, fs[m]))});
  }
  return out;
}

ModelShape even_shape(const ModelShape& shape) {
  std::vector<int> blocks;
  for (int n : shape.blocks()) blocks.push_back(n + (n % 2));
  return ModelShape(blocks);
}

}  // namespace

Report symmetry_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                      const Tolerances& tol) {
  Report r("symmetry");
  Rng rng(seed);
  const Element one = Element::identity(shape);
  const ModelShape even = even_shape(shape);

  for (int trial = 0; trial < trials; ++trial) {
    const Projection e = random_projection(shape, rng);
    const Projection f = random_projection(shape, rng);

    // s(efe)s = fef and the induced Sasaki exchange.
    const Symmetry s = exchange_efe_fef(e, f, tol);
    r.check("efe_fef.exchange", distance(quad(s, quad(e, f)), quad(f, e)), tol.proj);
    r.check("symmetry.square", residual(s.data() * s.data() - one.data()), tol.proj);
    r.check("symmetry.norm", std::abs(order_unit_norm(s) - 1.0), tol.proj);
    r.check("sasaki_exchange", sasaki_exchange(e, f, tol).residual(), tol.proj);

    const ExchangeWitness par = parallelogram_exchange(e, f, tol);
    r.check("parallelogram.exchange", par.residual(), tol.proj);
    r.check("parallelogram.pieces",
            distance(par.e, e.element() - meet(e, f, tol).element()) +
                distance(par.f, join(e, f, tol).element() - f.element()),
            tol.proj);

    const std::optional<ExchangeWitness> rel = related_witness(e, f, tol);
    r.expect("related_witness.nonzero",
             rel.has_value() == !orthogonal(e, f, tol) &&
                 (!rel || (!rel->e.is_zero() && !rel->f.is_zero())));

    // Complements and the common complement (1 + s)/2, in an even shape so
    // that equal-rank complements exist.
    {
      std::vector<int> half;
      for (int n : even.blocks()) half.push_back(n / 2);
      Projection ce = random_projection_with_ranks(even, half, rng);
      Symmetry cs = sym_from_proj(random_projection_with_ranks(even, half, rng));
      Projection cf = conjugate(cs, ce);
      // Redraw the rare draw where two of the ranges nearly meet.
      auto degenerate = [&] {
        const Projection w = proj_from_sym(cs);
        return !complements(ce, cf, tol) || !complements(ce, w, tol) || !complements(cf, w, tol);
      };
      while (degenerate()) {
        ce = random_projection_with_ranks(even, half, rng);
        cs = sym_from_proj(random_projection_with_ranks(even, half, rng));
        cf = conjugate(cs, ce);
      }
      const Symmetry cx = complement_exchange(ce, cf, tol);
      r.check("complement_exchange", exchange_residual(cx, ce, ortho(cf)), tol.proj);
      r.check("common_complement",
              common_complement_from_exchange(ExchangeWitness{cs, ce, cf}, tol).residual(tol),
              tol.proj);
    }

    // Exchanged pair (e, ses): strong perspectivity, then the lifted common
    // complement w v (e v f)' gives a two-step chain.
    {
      const Symmetry xs = random_symmetry(shape, rng);
      const Projection xe = random_projection(shape, rng);
      const ExchangeWitness w{xs, xe, conjugate(xs, xe)};
      const PerspectivityWitness pw = strong_perspectivity(w, tol);
      r.check("strong_perspectivity", pw.residual(tol), tol.proj);
      const Projection lifted = sum(pw.common_complement, ortho(*pw.ambient), tol);
      const PerspectivityWitness full{w.e, w.f, lifted, std::nullopt};
      r.check("strong_perspectivity.lift", full.residual(tol), tol.proj);
      const auto [s1, s2] = perspective_to_chain(full, tol);
      r.check("perspective_chain", distance(quad(s2, quad(s1, w.e)), w.f), tol.proj);
    }

    // Orthogonal e, f joined by a two-step chain.
    {
      const std::vector<int> ranks = random_ranks(shape, rng, true);
      const Projection oe = random_projection_with_ranks(shape, ranks, rng);
      const Projection of = random_subprojection_with_ranks(ortho(oe), ranks, rng);
      const Symmetry s1 = random_symmetry(shape, rng);
      const Projection g = conjugate(s1, oe);
      const ExchangeWitness w2 = sasaki_exchange(g, of, tol);
      if (same(w2.e, g, tol) && same(w2.f, of, tol)) {
        const Symmetry so = orthogonal_chain_to_symmetry(oe, of, s1, w2.s, tol);
        r.check("orthogonal_chain.exchange", exchange_residual(so, oe, of), tol.proj);
      }
    }

    // Two exchanged pairs living under orthogonal projections k1, k2.
    {
      const Projection k1 = random_projection(shape, rng);
      const Projection k2 = ortho(k1);
      const Symmetry s1 = symmetry_inside(k1, rng);
      const Symmetry s2 = symmetry_inside(k2, rng);
      const Projection e1 = random_subprojection(k1, rng);
      const Projection e2 = random_subprojection(k2, rng);
      const ExchangeWitness w1{s1, e1, conjugate(s1, e1)};
      const ExchangeWitness w2{s2, e2, conjugate(s2, e2)};
      const Symmetry sa = finite_additivity(w1, w2, tol);
      r.check("finite_additivity.exchange",
              exchange_residual(sa, sum(w1.e, w2.e, tol), sum(w1.f, w2.f, tol)), tol.proj);
    }

    // Orthogonal families.
    {
      const std::vector<ExchangeWitness> fam = random_family(shape, rng, rng.uniform_int(1, 3));
      const Symmetry sf = family_additivity(fam, shape, tol, &r);
      Element fe = Element::zero(shape);
      Element ff = Element::zero(shape);
      for (const ExchangeWitness& w : fam) {
        fe = fe + w.e.element();
        ff = ff + w.f.element();
      }
      r.check("family_additivity.exchange",
              exchange_residual(sf, Projection::from(fe, tol), Projection::from(ff, tol)),
              tol.proj);
    }

    // Symmetry transformations are Jordan and order automorphisms.
    {
      const Symmetry js = random_symmetry(shape, rng);
      const Element a = random_element(shape, rng);
      const Element b = random_element(shape, rng);
      r.check("transform.jordan",
              distance(quad(js, jordan(a, b)), jordan(quad(js, a), quad(js, b))), tol.proj);
      r.check("transform.involution", distance(quad(js, quad(js, a)), a), tol.proj);
      const Element above = a + random_positive(shape, rng);
      r.expect("transform.order", leq(quad(js, a), quad(js, above), tol));

      const Element low_rank = quad(random_projection(shape, rng), a);
      r.check("transform.carrier",
              distance(carrier(quad(js, low_rank), tol), quad(js, carrier(low_rank, tol))),
              tol.proj);

      const EigenDecomposition d = eig_sym(a);
      Vector other(d.values.size());
      for (int i = 0; i < other.size(); ++i) other(i) = rng.uniform(-1.0, 1.0);
      const Element c = Element::symmetrized_from(
          shape, d.vectors * other.asDiagonal() * d.vectors.transpose());
      r.expect("transform.commutation", commutes(a, c, tol) && commutes(quad(js, a), quad(js, c), tol));
      r.expect("transform.noncommutation",
               commutes(a, b, tol) == commutes(quad(js, a), quad(js, b), tol));
    }

    // e and f commute with |e - f|.
    {
      const Element mod = abs(e.element() - f.element());
      r.check("difference_modulus.commutes",
              residual(e.data() * mod.data() - mod.data() * e.data()) +
                  residual(f.data() * mod.data() - mod.data() * f.data()),
              tol.proj);
    }

    // Six-piece decomposition of two orthogonal splittings of k.
    {
      const Projection k = random_projection(shape, rng);
      const Projection p = random_subprojection(k, rng);
      const Projection se = random_subprojection(k, rng);
      const Projection q = difference(k, p, tol);
      const Projection sf = difference(k, se, tol);
      r.merge(six_piece_check(p, q, se, sf, six_piece_decomposition(p, q, se, sf, tol), tol));
    }
  }
  return r;
}

}  // namespace synalg
