#include <gtest/gtest.h>

#include <algorithm>

#include "support/helpers.hpp"
#include "synalg/error.hpp"
#include "synalg/lattice.hpp"
#include "synalg/oml.hpp"
#include "synalg/random.hpp"

using namespace synalg;
using namespace testing_support;

namespace {

bool check_passes(const Report& r, const std::string& name) {
  for (const ReportLine& l : r.lines()) {
    if (l.check == name) return l.pass();
  }
  ADD_FAILURE() << "no check named " << name;
  return false;
}

}  // namespace

TEST(FiniteOml, ParsesAndRoundTrips) {
  const FiniteOml l = FiniteOml::load(fixture("mo2.oml"));
  EXPECT_EQ(l.size(), 6);
  EXPECT_EQ(l.name(l.top()), "1");
  EXPECT_EQ(l.ortho(l.index("a")), l.index("a'"));
  const FiniteOml again = FiniteOml::parse(l.to_text());
  EXPECT_EQ(again.to_text(), l.to_text());
  EXPECT_EQ(l.join(l.index("a"), l.index("b")), l.top());
  EXPECT_EQ(l.meet(l.index("a"), l.index("b")), l.bottom());
}

TEST(FiniteOml, ParseErrors) {
  EXPECT_THROW(FiniteOml::parse("elem a\nleq a b\n"), Error);
  EXPECT_THROW(FiniteOml::parse("bogus line\n"), Error);
  EXPECT_THROW(FiniteOml::load(fixture("missing.oml")), Error);
  const FiniteOml l = FiniteOml::load(fixture("mo2.oml"));
  EXPECT_THROW(l.index("zz"), Error);
}

TEST(VerifyOml, BooleanFixturesPass) {
  for (int n = 1; n <= 4; ++n) {
    const OmlVerification v = verify_oml(boolean_oml(n));
    EXPECT_TRUE(v.is_oml) << n << "\n" << v.report.to_text();
    EXPECT_TRUE(v.distributive);
    EXPECT_TRUE(v.modular);
    EXPECT_EQ(boolean_oml(n).size(), 1 << n);
  }
  const OmlVerification b2 = verify_oml(FiniteOml::load(fixture("boolean2.oml")));
  EXPECT_TRUE(b2.is_oml);
}

TEST(VerifyOml, Mo2IsOrthomodularButNotDistributive) {
  const OmlVerification v = verify_oml(FiniteOml::load(fixture("mo2.oml")));
  EXPECT_TRUE(v.is_oml) << v.report.to_text();
  EXPECT_FALSE(v.distributive);
  EXPECT_TRUE(v.modular);
}

TEST(VerifyOml, NonInvolutiveFixtureIsRejected) {
  const OmlVerification v = verify_oml(FiniteOml::load(fixture("bad_noninvolutive.oml")));
  EXPECT_FALSE(v.is_oml);
  EXPECT_FALSE(check_passes(v.report, "ortho_involutive"));
  EXPECT_TRUE(check_passes(v.report, "lattice"));
}

TEST(VerifyOml, NonOrthomodularHexagonIsRejected) {
  // The benzene ring: an ortholattice that is not orthomodular.
  const FiniteOml hex = FiniteOml::parse(
      "elem 0\nelem 1\nelem a\nelem b\nelem a'\nelem b'\n"
      "leq 0 a\nleq 0 b'\nleq a b\nleq b' a'\nleq b 1\nleq a' 1\n"
      "ortho a a'\northo b b'\northo 0 1\ntop 1\nbottom 0\n");
  const OmlVerification v = verify_oml(hex);
  EXPECT_FALSE(v.is_oml);
  EXPECT_TRUE(check_passes(v.report, "ortho_complement"));
  EXPECT_FALSE(check_passes(v.report, "orthomodular"));
}

TEST(VerifyOml, SampledBeyondCap) {
  const FiniteOml big = product_oml(mo_oml(3), boolean_oml(2));
  const OmlVerification v = verify_oml(big, 8);
  EXPECT_TRUE(v.is_oml);
  EXPECT_LT(v.coverage, 1.0);
}

TEST(OmlSasaki, Examples) {
  const FiniteOml mo2 = mo_oml(2);
  for (int p = 0; p < mo2.size(); ++p) {
    EXPECT_EQ(oml_sasaki(mo2, p, p), p);
    EXPECT_EQ(oml_sasaki(mo2, p, mo2.bottom()), mo2.bottom());
  }
  EXPECT_EQ(oml_sasaki(mo2, mo2.index("a"), mo2.index("b")), mo2.index("a"));
  EXPECT_FALSE(oml_compatible(mo2, mo2.index("a"), mo2.index("b")));

  const FiniteOml b3 = boolean_oml(3);
  for (int p = 0; p < b3.size(); ++p) {
    for (int q = 0; q < b3.size(); ++q) EXPECT_EQ(oml_sasaki(b3, p, q), b3.meet(p, q));
  }
  EXPECT_TRUE(sasaki_properties_check(mo2).all_pass());
  EXPECT_TRUE(sasaki_properties_check(mo_oml(3)).all_pass());
}

TEST(OmlCenter, Examples) {
  const FiniteOml mo2 = mo_oml(2);
  const std::vector<int> c = oml_center(mo2);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(oml_center(boolean_oml(3)).size(), 8u);
  EXPECT_EQ(oml_center(product_oml(mo2, mo2)).size(), 4u);
}

TEST(OmlInterval, Examples) {
  const FiniteOml mo2 = mo_oml(2);
  EXPECT_EQ(oml_interval(mo2, mo2.top()).to_text(), mo2.to_text());
  const FiniteOml atom = oml_interval(mo2, mo2.index("a"));
  EXPECT_EQ(atom.size(), 2);
  EXPECT_TRUE(verify_oml(atom).is_oml);
  const int ab = mo2.join(mo2.index("a"), mo2.index("b"));
  EXPECT_TRUE(interval_sasaki_check(mo2, ab).all_pass());
  const FiniteOml pm = product_oml(mo_oml(3), mo2);
  for (int p = 0; p < pm.size(); ++p) EXPECT_TRUE(interval_sasaki_check(pm, p).all_pass());
}

TEST(OmlPerspectivity, Examples) {
  const FiniteOml mo2 = mo_oml(2);
  for (int p = 0; p < mo2.size(); ++p) {
    const OmlElementPairReport self = oml_perspectivity(mo2, p, p);
    ASSERT_TRUE(self.perspective.has_value());
  }
  const int a = mo2.index("a"), b = mo2.index("b");
  const OmlElementPairReport r = oml_perspectivity(mo2, a, b);
  EXPECT_TRUE(r.perspective.has_value());
  EXPECT_TRUE(r.strongly_perspective.has_value());
  const std::optional<int> c = common_complement(mo2, a, mo2.ortho(a), mo2.top());
  ASSERT_TRUE(c.has_value());
  EXPECT_NE(*c, a);
  EXPECT_NE(*c, mo2.ortho(a));

  const FiniteOml b3 = boolean_oml(3);
  for (int p = 0; p < b3.size(); ++p) {
    for (int q = 0; q < b3.size(); ++q) {
      EXPECT_EQ(oml_perspectivity(b3, p, q).perspective.has_value(), p == q);
    }
  }
  EXPECT_TRUE(relcompl_lift_check(mo2).all_pass());
  EXPECT_TRUE(parallelogram_check(mo_oml(3)).all_pass());
}

TEST(OmlSixPiece, IdentityAndExhaustive) {
  const FiniteOml l = product_oml(mo_oml(3), boolean_oml(1));
  ASSERT_EQ(l.size(), 16);
  for (int p = 0; p < l.size(); ++p) {
    const int q = l.ortho(p);
    const OmlSixPiece d = oml_six_piece(l, p, q, p, q);
    EXPECT_EQ(d.p1, p);
    EXPECT_EQ(d.q2, q);
    EXPECT_EQ(d.p2, l.bottom());
    EXPECT_EQ(d.q1, l.bottom());
  }
  int count = 0;
  const Report r = six_piece_exhaustive(l, &count);
  EXPECT_TRUE(r.all_pass()) << r.to_text();
  EXPECT_GT(count, 100);
  EXPECT_THROW(oml_six_piece(l, l.top(), l.top(), l.top(), l.bottom()), Error);
}

TEST(OmlStructure, FixturesPass) {
  for (const FiniteOml& l : {boolean_oml(3), mo_oml(2), mo_oml(3), product_oml(mo_oml(2), boolean_oml(1))}) {
    const Report r = oml_structure_check(l);
    EXPECT_TRUE(r.all_pass()) << r.to_text();
  }
}

TEST(ProjectionOml, Examples) {
  Rng rng(1);
  const ModelShape s = shape_of({3});
  const Projection p = random_projection_with_ranks(s, {1}, rng);
  const Projection single[] = {p};
  const ProjectionOml b = oml_from_projections(single);
  EXPECT_EQ(b.lattice.size(), 4);
  EXPECT_TRUE(verify_oml(b.lattice).distributive);

  const Projection pair[] = {plane_e(), plane_f()};
  const ProjectionOml mo = oml_from_projections(pair);
  EXPECT_EQ(mo.lattice.size(), 6);
  const OmlVerification v = verify_oml(mo.lattice);
  EXPECT_TRUE(v.is_oml);
  EXPECT_FALSE(v.distributive);

  // Commuting family: diagonal projections generate a boolean algebra.
  const Projection diag_family[] = {Projection::from(diag(s, {1, 0, 0})),
                                    Projection::from(diag(s, {1, 1, 0})),
                                    Projection::from(diag(s, {0, 1, 1}))};
  const ProjectionOml bo = oml_from_projections(diag_family);
  EXPECT_EQ(bo.lattice.size(), 8);
  EXPECT_TRUE(verify_oml(bo.lattice).distributive);

  const Projection generic[] = {random_projection_with_ranks(s, {1}, rng),
                                random_projection_with_ranks(s, {1}, rng),
                                random_projection_with_ranks(s, {2}, rng)};
  EXPECT_THROW(oml_from_projections(generic, 8), Error);
}

TEST(Suites, OmlSuitePasses) {
  const Report r = oml_suite(41, 5);
  EXPECT_TRUE(r.all_pass()) << r.to_text();
}
