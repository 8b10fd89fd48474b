#include "seqspace/spaces.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace seqspace;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Sequence fin(std::initializer_list<std::pair<long, Rational>> e) {
  std::vector<std::pair<BigInt, Rational>> v;
  for (const auto& [i, x] : e) v.emplace_back(BigInt(i), x);
  return Sequence::finite(v);
}

Sequence unit(long n) { return fin({{n, q(1)}}); }

const PsiSpec kLog2 = PsiSpec::log_base(Rational(2));

}  // namespace

TEST(Psi, NaturalLogReport) {
  PsiReport r = psi_axiom_report(PsiSpec::natural_log(), BigInt(1024));
  EXPECT_TRUE(r.psi1.contains(Interval(log(Interval(2L)))));
  EXPECT_FALSE(r.psi1_is_one);
  // Doubling ratio at n = 512 is ln 1025 / ln 513.
  bool found = false;
  for (const auto& [n, v] : r.doubling) {
    if (n != 512) continue;
    found = true;
    Interval expect = log(Interval(1025L)) / log(Interval(513L));
    EXPECT_TRUE(v.intersects(expect));
    EXPECT_TRUE(certainly_lt(Interval(q(11109, 10000)), v));
    EXPECT_TRUE(certainly_lt(v, Interval(q(11110, 10000))));
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(r.doubling_trends_to_one);
  EXPECT_TRUE(r.grows);
}

TEST(Psi, LogBaseTwoIsNormalized) {
  PsiReport r = psi_axiom_report(kLog2, BigInt(4));
  EXPECT_TRUE(r.psi1_is_one);
  EXPECT_EQ(kLog2.exact(BigInt(3)), std::optional<Rational>(q(2)));
  EXPECT_EQ(kLog2.exact(BigInt(2)), std::nullopt);
}

TEST(Psi, ConstantTableStopsGrowing) {
  PsiSpec t = PsiSpec::table(std::vector<Rational>(16, q(1)));
  PsiReport r = psi_axiom_report(t, BigInt(16));
  EXPECT_TRUE(r.monotonicity_violation.contains(q(0)));
  EXPECT_FALSE(r.grows);
  EXPECT_THROW(psi_axiom_report(t, BigInt(17)), InvalidInput);
  EXPECT_THROW(PsiSpec::table({q(2), q(1)}), InvalidInput);
  EXPECT_THROW(PsiSpec::log_base(q(1)), InvalidInput);
}

TEST(ElementaryNorm, WeightedL1UnitVectors) {
  SpaceSpec w = SpaceSpec::weighted_l1(Sequence::blocks({{q(1, 2), BigInt(1)}}, q(1)));
  NormResult e1 = elementary_norm(w, unit(1));
  ASSERT_TRUE(e1.exact);
  EXPECT_EQ(*e1.exact_value, q(1, 2));
  for (long n = 2; n <= 10; ++n) EXPECT_EQ(*elementary_norm(w, unit(n)).exact_value, q(1));
  EXPECT_FALSE(w.claims_symmetric());
}

TEST(ElementaryNorm, SupAndDivergence) {
  Sequence alt = Sequence::periodic({q(1), q(0)});
  EXPECT_EQ(*elementary_norm(SpaceSpec::linf(), alt).exact_value, q(1));
  EXPECT_TRUE(elementary_norm(SpaceSpec::lp(q(1)), alt).divergent);
  EXPECT_TRUE(elementary_norm(SpaceSpec::lp(q(2)), Sequence::harmonic()).finite());
  EXPECT_TRUE(elementary_norm(SpaceSpec::lp(q(1)), Sequence::harmonic()).divergent);
}

TEST(ElementaryNorm, ExactRootsForFiniteInputs) {
  // (3, 4) in l_2 has norm 5.
  NormResult r = elementary_norm(SpaceSpec::lp(q(2)), fin({{1, q(3)}, {7, q(-4)}}));
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact_value, q(5));
  NormResult s = elementary_norm(SpaceSpec::lp(q(2)), fin({{1, q(1)}, {2, q(1)}}));
  EXPECT_FALSE(s.exact);
  EXPECT_TRUE(s.value.contains(Interval(sqrt(Interval(2L)))));
}

TEST(ElementaryNorm, HarmonicL2EnclosesPiOverSqrt6) {
  NormResult r = elementary_norm(SpaceSpec::lp(q(2)), Sequence::harmonic());
  Interval expect = Interval::pi() / sqrt(Interval(6L));
  EXPECT_TRUE(r.value.intersects(expect));
  EXPECT_LT(r.value.width().hi_double(), 1e-3);
}

TEST(Marcinkiewicz, CandidateScanExamples) {
  NormResult e1 = marcinkiewicz_norm(kLog2, unit(1));
  ASSERT_TRUE(e1.exact);
  EXPECT_EQ(*e1.exact_value, q(1));
  NormResult two = marcinkiewicz_norm(kLog2, fin({{1, q(1)}, {2, q(1)}}));
  Interval expect = Interval(2L) / (log(Interval(3L)) / log(Interval(2L)));
  EXPECT_TRUE(two.value.intersects(expect));
  EXPECT_NEAR(two.value.mid_double(), 1.2618595071429148, 1e-12);
}

TEST(Marcinkiewicz, OnesDiverge) {
  for (const PsiSpec& psi : {kLog2, PsiSpec::natural_log()}) {
    EXPECT_TRUE(marcinkiewicz_norm(psi, Sequence::constant(q(1))).divergent);
    EXPECT_TRUE(marcinkiewicz_norm(psi, Sequence::periodic({q(1), q(1)})).divergent);
    EXPECT_TRUE(marcinkiewicz_norm(psi, Sequence::periodic({q(1), q(0)})).divergent);
  }
}

TEST(Marcinkiewicz, HarmonicUnderNaturalLog) {
  Membership m = membership(SpaceSpec::marcinkiewicz(PsiSpec::natural_log()), Sequence::harmonic());
  EXPECT_EQ(m.status, Membership::Status::member);
  EXPECT_TRUE(m.norm.value.intersects(Interval(1L) / log(Interval(2L))));
  EXPECT_LT(m.norm.value.width().hi_double(), 1e-6);
}

TEST(Marcinkiewicz, BlocksUseEndpointCandidates) {
  // Endpoint maximality inside a constant block: compare against a full scan.
  Sequence x = Sequence::blocks({{q(5), BigInt(3)}, {q(2), BigInt(40)}, {q(1, 3), BigInt(100)}}, std::nullopt);
  NormResult fast = marcinkiewicz_norm(kLog2, x);
  auto s = partial_sums(x, 200);
  Interval best;
  for (std::size_t n = 1; n <= s.size(); ++n) {
    Interval r = Interval(s[n - 1]) / kLog2(BigInt(static_cast<unsigned long>(n)));
    best = n == 1 ? r : max(best, r);
  }
  EXPECT_TRUE(fast.value.intersects(best));
}

TEST(Marcinkiewicz, TableNeedsEnoughValues) {
  PsiSpec t = PsiSpec::table({q(1), q(2), q(3)});
  EXPECT_THROW(marcinkiewicz_norm(t, fin({{5, q(1)}, {6, q(1)}, {7, q(1)}, {8, q(1)}})), InvalidInput);
  NormResult r = marcinkiewicz_norm(t, fin({{1, q(3)}, {2, q(3)}}));
  EXPECT_EQ(*r.exact_value, q(3));
}

TEST(Garling, SmallPairs) {
  // x^2 = (1, 1/sqrt 2), y^2 its reversal; items given by squares.
  GarlingResult x2 = garling_dp({q(1), q(1, 2)});
  GarlingResult y2 = garling_dp({q(1, 2), q(1)});
  ASSERT_TRUE(x2.exact);
  EXPECT_EQ(*x2.exact, q(3, 2));
  EXPECT_TRUE(y2.value.intersects(sqrt(Interval(2L))));
  EXPECT_FALSE(y2.exact);
}

TEST(Garling, DynamicProgramMatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Rational> w;
    for (int i = 0, m = 1 + t % 10; i < m; ++i) w.push_back(q(static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 7)));
    GarlingResult a = garling_dp(w);
    GarlingResult b = garling_enumerate(w);
    EXPECT_TRUE(a.value.intersects(b.value)) << t;
    EXPECT_TRUE(garling_selection_value(w, a.selection).intersects(b.value)) << t;
  }
}

TEST(Garling, RationalSequences) {
  // (2, 1): identity gives 2 + 1/sqrt 2.
  NormResult r = garling_norm(fin({{3, q(2)}, {9, q(-1)}}));
  EXPECT_TRUE(r.value.intersects(Interval(2L) + Interval(1L) / sqrt(Interval(2L))));
  // (1, 2): taking both beats taking the 2 alone.
  NormResult s = garling_norm(fin({{1, q(1)}, {2, q(2)}}));
  EXPECT_TRUE(s.value.intersects(Interval(1L) + Interval(2L) / sqrt(Interval(2L))));
  EXPECT_TRUE(garling_norm(Sequence::periodic({q(1), q(0)})).divergent);
  EXPECT_FALSE(SpaceSpec::garling().claims_symmetric());
}

TEST(Garling, ClosingUpInvariance) {
  Sequence x = fin({{2, q(1, 3)}, {5, q(4)}, {11, q(-2)}, {12, q(1)}});
  EXPECT_TRUE(same_norm(garling_norm(x), garling_norm(closing_up(x))));
}

TEST(Garling, HarmonicIsBounded) {
  NormResult r = garling_norm(Sequence::harmonic());
  EXPECT_TRUE(r.finite());
  EXPECT_FALSE(r.exact);
  // Identity selection gives sum n^{-3/2} = zeta(3/2) ~ 2.612.
  EXPECT_LT(r.value.lo_double(), 2.6123753487);
  EXPECT_GT(r.value.hi_double(), 2.6123753486);
}

TEST(Garling, LargeFiniteSupportIsBoundedNotExact) {
  std::vector<std::pair<Rational, BigInt>> b{{q(1), BigInt(3000)}};
  NormResult r = garling_norm(Sequence::blocks(b, std::nullopt));
  EXPECT_TRUE(r.finite());
  // sum_{k <= 3000} 1/sqrt k lies in (2 sqrt 3001 - 2, 2 sqrt 3000 - 1).
  Interval lo = Interval(2L) * sqrt(Interval(3001L)) - Interval(2L);
  Interval hi = Interval(2L) * sqrt(Interval(3000L)) - Interval(1L);
  EXPECT_TRUE(certainly_le(lo, Interval(r.value.hi_rational())));
  EXPECT_TRUE(certainly_le(Interval(r.value.lo_rational()), hi));
}

TEST(Membership, Examples) {
  SpaceSpec m = SpaceSpec::marcinkiewicz(PsiSpec::natural_log());
  EXPECT_EQ(membership(m, Sequence::periodic({q(1), q(1)})).status, Membership::Status::non_member);
  EXPECT_EQ(membership(SpaceSpec::linf(), Sequence::harmonic()).status, Membership::Status::member);
  EXPECT_EQ(membership(SpaceSpec::lp(q(1)), Sequence::harmonic()).status, Membership::Status::non_member);
}

TEST(NormComparison, Tiers) {
  NormResult a = NormResult::of_rational("x", q(3, 2), "");
  NormResult b = NormResult::of_interval("x", sqrt(Interval(2L)), "");
  EXPECT_TRUE(norm_lt(b, a));
  EXPECT_TRUE(norm_le(b, a));
  EXPECT_FALSE(same_norm(a, b));
  EXPECT_TRUE(same_norm(b, NormResult::of_interval("x", sqrt(Interval(2L)), "")));
}

TEST(Spaces, SymmetryMetadataAndIds) {
  EXPECT_TRUE(SpaceSpec::lp(q(2)).claims_symmetric());
  EXPECT_TRUE(SpaceSpec::linf().claims_symmetric());
  EXPECT_TRUE(SpaceSpec::marcinkiewicz(kLog2).claims_symmetric());
  EXPECT_EQ(SpaceSpec::lp(q(3, 2)).id(), "lp:1.5");
  EXPECT_EQ(SpaceSpec::marcinkiewicz(kLog2).id(), "marcinkiewicz:log:2");
  EXPECT_THROW(SpaceSpec::lp(q(1, 2)), InvalidInput);
  EXPECT_THROW(SpaceSpec::weighted_l1(Sequence::periodic({q(1), q(0)})), InvalidInput);
}
