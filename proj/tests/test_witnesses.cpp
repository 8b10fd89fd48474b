#include "seqspace/witnesses.hpp"

#include <gtest/gtest.h>

#include <chrono>

#include "support/oscillation_oracle.hpp"

using namespace seqspace;

namespace {

using oracle::Dec;
namespace mp = oracle::mp;

Dec to_dec(const Rational& q) { return Dec(q.get_num().get_str()) / Dec(q.get_den().get_str()); }

// Values produced by a separate 120-digit script before the library existed.
struct Frozen {
  const char* n;
  const char* t;
  const char* c;
};
const Frozen kFrozen[] = {
    {"1", "1", "0.6931471805599453094172321214581765680755"},
    {"14", "15", "0.04951051289713895067265943724701261200539"},
    {"60", "75", "0.04907398298610734100015045719813089228729"},
    {"33362100", "33362175", "1.298099742008545948499492440465140585691e-7"},
    {"75860360", "109222535", "1.298099731274236344002401471956148845527e-7"},
    {"142314458346192902005536532297080", "142314458346192902005536641519615",
     "1.300563427546114971210577620252476663913e-31"},
    {"293229470363947324104207284052055", "435543928710140226109743925571670", nullptr},
};

}  // namespace

TEST(OscillationOracle, AgreesWithFrozenValues) {
  auto o = oracle::recurrence(7);
  for (std::size_t k = 0; k < 7; ++k) {
    EXPECT_EQ(o[k].n.str(), kFrozen[k].n) << k + 1;
    EXPECT_EQ(o[k].t.str(), kFrozen[k].t) << k + 1;
    if (kFrozen[k].c) {
      Dec f(kFrozen[k].c);
      EXPECT_LT(mp::abs(o[k].c - f) / f, Dec("1e-38")) << k + 1;
    }
  }
}

TEST(Oscillation, MatchesOracleThroughSevenStages) {
  OscillationWitness w = oscillating_construct(7);
  auto o = oracle::recurrence(7);
  ASSERT_EQ(w.stages.size(), 7u);
  for (std::size_t k = 0; k < 7; ++k) {
    EXPECT_EQ(w.stages[k].n.get_str(), o[k].n.str()) << k + 1;
    EXPECT_EQ(w.stages[k].t.get_str(), o[k].t.str()) << k + 1;
    Dec rel = mp::abs(to_dec(w.stages[k].c) - o[k].c) / o[k].c;
    EXPECT_LT(rel, Dec("1e-45")) << k + 1;
  }
}

TEST(Oscillation, ConstructionAnchors) {
  OscillationWitness w = oscillating_construct(5);
  EXPECT_EQ(w.stages[0].n, 1);
  EXPECT_EQ(w.stages[1].n, 14);
  EXPECT_EQ(w.stages[2].n, 60);
  EXPECT_EQ(w.stages[3].n, BigInt(76L * 76 * 76 * 76 - 76));
  EXPECT_EQ(w.stages[3].n, 33362100);
  // c_2 = ln 16 / 56.
  Interval c2 = log(Interval(16L)) / Interval(56L);
  EXPECT_TRUE(certainly_le(abs(Interval(w.stages[1].c) - c2), Interval(Rational(1, pow10(48)))));
  for (std::size_t k = 1; k < w.stages.size(); ++k) EXPECT_LE(w.stages[k].c, w.stages[k - 1].c);
}

TEST(Oscillation, CheckpointsAlternate) {
  OscillationWitness w = oscillating_construct(5);
  OscillationReport r = oscillating_verify(w);
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  const Interval tol(Rational(1, pow10(40)));
  for (std::size_t k = 0; k < w.stages.size(); ++k) {
    const Interval& v = w.stages[k].ratio;
    if (k % 2 == 0) {
      EXPECT_TRUE(certainly_le(abs(v - Interval(1L)), tol)) << k + 1;
    } else {
      EXPECT_TRUE(certainly_le(v, Interval(Rational(1, 2)))) << k + 1;
    }
  }
  EXPECT_TRUE(certainly_le(r.max_ratio, Interval(2L)));
  EXPECT_GE(r.oscillation, Rational(1, 2) - Rational(1, pow10(40)));
  EXPECT_GT(r.candidates, 5u);
}

TEST(Oscillation, Preconditions) {
  EXPECT_THROW(oscillating_construct(1), InvalidInput);
  EXPECT_THROW(oscillating_construct(3, PsiSpec::table({Rational(1)})), InvalidInput);
  EXPECT_THROW(oscillating_construct(3, PsiSpec::natural_log(), 10), InvalidInput);
}

TEST(Oscillation, TamperedWitnessFails) {
  OscillationWitness w = oscillating_construct(4);
  w.stages[1].c *= 2;
  OscillationReport r = oscillating_verify(w);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.counterexample.has_value());
}

TEST(GarlingWitness, SmallCases) {
  GarlingWitness g2 = garling_witness(2);
  EXPECT_TRUE(g2.passed());
  EXPECT_EQ(*g2.x.exact, Rational(3, 2));
  EXPECT_TRUE(g2.y.value.intersects(sqrt(Interval(2L))));
  GarlingWitness g4 = garling_witness(4);
  EXPECT_TRUE(g4.passed());
  EXPECT_EQ(*g4.x.exact, Rational(25, 12));
  EXPECT_NEAR(g4.y.value.mid_double(), 1.8164965809277260327, 1e-15);
  ASSERT_TRUE(g4.enumeration_agrees.has_value());
  EXPECT_TRUE(*g4.enumeration_agrees);
}

TEST(GarlingWitness, FrozenValues) {
  struct Row {
    unsigned m;
    double y;
  };
  for (Row r : {Row{3, 1.654700538379251529}, Row{12, 2.32706787284531246246}, Row{100, 2.85076625177141007657},
                Row{1000, 3.04927130597116769698}}) {
    GarlingWitness g = garling_witness(r.m);
    EXPECT_TRUE(g.passed()) << r.m;
    EXPECT_EQ(*g.x.exact, harmonic_exact(r.m)) << r.m;
    EXPECT_NEAR(g.y.value.mid_double(), r.y, 1e-13) << r.m;
    EXPECT_LT(g.y.value.width().hi_double(), 1e-12) << r.m;
  }
  EXPECT_EQ(harmonic_exact(12), Rational(86021, 27720));
  EXPECT_NEAR(harmonic_exact(1000).get_d(), 7.48547086055034491265, 1e-13);
}

TEST(GarlingWitness, EnumerationUpToTwelve) {
  for (unsigned m = 2; m <= 12; ++m) {
    GarlingWitness g = garling_witness(m);
    ASSERT_TRUE(g.enumeration_agrees.has_value()) << m;
    EXPECT_TRUE(*g.enumeration_agrees) << m;
    EXPECT_TRUE(g.norms_differ) << m;
  }
}

TEST(GarlingWitness, NormOfXGrowsWithoutBound) {
  Rational prev = 0;
  for (unsigned m = 2; m <= 1024; m *= 2) {
    GarlingWitness g = garling_witness(m);
    EXPECT_GT(*g.x.exact, prev);
    prev = *g.x.exact;
  }
  EXPECT_GT(prev, Rational(7));
  EXPECT_THROW(garling_witness(1), InvalidInput);
}

TEST(GarlingWitness, ThousandIsFast) {
  auto t0 = std::chrono::steady_clock::now();
  GarlingWitness g = garling_witness(1000);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(g.passed());
  EXPECT_LT(s, 10.0);
}

TEST(WeightedL1Witness, Example) {
  WeightedL1Witness w = weighted_l1_witness();
  EXPECT_TRUE(w.passed());
  EXPECT_EQ(w.unit_norms[0], Rational(1, 2));
  for (std::size_t i = 1; i < 10; ++i) EXPECT_EQ(w.unit_norms[i], 1);
  EXPECT_EQ(w.membership_trials, 100u);
}

TEST(Renorm, Contradiction) {
  RenormReport r = renorm_contradiction();
  EXPECT_TRUE(r.split_identity_holds);
  EXPECT_TRUE(r.halves_are_rearrangements);
  EXPECT_EQ(r.norm_ones, 2);
  EXPECT_EQ(r.norm_alternating, Rational(3, 2));
  EXPECT_EQ(r.gamma_alternating, Rational(1, 2));
  EXPECT_TRUE(r.inconsistent);
}
