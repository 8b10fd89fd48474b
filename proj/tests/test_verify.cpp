#include "seqspace/io.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace seqspace;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

const Profile kAll[] = {Profile::finite_small, Profile::finite_large, Profile::blocks, Profile::periodic,
                        Profile::nonneg,       Profile::mixed,        Profile::catalog};

SuiteParams small(std::size_t trials, SpaceSpec space = SpaceSpec::lp(q(2))) {
  SuiteParams p;
  p.trials = trials;
  p.permutations = 10;
  p.space = std::move(space);
  p.estimator = EstimatorSpec::cesaro(200);
  return p;
}

}  // namespace

TEST(Generators, Deterministic) {
  for (Profile pr : kAll) {
    for (std::uint64_t s = 1; s <= 20; ++s) EXPECT_EQ(gen_sequence(s, pr), gen_sequence(s, pr)) << profile_name(pr);
  }
  EXPECT_EQ(digest(gen_sequence(1, Profile::mixed)), digest(gen_sequence(1, Profile::mixed)));
  EXPECT_NE(digest(gen_sequence(1, Profile::mixed)), digest(gen_sequence(2, Profile::mixed)));
}

TEST(Generators, FiniteSmallContract) {
  for (std::uint64_t s = 1; s <= 200; ++s) {
    Sequence x = gen_sequence(s, Profile::finite_small);
    ASSERT_TRUE(x.finite_support());
    EXPECT_LE(x.nonzero_entries().size(), 16u);
  }
  Sequence n = gen_sequence(3, Profile::nonneg);
  EXPECT_TRUE(neg_part(n).is_zero());
}

TEST(Generators, PermutationIsBijection) {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    InjectionSpec p = gen_permutation(s, 8);
    ASSERT_EQ(p.images.size(), 8u);
    std::set<std::uint64_t> seen(p.images.begin(), p.images.end());
    EXPECT_EQ(seen.size(), 8u);
    EXPECT_EQ(*seen.begin(), 1u);
    EXPECT_EQ(*seen.rbegin(), 8u);
  }
}

TEST(Generators, ProfileNamesRoundTrip) {
  for (Profile pr : kAll) EXPECT_EQ(parse_profile(profile_name(pr)), pr);
  EXPECT_THROW(parse_profile("nope"), InvalidInput);
}

TEST(RearrangementOracle, Examples) {
  Sequence x = Sequence::finite({{BigInt(1), q(1)}, {BigInt(2), q(2)}});
  EXPECT_EQ(rearrangement_oracle(x, 2), (std::vector<Rational>{q(2), q(1)}));
  EXPECT_EQ(rearrangement_oracle(Sequence::periodic({q(1), q(2)}), 3), (std::vector<Rational>{q(2), q(2), q(2)}));
  EXPECT_EQ(rearrangement_oracle(Sequence::periodic({q(1), q(0)}), 4), std::vector<Rational>(4, q(1)));
  auto h = rearrangement_oracle(Sequence::harmonic(), 3);
  EXPECT_EQ(h, (std::vector<Rational>{q(1), q(1, 2), q(1, 3)}));
}

TEST(RearrangementOracle, LiteralInfSupAgrees) {
  std::size_t checked = 0;
  for (std::uint64_t s = 1; s <= 400 && checked < 60; ++s) {
    Sequence x = gen_sequence(s, s % 2 ? Profile::finite_small : Profile::periodic);
    if (x.runs().head_length() > 12) continue;
    EXPECT_EQ(rearrangement_literal(x, 6, 12), rearrangement_oracle(x, 6)) << canonical_text(x);
    ++checked;
  }
  EXPECT_EQ(checked, 60u);
  EXPECT_THROW(rearrangement_literal(Sequence::finite({{BigInt(20), q(1)}}), 3, 12), InvalidInput);
}

TEST(RearrangementOracle, MatchesFastRearrangement) {
  std::size_t checked = 0;
  for (std::uint64_t s = 1; s <= 700; ++s) {
    Profile pr = kAll[s % 7];
    Sequence x = gen_sequence(s, pr);
    std::size_t n = 1 + s % 64;
    EXPECT_EQ(decreasing_rearrangement(x).prefix(n), rearrangement_oracle(x, n)) << profile_name(pr) << ' ' << s;
    ++checked;
  }
  EXPECT_EQ(checked, 700u);
}

TEST(Suites, CatalogAndUnknownId) {
  EXPECT_EQ(suite_catalog().size(), 10u);
  EXPECT_THROW(run_suite("NOPE", small(1)), InvalidInput);
}

TEST(Suites, SymmetricSpacesPass) {
  for (const SpaceSpec& s : {SpaceSpec::lp(q(1)), SpaceSpec::lp(q(2)), SpaceSpec::linf(),
                             SpaceSpec::marcinkiewicz(PsiSpec::log_base(q(2)))}) {
    for (const char* id : {"SYMM-NORM", "THM1-EQ", "CLOSE-UP"}) {
      VerificationReport r = run_suite(id, small(40, s));
      EXPECT_TRUE(r.passed()) << id << ' ' << s.id() << ' ' << (r.failures.empty() ? "" : r.failures[0].detail);
      EXPECT_FALSE(r.inverted);
      EXPECT_GT(r.checks, 0u);
    }
  }
}

TEST(Suites, GarlingSymmetryIsViolated) {
  VerificationReport r = run_suite("SYMM-NORM", small(200, SpaceSpec::garling()));
  EXPECT_TRUE(r.inverted);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.violations.empty());
  ASSERT_TRUE(r.min_violation_support.has_value());
  EXPECT_EQ(*r.min_violation_support, 2u);
}

TEST(Suites, WeightedL1SymmetryIsViolated) {
  VerificationReport r = run_suite("THM1-EQ", small(100, half_first_weight_space()));
  EXPECT_TRUE(r.inverted);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.violations.empty());
}

TEST(Suites, RemainingSuitesPass) {
  for (const char* id : {"REARR-PROPS", "INCLUSIONS", "SANDWICH", "PSI-DOUBLING", "GAMMA-SYMM", "GARLING-ASYM"}) {
    VerificationReport r = run_suite(id, small(30));
    EXPECT_TRUE(r.passed()) << id << ' ' << (r.failures.empty() ? "" : r.failures[0].detail);
  }
  SuiteParams p = small(1);
  p.stages = 4;
  EXPECT_TRUE(run_suite("OSC-WITNESS", p).passed());
}

TEST(Suites, Deterministic) {
  SuiteParams p = small(60, SpaceSpec::garling());
  p.seed = 11;
  Json a = to_json(run_suite("SYMM-NORM", p));
  Json b = to_json(run_suite("SYMM-NORM", p));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Suites, ReportRoundTrip) {
  for (const char* id : {"SANDWICH", "SYMM-NORM"}) {
    VerificationReport r = run_suite(id, small(50, SpaceSpec::garling()));
    Json j = to_json(r);
    Json back = to_json(report_from_json(Json::parse(j.dump())));
    EXPECT_EQ(back, j) << id;
  }
}
