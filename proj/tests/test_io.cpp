#include "seqspace/io.hpp"

#include <gtest/gtest.h>

using namespace seqspace;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string pointer_of(const std::string& text) {
  try {
    sequence_from_json(Json::parse(text));
  } catch (const JsonError& e) {
    return e.pointer();
  }
  return "<no error>";
}

}  // namespace

TEST(SequenceJson, RoundTripAcrossProfiles) {
  const Profile all[] = {Profile::finite_small, Profile::finite_large, Profile::blocks, Profile::periodic,
                         Profile::nonneg,       Profile::mixed,        Profile::catalog};
  for (std::uint64_t s = 1; s <= 700; ++s) {
    Sequence x = gen_sequence(s, all[s % 7]);
    Sequence y = sequence_from_json(Json::parse(to_json(x).dump()));
    EXPECT_EQ(x, y) << to_json(x).dump();
    EXPECT_EQ(x.kind(), y.kind());
  }
}

TEST(SequenceJson, Shapes) {
  EXPECT_EQ(to_json(Sequence::harmonic()).dump(), R"({"kind":"catalog","name":"harmonic"})");
  EXPECT_EQ(to_json(Sequence::periodic({q(1), q(0)})).dump(), R"({"kind":"periodic","pattern":["1","0"]})");
  Sequence f = Sequence::finite({{BigInt(2), q(5)}, {BigInt(4), q(1, 3)}});
  EXPECT_EQ(to_json(f).dump(), R"({"kind":"finite","entries":[[2,"5"],[4,"1/3"]]})");
  Sequence b = sequence_from_json(Json::parse(R"({"kind":"blocks","blocks":[["2","1000000000000000000000"]],"tail":"zero"})"));
  EXPECT_EQ(b.runs().head.at(0).repeat, parse_bigint("1000000000000000000000"));
  EXPECT_EQ(sequence_from_json(Json::parse(R"({"kind":"periodic","pattern":["0.25","-1.5"]})")).prefix(2),
            (std::vector<Rational>{q(1, 4), q(-3, 2)}));
}

TEST(SequenceJson, ErrorPointers) {
  EXPECT_EQ(pointer_of(R"({"kind":"finite","entries":[[1,"2"],[1,"3"]]})"), "/entries/1/0");
  EXPECT_EQ(pointer_of(R"({"kind":"finite","entries":[[1,"2"],[3,"x"]]})"), "/entries/1/1");
  EXPECT_EQ(pointer_of(R"({"kind":"finite","entries":[[0,"2"]]})"), "/entries/0/0");
  EXPECT_EQ(pointer_of(R"({"kind":"finite","entries":[[2,"0"]]})"), "/entries/0/1");
  EXPECT_EQ(pointer_of(R"({"kind":"blocks","blocks":[["1","0"]]})"), "/blocks/0/1");
  EXPECT_EQ(pointer_of(R"({"kind":"periodic","pattern":[0.5]})"), "/pattern/0");
  EXPECT_EQ(pointer_of(R"({"kind":"wavelet"})"), "/kind");
  EXPECT_EQ(pointer_of(R"({"kind":"catalog","name":"zeta"})"), "/name");
  EXPECT_EQ(pointer_of(R"({"entries":[]})"), "/kind");
}

TEST(SpecJson, PsiAndSpace) {
  for (const char* s : {"log:e", "log:2", "log:10", "table:1,2,3"}) {
    PsiSpec p = parse_psi(s);
    EXPECT_EQ(psi_from_json(to_json(p)), p) << s;
  }
  EXPECT_TRUE(parse_psi("log:e").natural());
  EXPECT_THROW(parse_psi("sqrt"), InvalidInput);
  const PsiSpec d = PsiSpec::log_base(q(2));
  for (const char* s : {"lp:2", "lp:1.5", "linf", "garling", "wl1", "marcinkiewicz:log:e"}) {
    SpaceSpec sp = parse_space(s, d);
    EXPECT_EQ(space_from_json(to_json(sp)).id(), sp.id()) << s;
  }
  EXPECT_EQ(parse_space("marcinkiewicz", d).id(), "marcinkiewicz:log:2");
  EXPECT_THROW(parse_space("lp:0.5", d), InvalidInput);
}

TEST(SpecJson, Estimator) {
  EstimatorSpec e = EstimatorSpec::dilation_averaged(3, 100, BigInt(7));
  EstimatorSpec back = estimator_from_json(to_json(e));
  EXPECT_EQ(to_json(back), to_json(e));
  EXPECT_THROW(estimator_from_json(Json::parse(R"({"method":"cesaro","window":0})")), InvalidInput);
}

TEST(ResultJson, ExactNormsPrintTwice) {
  NormResult r = norm(SpaceSpec::lp(q(2)), Sequence::finite({{BigInt(1), q(1, 3)}}));
  Json j = to_json(r, 20);
  EXPECT_EQ(j["value"][0], j["value"][1]) << j.dump();
  EXPECT_EQ(j["exact_value"], "1/3");
  Json g = to_json(norm(SpaceSpec::garling(), Sequence::finite({{BigInt(1), q(1)}, {BigInt(2), q(1)}})), 20);
  EXPECT_NE(g["value"][0], g["value"][1]);
  EXPECT_FALSE(g["exact"].get<bool>());
  Json d = to_json(norm(SpaceSpec::lp(q(1)), Sequence::constant(q(1))), 20);
  EXPECT_EQ(d["value"][1], "inf");
  EXPECT_TRUE(d["divergent"].get<bool>());
}

TEST(ResultJson, IntervalRoundTripEncloses) {
  Interval v = log(Interval(3L));
  Interval back = interval_from_json(interval_json(v, 30));
  EXPECT_TRUE(back.contains(v));
  EXPECT_THROW(interval_from_json(Json::parse(R"(["2","1"])")), InvalidInput);
  EXPECT_THROW(interval_from_json(Json::parse(R"([1,2])")), JsonError);
}

TEST(RootsJson, GarlingItems) {
  Json j = Json::parse(R"({"kind":"roots","squares":["1","1/2","1/3","1/4"]})");
  ASSERT_TRUE(is_roots_json(j));
  NormResult r = garling_norm_of_squares(roots_from_json(j));
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact_value, q(25, 12));
  EXPECT_THROW(roots_from_json(Json::parse(R"({"kind":"roots","squares":["-1"]})")), JsonError);
}

TEST(WitnessJson, OscillationRoundTrip) {
  OscillationWitness w = oscillating_construct(4);
  Json j = to_json(w);
  EXPECT_EQ(j["stages"][3]["N"], "33362100");
  OscillationWitness back = oscillation_from_json(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_TRUE(oscillating_verify(back).passed);
  Json bad = j;
  bad["stages"][1]["c"] = "1/2";
  EXPECT_THROW(oscillation_from_json(bad), JsonError);
}

TEST(Document, Header) {
  Json d = document("norm", 50, 7, Json{{"x", 1}});
  EXPECT_EQ(d.begin().key(), "schema");
  EXPECT_EQ(d["schema"], kSchema);
  EXPECT_EQ(d["precision"], 50);
  EXPECT_EQ(d["seed"], 7);
  EXPECT_EQ(d["x"], 1);
}
