// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "seqspace/io.hpp"
#include "support/oscillation_oracle.hpp"

using namespace seqspace;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Sequence unit(long n) { return Sequence::finite({{BigInt(n), q(1)}}); }

Interval tenth_power(int k) { return Interval(Rational(1, pow10(static_cast<unsigned long>(k)))); }

void weighted_l1(Outcome& o) {
  SpaceSpec space = half_first_weight_space();
  std::vector<Rational> norms;
  double s = timed([&] {
    for (long n = 1; n <= 10; ++n) norms.push_back(*elementary_norm(space, unit(n)).exact_value);
  });
  o.require(norms[0] == q(1, 2), "||e_1|| = 1/2");
  for (std::size_t i = 1; i < norms.size(); ++i) o.require(norms[i] == 1, "||e_n|| = 1");
  o.require(s < 1e-3, "runtime < 1 ms");
  o.note << "||e_1||=" << format_rational(norms[0]) << " ||e_2..10||=1 in " << s * 1e3 << " ms";
}

void garling(Outcome& o) {
  for (unsigned m : {2u, 4u, 100u, 1000u}) {
    GarlingWitness g;
    double s = timed([&] { g = garling_witness(m); });
    const std::string tag = "m=" + std::to_string(m);
    o.require(g.x_is_harmonic, tag + " ||x|| = H_m exactly");
    o.require(g.x_enclosure_tight, tag + " enclosure of H_m within 1e-12");
    o.require(g.y_below_bound, tag + " ||y|| <= 1 + pi");
    o.require(g.norms_differ, tag + " ||x|| != ||y||");
    if (m == 1000) o.require(s < 2.0, "m=1000 under 2 s");
  }
  for (unsigned m = 2; m <= 12; ++m) {
    GarlingWitness g = garling_witness(m);
    o.require(g.enumeration_agrees.value_or(false), "m=" + std::to_string(m) + " DP = enumeration");
    o.require(g.norms_differ, "m=" + std::to_string(m) + " norms differ");
  }
  GarlingWitness big;
  double s = timed([&] { big = garling_witness(2000); });
  o.require(big.passed(), "m=2000 witness");
  o.require(s < 10.0, "m=2000 under 10 s");
  o.note << "H_m exact for m in {2,4,100,1000}, DP=enumeration for m<=12, m=2000 in " << s << " s";
}

void oscillation(Outcome& o) {
  OscillationWitness w = oscillating_construct(5);
  auto ref = oracle::recurrence(5);
  for (std::size_t k = 0; k < 5; ++k) {
    o.require(w.stages[k].n.get_str() == ref[k].n.str(), "N_" + std::to_string(k + 1) + " matches oracle");
    oracle::Dec c = oracle::Dec(w.stages[k].c.get_num().get_str()) / oracle::Dec(w.stages[k].c.get_den().get_str());
    o.require(oracle::mp::abs(c - ref[k].c) / ref[k].c < oracle::Dec("1e-45"), "c_" + std::to_string(k + 1) + " matches oracle");
  }
  o.require(w.stages[1].n == 14 && w.stages[2].n == 60 && w.stages[3].n == 33362100, "N_2, N_3, N_4 anchors");
  for (std::size_t k = 0; k < w.stages.size(); ++k) {
    const Interval& r = w.stages[k].ratio;
    if (k % 2 == 0) {
      o.require(certainly_le(abs(r - Interval(1L)), tenth_power(40)), "odd checkpoint = 1 within 1e-40");
    } else {
      o.require(certainly_le(r, Interval(q(1, 2))), "even checkpoint <= 1/2");
    }
  }
  OscillationReport rep = oscillating_verify(w);
  o.require(rep.passed, "verification report");
  o.require(certainly_le(rep.max_ratio, Interval(2L)), "candidate ratios <= 2");
  o.require(rep.oscillation >= q(1, 2) - Rational(1, pow10(40)), "lim sup - lim inf >= 1/2");
  double s6 = timed([&] { o.require(oscillating_verify(oscillating_construct(6)).passed, "S=6 verifies"); });
  o.require(s6 < 10.0, "S=6 under 10 s");
  o.note << "N_4=" << w.stages[3].n.get_str() << ", max candidate " << rep.max_ratio.mid_string(12) << ", S=6 in " << s6
         << " s";
}

void estimator(Outcome& o) {
  LimitEstimate half = estimate_limit(EstimatorSpec::cesaro(2), Sequence::periodic({q(1), q(0)}));
  o.require(half.exact && *half.exact_value == q(1, 2), "Periodic([1,0]) -> 1/2 exactly");
  // Whole-period window on a stream that does not know it is periodic.
  Stream alt = from_function([](const BigInt& n) { return Interval(static_cast<long>(mpz_odd_p(n.get_mpz_t()) ? 1 : 0)); },
                             std::nullopt, q(1));
  LimitEstimate raw = estimate_limit(EstimatorSpec::cesaro(1000), alt);
  o.require(raw.value.is_point() && raw.value.contains(q(1, 2)), "whole-period average = 1/2 without shortcut");
  Stream dyadic = from_function(
      [](const BigInt& n) { return Interval(static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2) % 2)); }, std::nullopt, q(1));
  for (unsigned n = 0; n <= 20; ++n) {
    LimitEstimate e = estimate_limit(EstimatorSpec::dilation_averaged(n, 4000), dyadic);
    o.require(e.dilation_residual && e.dilation_bound && certainly_le(*e.dilation_residual, Interval(*e.dilation_bound)),
              "dilation residual <= 2 sup|x|/(n+1) at n=" + std::to_string(n));
  }
  AxiomReport ax = axiom_residuals(EstimatorSpec::cesaro(100000), alt, one_plus_reciprocal());
  o.require(ax.product_residual && ax.product_residual->hi_double() <= 1e-4, "product residual <= 1e-4");
  o.note << "product residual " << ax.product_residual->hi_string(3) << " at W=1e5";
}

void sandwich_suite(Outcome& o) {
  SuiteParams p;
  p.trials = 10000;
  p.n = 100;
  VerificationReport r;
  double s = timed([&] { r = run_suite("SANDWICH", p); });
  o.require(r.passed() && r.failures.empty(), "zero violations");
  o.require(r.trials == 10000, "10^4 pairs");
  o.require(s < 30.0, "runtime < 30 s");
  o.note << r.trials << " pairs, " << r.checks << " checks, " << r.failures.size() << " violations in " << s << " s";
}

void norm_invariance(Outcome& o) {
  std::ostringstream parts;
  for (const SpaceSpec& space : {SpaceSpec::lp(q(1)), SpaceSpec::lp(q(2)), SpaceSpec::linf(),
                                 SpaceSpec::marcinkiewicz(PsiSpec::log_base(q(2)))}) {
    SuiteParams p;
    p.trials = 1000;
    p.permutations = 100;
    p.space = space;
    VerificationReport r = run_suite("THM1-EQ", p);
    o.require(!r.inverted && r.passed(), space.id() + " zero failures");
    parts << space.id() << ":" << r.checks << " ";
  }
  for (const SpaceSpec& space : {SpaceSpec::garling(), half_first_weight_space()}) {
    SuiteParams p;
    p.trials = 1000;
    p.permutations = 100;
    p.space = space;
    VerificationReport r = run_suite("THM1-EQ", p);
    o.require(r.inverted && r.passed() && !r.violations.empty(), space.id() + " exhibits a violation");
    parts << space.id() << ":" << r.violations.size() << " violations";
    if (r.min_violation_support) parts << " (min support " << *r.min_violation_support << ")";
    parts << " ";
  }
  o.note << parts.str();
}

void gamma_functional(Outcome& o) {
  const PsiSpec log2 = PsiSpec::log_base(q(2));
  for (long n = 1; n <= 100; ++n) {
    GammaEstimate g = symmetric_functional(log2, EstimatorSpec::cesaro(1000), unit(n));
    o.require(g.exact && *g.exact_value == 0, "gamma(e_n) = 0");
  }
  // Past n = 1e300 the tail band for H_n / ln(n+1) is [1, 1 + euler_gamma / ln n],
  // which is narrower than 1e-3.
  BigInt offset = pow10(300);
  GammaEstimate h = symmetric_functional(PsiSpec::natural_log(), EstimatorSpec::cesaro(1'000'000, offset), Sequence::harmonic());
  o.require(h.interval.contains(q(1)), "gamma(harmonic) contains 1");
  o.require(certainly_le(h.interval.width(), tenth_power(3)), "gamma(harmonic) width <= 1e-3");
  std::size_t perms = 0;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    Sequence x = gen_sequence(s, Profile::finite_small);
    GammaEstimate gx = symmetric_functional(log2, EstimatorSpec::cesaro(100), x);
    for (std::uint64_t t = 0; t < 10; ++t) {
      Sequence y = apply_map(x, gen_permutation(s * 100 + t, 48));
      GammaEstimate gy = symmetric_functional(log2, EstimatorSpec::cesaro(100), y);
      o.require(gx.exact && gy.exact && *gx.exact_value == *gy.exact_value, "gamma(x_sigma) = gamma(x)");
      ++perms;
    }
  }
  bool rejected = false;
  try {
    symmetric_functional(log2, EstimatorSpec::cesaro(10), Sequence::constant(q(1)));
  } catch (const NonMemberError&) {
    rejected = true;
  }
  o.require(rejected, "(1,1,1,...) rejected");
  o.require(membership(SpaceSpec::marcinkiewicz(log2), Sequence::constant(q(1))).status == Membership::Status::non_member,
            "(1,1,1,...) non-member");
  o.note << "gamma(harmonic) in [" << h.interval.lo_string(8) << ", " << h.interval.hi_string(8) << "], " << perms
         << " permuted inputs";
}

void rearrangement(Outcome& o) {
  const Profile all[] = {Profile::finite_small, Profile::finite_large, Profile::blocks, Profile::periodic,
                         Profile::nonneg,       Profile::mixed,        Profile::catalog};
  std::set<Kind> kinds;
  std::size_t mismatches = 0;
  double s = timed([&] {
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
      Sequence x = gen_sequence(seed, all[seed % 7]);
      kinds.insert(x.kind());
      std::size_t n = 1 + seed % 64;
      if (decreasing_rearrangement(x).prefix(n) != rearrangement_oracle(x, n)) ++mismatches;
    }
  });
  o.require(mismatches == 0, "fast rearrangement = oracle");
  o.require(kinds.size() >= 4, "all kinds exercised");
  o.require(s < 60.0, "runtime < 60 s");
  o.note << "10000 sequences over " << kinds.size() << " kinds, " << mismatches << " mismatches in " << s << " s";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"weighted l1 unit norms", weighted_l1},
      {"Garling witness", garling},
      {"oscillation witness", oscillation},
      {"Banach-limit estimator", estimator},
      {"sandwich inequality", sandwich_suite},
      {"rearrangement-invariant norm suite", norm_invariance},
      {"gamma functional", gamma_functional},
      {"rearrangement oracle equivalence", rearrangement},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    double s = seconds_since(t0);
    std::printf("%s  [%d] %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", i, name, s, o.note.str().c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", i - failed, i);
  return failed == 0 ? 0 : 1;
}
