#pragma once

// Constructions and certified checks of the counterexamples: the weighted
// l_1 space, the renorming by a symmetric functional, the Garling pair x^m / y^m and the
// non-convergent ratio sequence in m_Psi.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "limits.hpp"

namespace seqspace {

// ---------------------------------------------------------------------------
// l_1(w) with w_1 = 1/2 and w_n = 1 otherwise

struct WeightedL1Witness {
  /// ||e_n|| for n = 1..10.
  std::vector<Rational> unit_norms;
  std::size_t membership_trials = 0;
  bool membership_invariant = true;
  bool norms_differ = false;

  bool passed() const {
    bool units = unit_norms.size() == 10 && unit_norms[0] == Rational(1, 2);
    for (std::size_t i = 1; i < unit_norms.size(); ++i) units = units && unit_norms[i] == 1;
    return units && membership_invariant && norms_differ;
  }
};

inline SpaceSpec half_first_weight_space() {
  return SpaceSpec::weighted_l1(Sequence::blocks({{Rational(1, 2), BigInt(1)}}, Rational(1)));
}

inline WeightedL1Witness weighted_l1_witness(std::uint64_t seed = 1, std::size_t trials = 100) {
  WeightedL1Witness w;
  SpaceSpec space = half_first_weight_space();
  for (long n = 1; n <= 10; ++n) {
    w.unit_norms.push_back(*elementary_norm(space, Sequence::finite({{BigInt(n), Rational(1)}})).exact_value);
  }
  InjectionSpec swap = InjectionSpec::permutation({2, 1});
  w.norms_differ = w.unit_norms[0] != *elementary_norm(space, apply_map(Sequence::finite({{BigInt(1), Rational(1)}}), swap)).exact_value;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, 8), idx(1, 12), num(-1000, 1000), den(1, 1000);
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<long, Rational> entries;
    for (int i = len(rng); i > 0; --i) entries[idx(rng)] = Rational(num(rng), den(rng));
    std::vector<std::pair<BigInt, Rational>> e;
    for (auto& [k, v] : entries) e.emplace_back(BigInt(k), v);
    Sequence x = Sequence::finite(e);
    auto a = membership(space, x).status;
    auto b = membership(space, apply_map(x, swap)).status;
    w.membership_invariant = w.membership_invariant && a == b;
    ++w.membership_trials;
  }
  return w;
}

// ---------------------------------------------------------------------------
// The renorming ||x|| = ||x||_inf + |gamma(x)| under a symmetric gamma

struct RenormReport {
  Rational gamma_ones;         // gamma(1,1,1,...) by hypothesis
  Rational gamma_alternating;  // forced gamma(1,0,1,0,...)
  Rational norm_ones;          // ||(1,1,1,...)||
  Rational norm_alternating;   // ||(1,0,1,0,...)||
  Rational norm_of_rearrangement;
  bool split_identity_holds = false;
  bool halves_are_rearrangements = false;
  bool inconsistent = false;
};

/// (1,1,1,...) = (1,0,1,0,...) + (0,1,0,1,...) and the two halves are
/// rearrangements of each other (swap 2k-1 <-> 2k), so a symmetric linear
/// gamma with gamma(1,1,...) = 1 gives each half 1/2. Then x = (1,0,1,0,...)
/// has x* = (1,1,1,...) but ||x|| = 3/2 while ||x*|| = 2.
inline RenormReport renorm_contradiction() {
  RenormReport r;
  Sequence ones = Sequence::constant(Rational(1));
  Sequence odd = Sequence::periodic({Rational(1), Rational(0)});
  Sequence even = Sequence::periodic({Rational(0), Rational(1)});
  r.split_identity_holds = same_values(add(odd, even), ones);
  // The pair swap is an infinite permutation; it is checked on a long prefix
  // and is exact because both sides have period 2.
  auto po = odd.prefix(1000), pe = even.prefix(1000);
  bool swapped = true;
  for (std::size_t n = 0; n < 1000; ++n) swapped = swapped && pe[n] == po[n ^ 1];
  r.halves_are_rearrangements = swapped && same_values(decreasing_rearrangement(odd), decreasing_rearrangement(even));
  r.gamma_ones = 1;
  r.gamma_alternating = r.gamma_ones / 2;
  Sequence star = decreasing_rearrangement(odd);
  r.norm_ones = ones.sup_abs() + abs(r.gamma_ones);
  r.norm_alternating = odd.sup_abs() + abs(r.gamma_alternating);
  r.norm_of_rearrangement = same_values(star, ones) ? r.norm_ones : Rational(-1);
  r.inconsistent = r.norm_of_rearrangement != r.norm_alternating;
  return r;
}

// ---------------------------------------------------------------------------
// Garling: x^m = (1, 1/sqrt 2, ..., 1/sqrt m), y^m its reversal

struct GarlingWitness {
  unsigned m = 0;
  GarlingResult x, y;
  Rational harmonic_lower;  // H_m
  Interval upper_bound;     // 1 + pi
  bool x_is_harmonic = false;
  bool x_enclosure_tight = false;  // DP enclosure holds H_m, width <= 1e-12
  bool y_below_bound = false;
  bool norms_differ = false;
  /// m <= 12: the DP matches exhaustive enumeration of all 2^m - 1 selections.
  std::optional<bool> enumeration_agrees;

  bool passed() const {
    return x_is_harmonic && x_enclosure_tight && y_below_bound && norms_differ && enumeration_agrees.value_or(true);
  }
};

/// Squares of x^m (reversed = false) or y^m (reversed = true).
inline std::vector<Rational> garling_squares(unsigned m, bool reversed) {
  std::vector<Rational> w;
  w.reserve(m);
  for (unsigned i = 1; i <= m; ++i) w.emplace_back(Rational(1, reversed ? m + 1 - i : i));
  return w;
}

inline Rational harmonic_exact(unsigned m) {
  Rational h = 0;
  for (unsigned i = 1; i <= m; ++i) h += Rational(1, i);
  return h;
}

inline bool enumeration_matches(const std::vector<Rational>& squares, const GarlingResult& dp) {
  GarlingResult all = garling_enumerate(squares);
  if (all.selection != dp.selection) return false;
  if (!garling_selection_value(squares, dp.selection).identical(all.value)) return false;
  return dp.enclosure.intersects(all.value);
}

inline GarlingWitness garling_witness(unsigned m) {
  if (m < 2) throw InvalidInput("the Garling witness needs m >= 2");
  GarlingWitness g;
  g.m = m;
  auto wx = garling_squares(m, false), wy = garling_squares(m, true);
  g.x = garling_dp(wx);
  g.y = garling_dp(wy);
  g.harmonic_lower = harmonic_exact(m);
  g.upper_bound = Interval(1L) + Interval::pi();
  g.x_is_harmonic = g.x.exact && *g.x.exact == g.harmonic_lower;
  g.x_enclosure_tight = g.x.enclosure.contains(g.harmonic_lower) &&
                        certainly_le(g.x.enclosure.width(), Interval(Rational(1, pow10(12))));
  g.y_below_bound = certainly_le(g.y.value, g.upper_bound);
  g.norms_differ = !g.x.value.intersects(g.y.value);
  if (m <= 12) g.enumeration_agrees = enumeration_matches(wx, g.x) && enumeration_matches(wy, g.y);
  return g;
}

// ---------------------------------------------------------------------------
// A sequence in m_Psi whose ratio sequence s_n / Psi(n) does not converge

struct OscillationStage {
  Rational c;
  BigInt n;
  BigInt t;        // N_1 + ... + N_k
  Interval ratio;  // s_{T_k} / Psi(T_k)
};

struct OscillationWitness {
  PsiSpec psi = PsiSpec::natural_log();
  int precision = kDefaultDigits;
  std::vector<OscillationStage> stages;
  /// Largest ratio over the candidate points, set by oscillating_verify.
  std::optional<Interval> sup_bound;

  /// The blocks (c_1 x N_1, c_2 x N_2, ...) followed by zeros.
  Sequence sequence() const {
    std::vector<std::pair<Rational, BigInt>> b;
    for (const auto& s : stages) b.emplace_back(s.c, s.n);
    return Sequence::blocks(b, std::nullopt);
  }
};

namespace detail {

inline int decimal_digits(const BigInt& v) { return static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 10)); }

/// Digits that resolve unit steps of n near `t` against logarithms.
inline int stage_digits(int precision, const BigInt& t) { return precision + 20 + 2 * decimal_digits(t); }

/// Sign of S + n c - Psi(T + n), escalating precision until it is decided.
inline int crossing_sign(const PsiSpec& psi, const Rational& s, const Rational& c, const BigInt& t, const BigInt& n,
                         int digits) {
  for (int d = digits; d <= 8 * digits; d *= 2) {
    PrecisionScope scope(d);
    Interval f = Interval(Rational(s + Rational(n) * c)) - psi(BigInt(t + n));
    if (f.positive()) return 1;
    if (mpfr_sgn(f.hi()) <= 0) return -1;
  }
  throw PrecisionError("could not decide the sign at n = " + n.get_str());
}

}  // namespace detail

/// Builds stages 1..S of the construction.
///
/// Odd checkpoints: c_k is rounded up at P digits, so the ratio lies in
/// [1, 1 + 10^-P]. Even checkpoints: c_k is rounded down and also kept below
/// (Psi(T_k)/2 - S_{k-1}) / N_k, so the ratio is at most 1/2 exactly.
inline OscillationWitness oscillating_construct(unsigned stages, const PsiSpec& psi = PsiSpec::natural_log(),
                                                int precision = kDefaultDigits) {
  if (stages < 2) throw InvalidInput("the oscillation witness needs at least 2 stages");
  if (!psi.is_log()) throw InvalidInput("the oscillation witness needs a logarithmic Psi");
  if (precision < kMinDigits) throw InvalidInput("precision must be at least 20 digits");
  OscillationWitness w;
  w.psi = psi;
  w.precision = precision;
  Rational sum = 0;
  BigInt t = 0;
  for (unsigned k = 1; k <= stages; ++k) {
    OscillationStage st;
    if (k == 1) {
      PrecisionScope scope(detail::stage_digits(precision, BigInt(1)));
      st.n = 1;
      st.c = round_to_digits(psi(BigInt(1)), precision, false);
    } else if (k % 2 == 0) {
      st.n = (t + 1) * (t + 1) * (t + 1) * (t + 1) - (t + 1);
      BigInt t_new = t + st.n;
      PrecisionScope scope(detail::stage_digits(precision, t_new));
      Interval p = psi(t_new);
      Interval count(st.n);
      Interval a = p / (Interval(4L) * count);
      Interval b = (p / Interval(2L) - Interval(sum)) / count;
      Interval bound = min(min(a, b), Interval(w.stages.back().c));
      st.c = round_to_digits(bound, precision, true);
    } else {
      const Rational& prev = w.stages.back().c;
      const int digits = detail::stage_digits(precision, t);
      // f(n) = S + n c_{k-1} - Psi(T + n) is convex with f(0) < 0: bracket by
      // doubling, then bisect for the first n with f(n) > 0.
      BigInt hi = 1;
      while (detail::crossing_sign(psi, sum, prev, t, hi, digits) <= 0) hi *= 2;
      BigInt lo = hi / 2;  // f(lo) <= 0, or lo = 0
      while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (detail::crossing_sign(psi, sum, prev, t, mid, digits) > 0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      st.n = hi;
      BigInt t_new = t + st.n;
      PrecisionScope scope(detail::stage_digits(precision, t_new));
      Interval c = (psi(t_new) - Interval(sum)) / Interval(st.n);
      st.c = round_to_digits(c, precision, false);
      if (st.c > prev) throw PrecisionError("construction failure: c_" + std::to_string(k) + " exceeds c_" + std::to_string(k - 1));
    }
    if (st.c <= 0) throw PrecisionError("construction failure: c_" + std::to_string(k) + " is not positive");
    sum += st.c * Rational(st.n);
    t += st.n;
    st.t = t;
    PrecisionScope scope(detail::stage_digits(precision, t));
    st.ratio = Interval(sum) / psi(t);
    w.stages.push_back(std::move(st));
  }
  return w;
}

struct OscillationReport {
  bool passed = true;
  std::vector<std::string> failures;
  /// First offending index n, when a candidate ratio fails.
  std::optional<BigInt> counterexample;
  std::size_t candidates = 0;
  Interval max_ratio;
  BigInt argmax;
  Interval odd_min;   // smallest odd checkpoint
  Interval even_max;  // largest even checkpoint
  /// Certified lower bound on lim sup - lim inf over the checkpoints.
  Rational oscillation;
  /// (n, ratio) at every candidate, in index order.
  std::vector<std::pair<BigInt, Interval>> points;
};

/// Recomputes s_n / Psi(n) at every block boundary plus `depth` evenly
/// spaced interior points per block, and checks the construction's claims.
inline OscillationReport oscillating_verify(const OscillationWitness& w, unsigned depth = 8) {
  OscillationReport r;
  auto fail = [&r](std::string what, std::optional<BigInt> at = std::nullopt) {
    r.passed = false;
    r.failures.push_back(std::move(what));
    if (at && !r.counterexample) r.counterexample = at;
  };
  if (w.stages.empty()) {
    fail("no stages");
    return r;
  }
  const Rational tol = Rational(1, pow10(static_cast<unsigned long>(std::max(0, w.precision - 10))));
  Rational sum = 0;
  BigInt start = 1;
  bool first_odd = true, first_even = true;
  for (std::size_t i = 0; i < w.stages.size(); ++i) {
    const auto& st = w.stages[i];
    const unsigned k = static_cast<unsigned>(i + 1);
    if (st.n < 1) fail("N_" + std::to_string(k) + " < 1");
    if (st.c <= 0) fail("c_" + std::to_string(k) + " <= 0");
    if (i > 0 && st.c > w.stages[i - 1].c) fail("c_" + std::to_string(k) + " > c_" + std::to_string(k - 1));
    BigInt end = start + st.n - 1;
    if (end != st.t) fail("T_" + std::to_string(k) + " is not N_1 + ... + N_k");
    PrecisionScope scope(detail::stage_digits(w.precision, end));
    std::vector<BigInt> at{start};
    for (unsigned j = 1; j <= depth; ++j) {
      BigInt inner = start + (st.n - 1) * j / (depth + 1);
      if (inner > at.back() && inner < end) at.push_back(inner);
    }
    if (end > at.back()) at.push_back(end);
    Interval checkpoint;
    for (const auto& n : at) {
      Interval ratio = Interval(Rational(sum + st.c * Rational(n - start + 1))) / w.psi(n);
      ++r.candidates;
      if (r.candidates == 1 || mpfr_greater_p(ratio.hi(), r.max_ratio.hi())) {
        r.max_ratio = r.candidates == 1 ? ratio : max(r.max_ratio, ratio);
        r.argmax = n;
      }
      if (!certainly_le(ratio, Interval(2L))) fail("ratio above 2 at n = " + n.get_str(), n);
      r.points.emplace_back(n, ratio);
      checkpoint = ratio;
    }
    sum += st.c * Rational(st.n);
    if (k % 2 == 1) {
      Interval dev = abs(checkpoint - Interval(1L));
      if (!certainly_le(dev, Interval(tol))) fail("odd checkpoint " + std::to_string(k) + " is not 1 within tolerance", end);
      r.odd_min = first_odd ? checkpoint : min(r.odd_min, checkpoint);
      first_odd = false;
    } else {
      if (!certainly_le(checkpoint, Interval(Rational(1, 2)))) fail("even checkpoint " + std::to_string(k) + " exceeds 1/2", end);
      r.even_max = first_even ? checkpoint : max(r.even_max, checkpoint);
      first_even = false;
    }
    start = end + 1;
  }
  if (first_odd || first_even) {
    fail("need at least one odd and one even checkpoint");
    return r;
  }
  Interval gap = r.odd_min - r.even_max;
  r.oscillation = round_to_digits(gap.lo(), w.precision, true);
  if (r.oscillation < Rational(1, 2)) fail("checkpoint oscillation below 1/2");
  return r;
}

inline void write_oscillation_csv(std::ostream& out, const OscillationReport& r, int digits) {
  out << "n,ratio\n";
  std::size_t rows = std::min(r.points.size(), kMaxCsvRows);
  for (std::size_t i = 0; i < rows; ++i) out << r.points[i].first.get_str() << ',' << r.points[i].second.mid_string(digits) << '\n';
  if (rows < r.points.size()) out << "# truncated at " << rows << " of " << r.points.size() << " rows\n";
}

}  // namespace seqspace
