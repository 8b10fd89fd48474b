#pragma once

// Seeded input generators, a brute-force rearrangement oracle and the
// property suites that tie each statement to an executable check.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "witnesses.hpp"

namespace seqspace {

// ---------------------------------------------------------------------------
// Generators

enum class Profile { finite_small, finite_large, blocks, periodic, nonneg, mixed, catalog };

inline const char* profile_name(Profile p) {
  switch (p) {
    case Profile::finite_small: return "finite-small";
    case Profile::finite_large: return "finite-large";
    case Profile::blocks: return "blocks";
    case Profile::periodic: return "periodic";
    case Profile::nonneg: return "nonneg";
    case Profile::mixed: return "mixed";
    case Profile::catalog: return "catalog";
  }
  return "?";
}

inline Profile parse_profile(const std::string& s) {
  for (Profile p : {Profile::finite_small, Profile::finite_large, Profile::blocks, Profile::periodic, Profile::nonneg,
                    Profile::mixed, Profile::catalog}) {
    if (s == profile_name(p)) return p;
  }
  throw InvalidInput("unknown profile '" + s + "'");
}

namespace detail {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// num/den with |num|, den <= 1000; a third of the draws come from a small
/// set so that ties are common.
inline Rational draw_value(Rng& rng, bool nonneg) {
  Rational q;
  if (uniform(rng, 0, 2) == 0) {
    q = Rational(uniform(rng, -4, 4), uniform(rng, 1, 2));
  } else {
    q = Rational(uniform(rng, -1000, 1000), uniform(rng, 1, 1000));
  }
  q.canonicalize();
  return nonneg ? Rational(abs(q)) : q;
}

inline Sequence draw_finite(Rng& rng, long max_support, long max_index, bool nonneg) {
  long count = uniform(rng, 0, max_support);
  std::map<long, Rational> entries;
  for (long i = 0; i < count; ++i) {
    Rational v = draw_value(rng, nonneg);
    if (v != 0) entries[uniform(rng, 1, max_index)] = v;
  }
  std::vector<std::pair<BigInt, Rational>> e;
  for (auto& [k, v] : entries) e.emplace_back(BigInt(k), v);
  return Sequence::finite(e);
}

inline Sequence draw_blocks(Rng& rng, bool nonneg) {
  std::vector<std::pair<Rational, BigInt>> b;
  for (long i = uniform(rng, 1, 8); i > 0; --i) {
    BigInt count = uniform(rng, 0, 9) == 0 ? pow10(static_cast<unsigned long>(uniform(rng, 3, 30))) : BigInt(uniform(rng, 1, 5));
    b.emplace_back(draw_value(rng, nonneg), count);
  }
  std::optional<Rational> tail;
  if (uniform(rng, 0, 1) == 0) tail = draw_value(rng, nonneg);
  return Sequence::blocks(b, tail);
}

inline Sequence draw_periodic(Rng& rng, bool nonneg) {
  std::vector<Rational> p;
  for (long i = uniform(rng, 1, 8); i > 0; --i) p.push_back(uniform(rng, 0, 3) == 0 ? Rational(0) : draw_value(rng, nonneg));
  return Sequence::periodic(p);
}

}  // namespace detail

inline Sequence gen_sequence(std::uint64_t seed, Profile profile) {
  detail::Rng rng(seed);
  switch (profile) {
    case Profile::finite_small: return detail::draw_finite(rng, 16, 40, false);
    case Profile::finite_large: return detail::draw_finite(rng, 256, 1'000'000, false);
    case Profile::blocks: return detail::draw_blocks(rng, false);
    case Profile::periodic: return detail::draw_periodic(rng, false);
    case Profile::nonneg: return detail::draw_finite(rng, 16, 40, true);
    case Profile::mixed: {
      // Blocks plus a periodic sequence: an eventually periodic run form.
      Sequence a = detail::draw_blocks(rng, false);
      Sequence b = detail::draw_periodic(rng, false);
      return add(a, b);
    }
    case Profile::catalog: {
      Rational s = detail::draw_value(rng, false);
      if (s == 0) s = 1;
      return Sequence::harmonic(s, BigInt(detail::uniform(rng, 0, 5)));
    }
  }
  throw InvalidInput("unknown profile");
}

/// A uniformly random bijection of {1..K}.
inline InjectionSpec gen_permutation(std::uint64_t seed, std::size_t k) {
  detail::Rng rng(seed);
  std::vector<std::uint64_t> images(k);
  for (std::size_t i = 0; i < k; ++i) images[i] = i + 1;
  std::shuffle(images.begin(), images.end(), rng);
  return InjectionSpec::permutation(std::move(images));
}

/// A random injection defined on {1..k} with images in {1..2k}.
inline InjectionSpec gen_injection(std::uint64_t seed, std::size_t k) {
  detail::Rng rng(seed);
  std::vector<std::uint64_t> pool(2 * k);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(i + 1, pool[i]);
  return InjectionSpec::injection(std::move(pairs));
}

/// One line of text that identifies a sequence (for digests and logs).
inline std::string canonical_text(const Sequence& x) {
  std::ostringstream o;
  o << kind_name(x.kind()) << ':';
  if (x.is_catalog()) {
    o << format_rational(x.harmonic_params().scale) << '/' << x.harmonic_params().offset.get_str();
    return o.str();
  }
  for (const auto& r : x.runs().head) {
    o << '[';
    for (const auto& v : r.pattern) o << format_rational(v) << ' ';
    o << "]x" << r.repeat.get_str() << ' ';
  }
  o << "cycle[";
  for (const auto& v : x.runs().cycle) o << format_rational(v) << ' ';
  o << ']';
  return o.str();
}

/// 64-bit FNV-1a of the canonical text, in hex.
inline std::string digest(const Sequence& x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_text(x)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << h;
  return o.str();
}

// ---------------------------------------------------------------------------
// x*_n = inf { sup_{k not in J} |x_k| : card J < n }

namespace detail {

/// |x_k| over a truncation that keeps at most `cap` copies of every run
/// entry, plus M = sup of the values repeated forever.
inline std::pair<std::vector<Rational>, Rational> capped_moduli(const Sequence& x, std::size_t cap) {
  std::vector<Rational> w;
  Rational forever = 0;
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    for (std::size_t i = 1; i <= cap; ++i) w.push_back(abs(h.at(BigInt(static_cast<unsigned long>(i)))));
    return {w, forever};
  }
  for (const auto& r : x.runs().head) {
    BigInt reps = std::min(r.repeat, BigInt(static_cast<unsigned long>(cap)));
    for (BigInt k = 0; k < reps; ++k) {
      for (const auto& v : r.pattern) w.push_back(abs(v));
    }
  }
  for (const auto& v : x.runs().cycle) forever = std::max(forever, Rational(abs(v)));
  return {w, forever};
}

}  // namespace detail

/// Oracle for the first n terms of x* (n <= 64).
///
/// Removing a set J with card J < n can delete at most n - 1 copies of any
/// value, so keeping n copies per run entry loses nothing; every value of
/// the cycle survives any finite J, so their maximum M bounds the result
/// from below; for the harmonic catalog the unseen terms are smaller than
/// every kept one. The infimum is then attained by deleting the n - 1
/// largest kept moduli.
inline std::vector<Rational> rearrangement_oracle(const Sequence& x, std::size_t n) {
  if (n < 1 || n > 64) throw InvalidInput("the rearrangement oracle handles 1 <= N <= 64");
  auto [w, forever] = detail::capped_moduli(x, n);
  std::sort(w.begin(), w.end(), std::greater<>());
  std::vector<Rational> out;
  for (std::size_t j = 0; j < n; ++j) {
    Rational kept = j < w.size() ? w[j] : Rational(0);
    out.push_back(std::max(kept, forever));
  }
  return out;
}

/// Literal evaluation over every J inside the first `window` positions
/// (window <= 14, window past the head of the run form). Positions beyond
/// the window repeat the cycle, so no finite deletion changes their sup;
/// for the harmonic catalog they are dominated by the window.
inline std::vector<Rational> rearrangement_literal(const Sequence& x, std::size_t n, std::size_t window) {
  if (window > 14 || n > window + 1) throw InvalidInput("literal oracle window too large");
  if (!x.is_catalog() && BigInt(static_cast<unsigned long>(window)) < x.runs().head_length()) {
    throw InvalidInput("literal oracle window must cover the head");
  }
  auto vals = x.prefix(window);
  Rational beyond = 0;
  if (x.is_catalog()) {
    beyond = abs(x.at(BigInt(static_cast<unsigned long>(window + 1))));
  } else {
    for (const auto& v : x.runs().cycle) beyond = std::max(beyond, Rational(abs(v)));
  }
  std::vector<Rational> out;
  for (std::size_t j = 1; j <= n; ++j) {
    std::optional<Rational> best;
    for (unsigned long mask = 0; mask < (1UL << window); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountl(mask)) >= j) continue;
      Rational sup = beyond;
      for (std::size_t k = 0; k < window; ++k) {
        if (!(mask >> k & 1UL)) sup = std::max(sup, Rational(abs(vals[k])));
      }
      if (!best || sup < *best) best = sup;
    }
    out.push_back(*best);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteParams {
  std::size_t trials = 1000;
  std::size_t n = 64;
  std::uint64_t seed = 1;
  SpaceSpec space = SpaceSpec::lp(Rational(2));
  PsiSpec psi = PsiSpec::log_base(Rational(2));
  std::size_t permutations = 100;
  unsigned stages = 5;
  EstimatorSpec estimator = EstimatorSpec::cesaro(10'000);
};

struct SuiteFailure {
  std::uint64_t seed = 0;
  std::string digest;
  std::string residual;
  std::string detail;
  std::size_t support = 0;
};

struct VerificationReport {
  std::string suite;
  std::string target;  // space or Psi under test
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::uint64_t seed = 0;
  /// Suites over non-symmetric spaces pass only when they exhibit a violation.
  bool inverted = false;
  std::vector<SuiteFailure> failures;
  /// Violations found by an inverted suite.
  std::vector<SuiteFailure> violations;
  std::optional<std::size_t> min_violation_support;
  Rational max_residual{0};
  double wall_seconds = 0;

  bool passed() const { return failures.empty(); }
};

inline const std::vector<std::string>& suite_catalog() {
  static const std::vector<std::string> ids{"REARR-PROPS", "SYMM-NORM",    "THM1-EQ",   "CLOSE-UP",     "INCLUSIONS",
                                            "SANDWICH",    "PSI-DOUBLING", "GAMMA-SYMM", "GARLING-ASYM", "OSC-WITNESS"};
  return ids;
}

namespace detail {

inline constexpr std::size_t kKeptFailures = 20;

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t t) { return seed * 1'000'003ULL + t; }

/// Finite support short enough to list entry by entry.
inline bool listable(const Sequence& x) { return x.finite_support() && x.runs().head_length() <= 4096; }

inline std::size_t support_size(const Sequence& x) { return listable(x) ? x.nonzero_entries().size() : 0; }

/// Not certifiably greater: exact comparison when both are exact, otherwise
/// a.lo <= b.hi (intervals at precision P never refute a true inequality).
inline bool consistent_le(const NormResult& a, const NormResult& b) {
  if (b.divergent) return true;
  if (a.divergent) return false;
  if (a.exact && b.exact) return *a.exact_value <= *b.exact_value;
  return mpfr_lessequal_p(a.value.lo(), b.value.hi());
}

class Recorder {
 public:
  explicit Recorder(VerificationReport& r) : r_(r) {}

  void fail(std::uint64_t seed, const Sequence& x, std::string detail, Rational residual = Rational(0)) {
    r_.max_residual = std::max(r_.max_residual, residual);
    if (r_.failures.size() < kKeptFailures) {
      r_.failures.push_back({seed, digest(x), format_rational(residual), std::move(detail), support_size(x)});
    } else {
      ++dropped_;
    }
  }
  void violation(std::uint64_t seed, const Sequence& x, std::string detail, std::size_t support) {
    // Support 0 marks an input too long to list.
    if (support > 0 && (!r_.min_violation_support || support < *r_.min_violation_support)) r_.min_violation_support = support;
    if (r_.violations.size() < kKeptFailures) {
      r_.violations.push_back({seed, digest(x), "", std::move(detail), support});
    }
  }
  void check() { ++r_.checks; }

 private:
  VerificationReport& r_;
  std::size_t dropped_ = 0;
};

inline Rational interval_gap(const Interval& a, const Interval& b) {
  // How far a sits above b, when it does.
  Interval d = a - b;
  return d.positive() ? d.lo_rational() : Rational(0);
}

/// Smallest support among two-entry transpositions that still separate the
/// norms, or the full support when none does.
inline std::size_t shrink_asymmetry(const SpaceSpec& space, const Sequence& x) {
  auto entries = x.nonzero_entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      Sequence pair = Sequence::finite({{BigInt(1), entries[i].second}, {BigInt(2), entries[j].second}});
      Sequence swapped = apply_map(pair, InjectionSpec::permutation({2, 1}));
      if (!same_norm(norm(space, pair), norm(space, swapped))) return 2;
    }
  }
  return entries.size();
}

inline std::size_t permutation_size(const Sequence& x, std::size_t minimum) {
  if (listable(x)) {
    auto e = x.nonzero_entries();
    if (!e.empty()) minimum = std::max(minimum, static_cast<std::size_t>(e.back().first.get_ui()));
  }
  return minimum;
}

inline void rearr_props(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  const Profile profiles[] = {Profile::finite_small, Profile::blocks, Profile::periodic, Profile::mixed, Profile::catalog};
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Profile prof = profiles[t % 5];
    Sequence x = gen_sequence(s, prof);
    auto xs = decreasing_rearrangement(x).prefix(p.n);
    // 1. |x| <= |y| implies x* <= y*.
    Sequence y = x.is_catalog() ? scale(Rational(3, 2), abs(x)) : add(abs(x), abs(gen_sequence(s + 1, Profile::finite_small)));
    auto ys = decreasing_rearrangement(y).prefix(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
      rec.check();
      if (xs[i] > ys[i]) rec.fail(s, x, "x* > y* at n = " + std::to_string(i + 1) + " although |x| <= |y|", xs[i] - ys[i]);
    }
    // 2. (x_pi)* <= x* for injections pi.
    std::vector<InjectionSpec> maps;
    using T = InjectionSpec::Type;
    maps.push_back(InjectionSpec::named(T::shift, BigInt(static_cast<unsigned long>(t % 7))));
    if (!x.is_catalog()) {
      maps.push_back(InjectionSpec::named(T::evens_to_all));
      maps.push_back(InjectionSpec::named(T::odds_to_all));
      maps.push_back(InjectionSpec::named(T::interleave_with_zeros));
    }
    if (listable(x)) maps.push_back(gen_injection(s + 2, permutation_size(x, 8)));
    for (const auto& pi : maps) {
      auto ps = decreasing_rearrangement(apply_map(x, pi)).prefix(p.n);
      for (std::size_t i = 0; i < p.n; ++i) {
        rec.check();
        if (ps[i] > xs[i]) rec.fail(s, x, std::string("(x_pi)* > x* for ") + injection_name(pi.type), ps[i] - xs[i]);
      }
    }
    // 3. sup |x^k - x| <= eps implies sup |(x^k)* - x*| <= eps.
    for (long k = 1; k <= 3; ++k) {
      Rational eps(1, k * 10);
      Sequence xk;
      if (x.is_catalog()) {
        Rational factor = 1 + eps / x.sup_abs();
        xk = scale(factor, x);
      } else {
        Sequence e = gen_sequence(s + 10 + k, Profile::finite_small);
        Rational m = e.sup_abs();
        xk = m == 0 ? x : add(x, scale(eps / m, e));
      }
      auto ks = decreasing_rearrangement(xk).prefix(p.n);
      for (std::size_t i = 0; i < p.n; ++i) {
        rec.check();
        Rational d = abs(ks[i] - xs[i]);
        if (d > eps) rec.fail(s, x, "uniform perturbation moved x* by more than eps", d - eps);
      }
    }
  }
}

inline void symm_norm(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, Profile::finite_small);
    NormResult base = norm(p.space, x);
    for (std::size_t j = 0; j < p.permutations; ++j) {
      InjectionSpec sigma = gen_permutation(s * 131 + j, permutation_size(x, 8));
      Sequence y = apply_map(x, sigma);
      rec.check();
      if (y == x) continue;
      NormResult moved = norm(p.space, y);
      if (same_norm(base, moved)) continue;
      if (r.inverted) {
        rec.violation(s, x, "||x_sigma|| != ||x||", shrink_asymmetry(p.space, x));
        break;
      }
      rec.fail(s, x, "||x_sigma|| != ||x||", interval_gap(moved.value, base.value) + interval_gap(base.value, moved.value));
    }
  }
}

inline void thm1_eq(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  const Profile profiles[] = {Profile::finite_small, Profile::finite_small, Profile::blocks, Profile::periodic};
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, profiles[t % 4]);
    Sequence star = decreasing_rearrangement(x);
    Membership mx = membership(p.space, x);
    Membership ms = membership(p.space, star);
    rec.check();
    bool ok = mx.status == ms.status && (mx.status != Membership::Status::member || same_norm(mx.norm, ms.norm));
    if (!ok) {
      if (r.inverted) {
        rec.violation(s, x, "||x|| != ||x*||", listable(x) ? shrink_asymmetry(p.space, x) : 0);
      } else {
        rec.fail(s, x, "membership or norm of x and x* differ");
      }
    }
    bool violated = !ok;
    for (std::size_t j = 0; j < p.permutations && !(r.inverted && violated); ++j) {
      InjectionSpec sigma = gen_permutation(s * 131 + j, permutation_size(x, 8));
      Sequence y = apply_map(x, sigma);
      rec.check();
      if (y == x) continue;
      NormResult moved = norm(p.space, y);
      if (same_norm(moved, mx.norm)) continue;
      violated = true;
      if (r.inverted) {
        rec.violation(s, x, "||x_sigma|| != ||x||", listable(x) ? shrink_asymmetry(p.space, x) : 0);
      } else {
        rec.fail(s, x, "||x_sigma|| != ||x||");
      }
    }
  }
}

inline void close_up(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  using T = InjectionSpec::Type;
  const Profile profiles[] = {Profile::finite_small, Profile::blocks, Profile::periodic, Profile::mixed};
  const bool garling = p.space.variant == SpaceSpec::Variant::garling;
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, profiles[t % 4]);
    NormResult nx = norm(p.space, x);
    NormResult nc = norm(p.space, closing_up(x));
    rec.check();
    if (!same_norm(nx, nc)) {
      if (r.inverted) {
        rec.violation(s, x, "||x'|| != ||x||", support_size(x));
      } else {
        rec.fail(s, x, "||x'|| != ||x||");
      }
    }
    if (r.inverted) continue;
    // Increasing maps keep the Garling norm bounded; symmetric spaces take every injection.
    std::vector<InjectionSpec> maps{InjectionSpec::named(T::shift, BigInt(1 + t % 5)), InjectionSpec::named(T::evens_to_all),
                                    InjectionSpec::named(T::odds_to_all), InjectionSpec::named(T::interleave_with_zeros)};
    if (listable(x) && !garling) maps.push_back(gen_injection(s + 2, permutation_size(x, 8)));
    for (const auto& pi : maps) {
      NormResult np = norm(p.space, apply_map(x, pi));
      rec.check();
      if (!consistent_le(np, nx)) rec.fail(s, x, std::string("||x_pi|| > ||x|| for ") + injection_name(pi.type));
    }
  }
}

inline void inclusions(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  const std::vector<SpaceSpec> spaces{SpaceSpec::lp(Rational(1)), SpaceSpec::lp(Rational(2)), SpaceSpec::lp(Rational(3, 2)),
                                      SpaceSpec::linf(), SpaceSpec::marcinkiewicz(PsiSpec::log_base(Rational(2))),
                                      SpaceSpec::garling()};
  const Profile profiles[] = {Profile::finite_small, Profile::blocks, Profile::periodic, Profile::finite_large};
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, profiles[t % 4]);
    NormResult sup = norm(SpaceSpec::linf(), x);
    NormResult one = norm(SpaceSpec::lp(Rational(1)), x);
    for (const auto& sp : spaces) {
      NormResult v = norm(sp, x);
      rec.check();
      if (!consistent_le(sup, v)) rec.fail(s, x, "||x||_inf > ||x|| in " + sp.id());
      if (!consistent_le(v, one)) rec.fail(s, x, "||x|| > ||x||_1 in " + sp.id());
    }
  }
  // l_1(w) with w_1 = 1/2 violates the normalization: ||e_1|| = 1/2 < 1.
  SpaceSpec w = half_first_weight_space();
  Sequence e1 = Sequence::finite({{BigInt(1), Rational(1)}});
  rec.check();
  if (norm_lt(norm(w, e1), norm(SpaceSpec::linf(), e1))) {
    rec.violation(0, e1, "||e_1||_w = 1/2 < 1 = ||e_1||_inf (expected)", 1);
  } else {
    rec.fail(0, e1, "expected ||e_1||_w < ||e_1||_inf");
  }
}

inline void sandwich(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  const auto doubling = doubling_max(p.psi, p.n);
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, Profile::nonneg);
    Sequence y = gen_sequence(s ^ 0x5bd1e995ULL, Profile::nonneg);
    SandwichReport sw = sandwich_check(p.psi, x, y, p.n, doubling);
    rec.check();
    if (!sw.holds()) {
      Rational worst = std::max(Rational(-sw.left_slack_min), Rational(-sw.right_slack_min));
      rec.fail(s, x, "sandwich violated first at n = " + std::to_string(*sw.first_violation), worst);
    }
  }
}

inline void psi_doubling(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  BigInt n = p.psi.domain_end() ? *p.psi.domain_end() : BigInt(1) << 20;
  PsiReport rep = psi_axiom_report(p.psi, n);
  Sequence none;
  rec.check();
  if (!rep.doubling_trends_to_one) rec.fail(p.seed, none, "doubling ratios are not nonincreasing towards 1");
  rec.check();
  if (!rep.grows) rec.fail(p.seed, none, "Psi stops growing");
  rec.check();
  if (!rep.psi1.positive()) rec.fail(p.seed, none, "Psi(1) <= 0");
  rec.check();
  if (!rep.monotonicity_violation.is_point() || !rep.monotonicity_violation.contains(Rational(0))) {
    rec.fail(p.seed, none, "Psi is not monotone", rep.monotonicity_violation.hi_rational());
  }
  if (!rep.doubling.empty()) {
    Interval last = rep.doubling.back().second - Interval(1L);
    r.max_residual = last.hi_rational();
  }
}

inline void gamma_symm(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, Profile::nonneg);
    GammaEstimate gx = symmetric_functional(p.psi, p.estimator, x);
    GammaEstimate gs = symmetric_functional(p.psi, p.estimator, decreasing_rearrangement(x));
    InjectionSpec sigma = gen_permutation(s * 131, permutation_size(x, 8));
    GammaEstimate gp = symmetric_functional(p.psi, p.estimator, apply_map(x, sigma));
    rec.check();
    bool ok = gx.exact && gs.exact && gp.exact && *gx.exact_value == *gs.exact_value && *gx.exact_value == *gp.exact_value &&
              *gx.exact_value == 0;
    if (!ok) rec.fail(s, x, "gamma(x), gamma(x*), gamma(x_sigma) are not all exactly 0");
  }
  // Inputs with a non-trivial ratio sequence are their own rearrangement.
  std::vector<Sequence> own{oscillating_construct(4, p.psi.is_log() ? p.psi : PsiSpec::natural_log()).sequence(),
                            Sequence::harmonic()};
  for (const auto& x : own) {
    Sequence star = decreasing_rearrangement(x);
    rec.check();
    if (!same_values(star, x)) {
      rec.fail(p.seed, x, "expected x* = x");
      continue;
    }
    GammaEstimate a = symmetric_functional(p.psi, p.estimator, x);
    GammaEstimate b = symmetric_functional(p.psi, p.estimator, star);
    rec.check();
    if (!a.interval.identical(b.interval)) rec.fail(p.seed, x, "gamma(x) and gamma(x*) intervals differ");
  }
}

inline void garling_asym(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  GarlingWitness w = garling_witness(2);
  rec.check();
  if (w.norms_differ) {
    rec.violation(p.seed, Sequence::zero(), "||x^2||_g = 3/2 but ||y^2||_g = sqrt 2", 2);
  }
  SpaceSpec g = SpaceSpec::garling();
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = trial_seed(p.seed, t);
    Sequence x = gen_sequence(s, Profile::finite_small);
    InjectionSpec sigma = gen_permutation(s * 131, permutation_size(x, 8));
    rec.check();
    if (!same_norm(norm(g, x), norm(g, apply_map(x, sigma)))) {
      rec.violation(s, x, "||x_sigma||_g != ||x||_g", shrink_asymmetry(g, x));
    }
  }
}

inline void osc_witness(const SuiteParams& p, VerificationReport& r) {
  Recorder rec(r);
  OscillationWitness w = oscillating_construct(p.stages, p.psi.is_log() ? p.psi : PsiSpec::natural_log(), working_digits());
  OscillationReport v = oscillating_verify(w);
  Sequence x = w.sequence();
  rec.check();
  for (const auto& f : v.failures) rec.fail(p.seed, x, f);
  NormResult m = marcinkiewicz_norm(w.psi, x);
  rec.check();
  if (!certainly_le(m.value, Interval(2L))) rec.fail(p.seed, x, "||x||_m > 2");
  rec.check();
  if (!same_values(decreasing_rearrangement(x), x)) rec.fail(p.seed, x, "x is not its own rearrangement");
}

}  // namespace detail

inline VerificationReport run_suite(const std::string& id, const SuiteParams& p) {
  const auto& ids = suite_catalog();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw InvalidInput("unknown suite id '" + id + "'");
  auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.suite = id;
  r.seed = p.seed;
  r.trials = p.trials;
  const bool spaced = id == "SYMM-NORM" || id == "THM1-EQ" || id == "CLOSE-UP";
  r.target = spaced ? p.space.id() : p.psi.id();
  if (id == "INCLUSIONS") r.target = "all";
  if (spaced) r.inverted = !p.space.claims_symmetric() && !(id == "CLOSE-UP" && p.space.variant == SpaceSpec::Variant::garling);
  if (id == "GARLING-ASYM") {
    r.inverted = true;
    r.target = "garling";
  }
  if (id == "REARR-PROPS") detail::rearr_props(p, r);
  if (id == "SYMM-NORM") detail::symm_norm(p, r);
  if (id == "THM1-EQ") detail::thm1_eq(p, r);
  if (id == "CLOSE-UP") detail::close_up(p, r);
  if (id == "INCLUSIONS") detail::inclusions(p, r);
  if (id == "SANDWICH") detail::sandwich(p, r);
  if (id == "PSI-DOUBLING") detail::psi_doubling(p, r);
  if (id == "GAMMA-SYMM") detail::gamma_symm(p, r);
  if (id == "GARLING-ASYM") detail::garling_asym(p, r);
  if (id == "OSC-WITNESS") detail::osc_witness(p, r);
  if (r.inverted && r.violations.empty()) {
    r.failures.push_back({p.seed, "", "", "no violation exhibited for a space that is not symmetric", 0});
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace seqspace
