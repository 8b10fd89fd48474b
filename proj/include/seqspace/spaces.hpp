#pragma once

// Norms of the sequence spaces: l_p, l_inf, weighted l_1, Marcinkiewicz
// m_Psi and the Garling space g.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "operators.hpp"
#include "psi.hpp"
#include "special.hpp"

namespace seqspace {

struct SpaceSpec {
  enum class Variant { lp, linf, wl1, marcinkiewicz, garling };

  Variant variant = Variant::linf;
  Rational p{1};
  Sequence weights;
  PsiSpec psi;

  static SpaceSpec lp(Rational p) {
    if (p < 1) throw InvalidInput("l_p needs p >= 1");
    SpaceSpec s;
    s.variant = Variant::lp;
    s.p = std::move(p);
    return s;
  }
  static SpaceSpec linf() { return SpaceSpec{}; }
  static SpaceSpec weighted_l1(Sequence w) {
    check_weights(w);
    SpaceSpec s;
    s.variant = Variant::wl1;
    s.weights = std::move(w);
    return s;
  }
  static SpaceSpec marcinkiewicz(PsiSpec psi) {
    SpaceSpec s;
    s.variant = Variant::marcinkiewicz;
    s.psi = std::move(psi);
    return s;
  }
  static SpaceSpec garling() {
    SpaceSpec s;
    s.variant = Variant::garling;
    return s;
  }

  bool claims_symmetric() const { return variant != Variant::wl1 && variant != Variant::garling; }

  std::string id() const {
    switch (variant) {
      case Variant::lp: return "lp:" + format_rational(p);
      case Variant::linf: return "linf";
      case Variant::wl1: return "wl1";
      case Variant::marcinkiewicz: return "marcinkiewicz:" + psi.id();
      case Variant::garling: return "garling";
    }
    return "?";
  }

  static void check_weights(const Sequence& w) {
    if (w.is_catalog()) {
      if (w.harmonic_params().scale <= 0) throw InvalidInput("weights must be positive");
      return;
    }
    for (const auto& r : w.runs().head) {
      for (const auto& v : r.pattern) {
        if (v <= 0) throw InvalidInput("weights must be positive");
      }
    }
    for (const auto& v : w.runs().cycle) {
      if (v <= 0) throw InvalidInput("weights must be positive");
    }
  }
};

struct NormResult {
  std::string space;
  Interval value;
  bool exact = false;
  bool divergent = false;
  std::string certificate;

  /// Exact value when `exact`.
  std::optional<Rational> exact_value;

  static NormResult of_rational(std::string space, const Rational& v, std::string why) {
    NormResult r;
    r.space = std::move(space);
    r.value = Interval(v);
    r.exact = true;
    r.exact_value = v;
    r.certificate = std::move(why);
    return r;
  }
  static NormResult of_interval(std::string space, Interval v, std::string why) {
    NormResult r;
    r.space = std::move(space);
    r.value = std::move(v);
    r.certificate = std::move(why);
    return r;
  }
  static NormResult diverges(std::string space, std::string why) {
    NormResult r;
    r.space = std::move(space);
    r.value = Interval::positive_infinity();
    r.divergent = true;
    r.certificate = std::move(why);
    return r;
  }

  bool finite() const { return !divergent && !value.hi_infinite(); }
};

/// Same divergence, same exact value, or bit-identical intervals.
inline bool same_norm(const NormResult& a, const NormResult& b) {
  if (a.divergent || b.divergent) return a.divergent && b.divergent;
  if (a.exact && b.exact) return *a.exact_value == *b.exact_value;
  if (a.exact != b.exact) return false;
  return a.value.identical(b.value);
}

/// a <= b certified (exact comparison when both are exact).
inline bool norm_le(const NormResult& a, const NormResult& b) {
  if (b.divergent) return true;
  if (a.divergent) return false;
  if (a.exact && b.exact) return *a.exact_value <= *b.exact_value;
  return certainly_le(a.value, b.value);
}

/// a < b certified.
inline bool norm_lt(const NormResult& a, const NormResult& b) {
  if (a.divergent) return false;
  if (b.divergent) return true;
  if (a.exact && b.exact) return *a.exact_value < *b.exact_value;
  return certainly_lt(a.value, b.value);
}

namespace detail {

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact k-th root of a nonnegative rational, when it has one.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  BigInt num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  return Rational(num, den);
}

/// Sum of all terms of a finite-support sequence.
inline Rational finite_total(const Sequence& x) {
  Rational s = 0;
  for (const auto& r : x.runs().head) {
    Rational period = 0;
    for (const auto& v : r.pattern) period += v;
    s += period * Rational(r.repeat);
  }
  return s;
}

inline NormResult lp_norm(const std::string& id, const Rational& p, const Sequence& x) {
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    if (p == 1) return NormResult::diverges(id, "harmonic series diverges");
    // sum_{n>=1} (n+k)^-p: first M terms, then integral bounds on the rest.
    const unsigned long m = 1000;
    Interval pi(p);
    Interval sum;
    for (unsigned long n = m; n >= 1; --n) sum += pow(detail::reciprocal(h.offset + n), pi);
    Interval pm1(Rational(p - 1));
    Interval tail_lo = pow(Interval(BigInt(h.offset + m + 1)), pm1);
    Interval tail_hi = pow(Interval(BigInt(h.offset + m)), pm1);
    Interval tail = Interval::hull(Interval(1L) / (pm1 * tail_lo), Interval(1L) / (pm1 * tail_hi));
    Interval total = pow(sum + tail, Interval(Rational(1 / p))) * Interval(Rational(abs(h.scale)));
    return NormResult::of_interval(id, total, "first 1000 terms plus integral tail bounds");
  }
  RearrangedBlocks rb = rearranged_blocks(x);
  if (rb.tail != 0) return NormResult::diverges(id, "infinitely many terms of modulus " + format_rational(rb.tail));
  if (is_integer(p)) {
    const unsigned long k = p.get_num().get_ui();
    Rational s = 0;
    for (const auto& [v, c] : rb.blocks) {
      Rational t;
      mpz_pow_ui(t.get_num_mpz_t(), v.get_num_mpz_t(), k);
      mpz_pow_ui(t.get_den_mpz_t(), v.get_den_mpz_t(), k);
      s += t * Rational(c);
    }
    if (k == 1) return NormResult::of_rational(id, s, "finite sum");
    if (auto root = exact_root(s, k)) return NormResult::of_rational(id, *root, "finite sum, exact root");
    return NormResult::of_interval(id, pow(Interval(s), Interval(Rational(1, k))), "finite sum, rounded root");
  }
  Interval pi(p);
  Interval s;
  for (const auto& [v, c] : rb.blocks) s += pow(Interval(v), pi) * Interval(c);
  if (rb.blocks.empty()) return NormResult::of_rational(id, Rational(0), "zero sequence");
  return NormResult::of_interval(id, pow(s, Interval(Rational(1 / p))), "finite sum, rounded powers");
}

}  // namespace detail

/// l_p, l_inf and weighted l_1 norms.
inline NormResult elementary_norm(const SpaceSpec& space, const Sequence& x) {
  const std::string id = space.id();
  switch (space.variant) {
    case SpaceSpec::Variant::linf:
      return NormResult::of_rational(id, x.sup_abs(), "supremum attained");
    case SpaceSpec::Variant::lp:
      return detail::lp_norm(id, space.p, x);
    case SpaceSpec::Variant::wl1: {
      Sequence y = multiply(abs(x), space.weights);
      if (y.is_catalog()) return NormResult::diverges(id, "weighted harmonic series diverges");
      if (!y.finite_support()) return NormResult::diverges(id, "infinitely many weighted terms bounded below");
      return NormResult::of_rational(id, detail::finite_total(y), "finite weighted sum");
    }
    default:
      throw InvalidInput("elementary_norm handles lp, linf and wl1 only");
  }
}

// ---------------------------------------------------------------------------
// Marcinkiewicz norm sup_n s_n(x) / Psi(n)

namespace detail {

struct Candidate {
  Interval value;
  std::optional<Rational> exact;
};

inline Candidate ratio_candidate(const PsiSpec& psi, const BigInt& n, const Rational& s) {
  if (auto q = psi.exact(n)) return {Interval(s / *q), s / *q};
  return {Interval(s) / psi(n), std::nullopt};
}

/// Largest candidate; exact when the winner is exact and certainly on top.
inline Candidate best_candidate(const std::vector<Candidate>& cs) {
  bool all_exact = true;
  for (const auto& c : cs) all_exact = all_exact && c.exact.has_value();
  if (all_exact) {
    Rational best = *cs.front().exact;
    for (const auto& c : cs) best = std::max(best, *c.exact);
    return {Interval(best), best};
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    if (mpfr_greater_p(cs[i].value.hi(), cs[top].value.hi())) top = i;
  }
  if (cs[top].exact) {
    bool dominates = true;
    for (std::size_t i = 0; i < cs.size() && dominates; ++i) {
      if (i == top) continue;
      if (cs[i].exact ? *cs[i].exact > *cs[top].exact : !certainly_le(cs[i].value, cs[top].value)) dominates = false;
    }
    if (dominates) return cs[top];
  }
  Interval m = cs.front().value;
  for (const auto& c : cs) m = max(m, c.value);
  return {m, std::nullopt};
}

inline constexpr unsigned long kHarmonicScan = 2000;

inline NormResult marcinkiewicz_harmonic(const std::string& id, const PsiSpec& psi, const Harmonic& h) {
  if (!psi.is_log()) throw InvalidInput("a Psi table cannot bound the harmonic tail");
  Interval s(Rational(abs(h.scale)));
  Interval partial;
  Interval best;
  for (unsigned long n = 1; n <= kHarmonicScan; ++n) {
    partial += detail::reciprocal(h.offset + n);
    best = max(best, partial / psi(BigInt(n)));
  }
  // Past the scan: H_n <= ln(n+1) + gamma when k = 0, and
  // H_{n+k} - H_k <= ln(1 + n/k) <= ln(n+1) when k >= 1.
  Interval log_b = psi.natural() ? Interval(1L) : log(Interval(*psi.base));
  Interval factor(1L);
  if (h.offset == 0) factor = factor + Interval::euler_gamma() / log(Interval(BigInt(kHarmonicScan + 2)));
  Interval tail = log_b * factor;
  Interval value = Interval::hull(best, max(best, tail));
  return NormResult::of_interval(id, value * s, "scan to n=2000 plus harmonic tail bound");
}

}  // namespace detail

inline NormResult marcinkiewicz_norm(const PsiSpec& psi, const Sequence& x) {
  const std::string id = SpaceSpec::marcinkiewicz(psi).id();
  if (x.is_catalog()) return detail::marcinkiewicz_harmonic(id, psi, x.harmonic_params());
  RearrangedBlocks rb = rearranged_blocks(x);
  if (rb.tail != 0) {
    return NormResult::diverges(id, "s_n >= " + format_rational(rb.tail) + " n while Psi(n)/n -> 0");
  }
  if (rb.blocks.empty()) return NormResult::of_rational(id, Rational(0), "zero sequence");
  std::vector<detail::Candidate> cs;
  BigInt start = 1;
  Rational before = 0;
  for (const auto& [v, c] : rb.blocks) {
    BigInt end = start + c - 1;
    if (psi.is_log()) {
      // s_n / Psi(n) is quasi-convex along a constant block: endpoints suffice.
      cs.push_back(detail::ratio_candidate(psi, start, before + v));
      if (end != start) cs.push_back(detail::ratio_candidate(psi, end, before + v * Rational(c)));
    } else {
      psi.check_range(end);
      for (BigInt n = start; n <= end; ++n) cs.push_back(detail::ratio_candidate(psi, n, before + v * Rational(n - start + 1)));
    }
    before += v * Rational(c);
    start = end + 1;
  }
  auto best = detail::best_candidate(cs);
  if (best.exact) return NormResult::of_rational(id, *best.exact, "maximum over block endpoints");
  return NormResult::of_interval(id, best.value, "maximum over block endpoints");
}

// ---------------------------------------------------------------------------
// Garling norm sup over increasing phi of sum |x_phi(n)| / sqrt(n)

struct GarlingResult {
  Interval value;
  /// The dynamic program's own enclosure, before any closed form.
  Interval enclosure;
  std::optional<Rational> exact;
  /// Zero-based item indices of a maximizing selection (by midpoints).
  std::vector<std::size_t> selection;
};

namespace detail {

inline Interval sqrt_of(const Rational& q) {
  if (auto r = exact_root(q, 2)) return Interval(*r);
  return sqrt(Interval(q));
}

}  // namespace detail

/// Value of one selection: sum_k v_{sel[k]} / sqrt(k+1), summed in slot order.
/// Items are given by their squares.
inline Interval garling_selection_value(const std::vector<Rational>& squares, const std::vector<std::size_t>& sel) {
  Interval s;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    s += detail::sqrt_of(squares[sel[k]] / Rational(static_cast<long>(k + 1)));
  }
  return s;
}

/// Dynamic program over items v_i = sqrt(squares[i]) in index order:
/// best(i, j) = max(best(i+1, j), v_i / sqrt(j) + best(i+1, j+1)).
inline GarlingResult garling_dp(const std::vector<Rational>& squares) {
  const std::size_t m = squares.size();
  GarlingResult out;
  if (m == 0) {
    out.exact = Rational(0);
    return out;
  }
  for (const auto& w : squares) {
    if (w < 0) throw InvalidInput("Garling items are given by nonnegative squares");
  }
  std::vector<Interval> v(m), inv_sqrt(m + 2);
  for (std::size_t i = 0; i < m; ++i) v[i] = detail::sqrt_of(squares[i]);
  for (std::size_t j = 1; j <= m; ++j) inv_sqrt[j] = detail::sqrt_of(Rational(1, static_cast<unsigned long>(j)));

  const mpfr_prec_t prec = bits_for_digits(working_digits());
  std::vector<detail::Real> lo, hi;
  lo.reserve(m + 2);
  hi.reserve(m + 2);
  for (std::size_t j = 0; j < m + 2; ++j) {
    lo.emplace_back(prec);
    hi.emplace_back(prec);
  }
  detail::Real tlo(prec), thi(prec), dlo(prec), dhi(prec);
  // take[i] has one flag per slot j = 1..i+1.
  std::vector<std::vector<bool>> take(m);
  for (std::size_t i = m; i-- > 0;) {
    take[i].assign(i + 2, false);
    for (std::size_t j = 1; j <= i + 1; ++j) {
      mpfr_mul(tlo.get(), v[i].lo(), inv_sqrt[j].lo(), MPFR_RNDD);
      mpfr_add(tlo.get(), tlo.get(), lo[j + 1].get(), MPFR_RNDD);
      mpfr_mul(thi.get(), v[i].hi(), inv_sqrt[j].hi(), MPFR_RNDU);
      mpfr_add(thi.get(), thi.get(), hi[j + 1].get(), MPFR_RNDU);
      // Decide by midpoints; the enclosure below is the max either way.
      mpfr_sub(dlo.get(), tlo.get(), lo[j].get(), MPFR_RNDN);
      mpfr_sub(dhi.get(), thi.get(), hi[j].get(), MPFR_RNDN);
      mpfr_add(dlo.get(), dlo.get(), dhi.get(), MPFR_RNDN);
      take[i][j] = mpfr_sgn(dlo.get()) > 0;
      mpfr_max(lo[j].get(), lo[j].get(), tlo.get(), MPFR_RNDD);
      mpfr_max(hi[j].get(), hi[j].get(), thi.get(), MPFR_RNDU);
    }
  }
  mpfr_set(out.value.lo_mut(), lo[1].get(), MPFR_RNDD);
  mpfr_set(out.value.hi_mut(), hi[1].get(), MPFR_RNDU);
  out.enclosure = out.value;
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (j <= i + 1 && take[i][j]) {
      out.selection.push_back(i);
      ++j;
    }
  }
  // Nonincreasing items: v_{s_k} <= v_k for any selection, so the identity is
  // optimal and the value is sum_k sqrt(w_k / k).
  bool nonincreasing = std::is_sorted(squares.begin(), squares.end(), std::greater<>());
  if (nonincreasing) {
    Rational exact = 0;
    bool rational = true;
    for (std::size_t k = 0; k < m && rational; ++k) {
      auto r = detail::exact_root(squares[k] / Rational(static_cast<long>(k + 1)), 2);
      if (r) {
        exact += *r;
      } else {
        rational = false;
      }
    }
    if (rational) {
      if (!out.value.contains(exact)) throw PrecisionError("Garling DP enclosure misses the closed form");
      out.exact = exact;
      out.value = Interval(exact);
    }
  }
  return out;
}

/// Exhaustive maximum over all nonempty increasing selections (m <= 20).
inline GarlingResult garling_enumerate(const std::vector<Rational>& squares) {
  const std::size_t m = squares.size();
  if (m > 20) throw InvalidInput("exhaustive Garling enumeration is limited to 20 items");
  GarlingResult out;
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1UL) sel.push_back(i);
    }
    Interval v = garling_selection_value(squares, sel);
    if (out.selection.empty() || v.mid_double() > out.value.mid_double()) {
      out.value = v;
      out.selection = sel;
    }
  }
  return out;
}

inline constexpr std::size_t kGarlingItems = 2500;
inline constexpr std::size_t kGarlingTruncation = 2000;

namespace detail {

/// sum_{k=a}^{b} 1/sqrt(k) <= 2 (sqrt(b) - sqrt(a-1)).
inline Interval inv_sqrt_block_bound(const BigInt& a, const BigInt& b) {
  Interval r = sqrt(Interval(b)) - sqrt(Interval(BigInt(a - 1)));
  return Interval(2L) * Interval::hull(Interval{}, r);
}

/// First `limit` nonzero entries of a finite-support sequence, in order.
inline std::vector<Rational> leading_nonzero(const Sequence& x, std::size_t limit, bool& complete) {
  std::vector<Rational> out;
  complete = true;
  for (const auto& r : x.runs().head) {
    bool any = false;
    for (const auto& v : r.pattern) any = any || v != 0;
    if (!any) continue;
    BigInt reps = r.repeat;
    for (BigInt k = 0; k < reps; ++k) {
      for (const auto& v : r.pattern) {
        if (v == 0) continue;
        if (out.size() == limit) {
          complete = false;
          return out;
        }
        out.push_back(abs(v));
      }
    }
  }
  return out;
}

}  // namespace detail

inline NormResult garling_norm(const Sequence& x) {
  const std::string id = "garling";
  auto squares_of = [](const std::vector<Rational>& vals) {
    std::vector<Rational> w;
    w.reserve(vals.size());
    for (const auto& v : vals) w.push_back(v * v);
    return w;
  };
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    std::vector<Rational> vals;
    for (unsigned long n = 1; n <= kGarlingTruncation; ++n) vals.push_back(abs(h.scale) / Rational(h.offset + n));
    GarlingResult head = garling_dp(squares_of(vals));
    // Later items c/(M+k+j), j >= 1, take slots >= j:
    // sum_j 1/((c0 + j) sqrt(j)) <= integral_0^inf dt/((c0+t) sqrt t) = pi/sqrt(c0).
    Interval tail = Interval(Rational(abs(h.scale))) * Interval::pi() /
                    sqrt(Interval(BigInt(h.offset + kGarlingTruncation)));
    Interval value = Interval::hull(head.value, head.value + tail);
    return NormResult::of_interval(id, value, "truncation at 2000 items plus tail bound |s| pi / sqrt(2000 + k)");
  }
  if (!x.finite_support()) {
    return NormResult::diverges(id, "infinitely many terms of modulus >= " + format_rational(rearranged_blocks(x).tail) +
                                        "; the identity selection diverges");
  }
  bool complete = false;
  auto vals = detail::leading_nonzero(x, kGarlingItems, complete);
  if (complete) {
    GarlingResult g = garling_dp(squares_of(vals));
    if (g.exact) return NormResult::of_rational(id, *g.exact, "dynamic program; nonincreasing items, identity optimal");
    return NormResult::of_interval(id, g.value, "dynamic program over the nonzero entries");
  }
  vals.resize(kGarlingTruncation);
  GarlingResult head = garling_dp(squares_of(vals));
  // Any selection splits into its part among the first M items and the rest;
  // the rest is bounded by the rearranged remainder against slots 1, 2, ...
  RearrangedBlocks rb = rearranged_blocks(x);
  std::map<Rational, BigInt, std::greater<>> rest;
  for (const auto& [v, c] : rb.blocks) rest[v] = c;
  for (const auto& v : vals) rest[v] -= 1;
  Interval tail;
  BigInt pos = 1;
  for (const auto& [v, c] : rest) {
    if (c <= 0) continue;
    tail += Interval(v) * detail::inv_sqrt_block_bound(pos, pos + c - 1);
    pos += c;
  }
  Interval value = Interval::hull(head.value, head.value + tail);
  return NormResult::of_interval(id, value, "truncation at 2000 nonzero items plus rearranged tail bound");
}

/// Garling norm of the finite sequence (sqrt w_1, sqrt w_2, ...), for items
/// that are square roots of rationals.
inline NormResult garling_norm_of_squares(const std::vector<Rational>& squares) {
  GarlingResult g = garling_dp(squares);
  if (g.exact) return NormResult::of_rational("garling", *g.exact, "dynamic program; nonincreasing items, identity optimal");
  return NormResult::of_interval("garling", g.value, "dynamic program over items given by their squares");
}

/// Norm of x in any supported space.
inline NormResult norm(const SpaceSpec& space, const Sequence& x) {
  switch (space.variant) {
    case SpaceSpec::Variant::marcinkiewicz: return marcinkiewicz_norm(space.psi, x);
    case SpaceSpec::Variant::garling: return garling_norm(x);
    default: return elementary_norm(space, x);
  }
}

struct Membership {
  enum class Status { member, non_member, unknown };
  Status status = Status::unknown;
  NormResult norm;
  std::string certificate;
};

inline const char* status_name(Membership::Status s) {
  switch (s) {
    case Membership::Status::member: return "member";
    case Membership::Status::non_member: return "non_member";
    case Membership::Status::unknown: return "unknown";
  }
  return "?";
}

inline Membership membership(const SpaceSpec& space, const Sequence& x) {
  Membership m;
  try {
    m.norm = norm(space, x);
  } catch (const Error& e) {
    m.norm = NormResult::of_interval(space.id(), Interval::at_least(Interval{}), e.what());
    m.certificate = e.what();
    return m;
  }
  m.certificate = m.norm.certificate;
  if (m.norm.divergent) {
    m.status = Membership::Status::non_member;
  } else if (m.norm.finite()) {
    m.status = Membership::Status::member;
  }
  return m;
}

}  // namespace seqspace
