#pragma once

// Banach-limit estimators and the symmetric functional gamma on m_Psi.

#include <ostream>
#include <string>
#include <vector>

#include "stream.hpp"

namespace seqspace {

inline constexpr unsigned long kMaxWindow = 100'000'000;
inline constexpr unsigned kMaxStages = 64;
inline constexpr std::size_t kMaxCsvRows = 1'000'000;

struct EstimatorSpec {
  enum class Method { cesaro, iterated_cesaro, dilation_averaged };

  Method method = Method::cesaro;
  /// Averages run over x_{m+1}, ..., x_{m+W}.
  unsigned long window = 10'000;
  BigInt offset{0};
  /// iterated_cesaro: number of averaging passes.
  unsigned depth = 1;
  /// dilation_averaged: averages over D_2^k x for k = 0..stages.
  unsigned stages = 0;

  static EstimatorSpec cesaro(unsigned long w, BigInt m = BigInt(0)) {
    EstimatorSpec e;
    e.window = w;
    e.offset = std::move(m);
    e.validate();
    return e;
  }
  static EstimatorSpec iterated(unsigned d, unsigned long w) {
    EstimatorSpec e;
    e.method = Method::iterated_cesaro;
    e.depth = d;
    e.window = w;
    e.validate();
    return e;
  }
  static EstimatorSpec dilation_averaged(unsigned n, unsigned long w, BigInt m = BigInt(0)) {
    EstimatorSpec e;
    e.method = Method::dilation_averaged;
    e.stages = n;
    e.window = w;
    e.offset = std::move(m);
    e.validate();
    return e;
  }

  void validate() const {
    if (window < 1 || window > kMaxWindow) throw InvalidInput("window must be in [1, 1e8]");
    if (offset < 0) throw InvalidInput("offset must be >= 0");
    if (method == Method::iterated_cesaro && depth < 1) throw InvalidInput("depth must be >= 1");
    if (stages > kMaxStages) throw InvalidInput("at most 64 dilation stages");
  }

  /// The Cesaro estimator the dilation average is built on.
  EstimatorSpec base() const { return cesaro(window, offset); }
};

inline const char* method_name(EstimatorSpec::Method m) {
  switch (m) {
    case EstimatorSpec::Method::cesaro: return "cesaro";
    case EstimatorSpec::Method::iterated_cesaro: return "iterated_cesaro";
    case EstimatorSpec::Method::dilation_averaged: return "dilation_averaged";
  }
  return "?";
}

struct LimitEstimate {
  /// The estimator's own value, enclosed.
  Interval value;
  /// Reported range: windowed averages over the final half window, joined
  /// with the certified tail enclosure when the input converges.
  Interval interval;
  bool exact = false;
  std::optional<Rational> exact_value;
  EstimatorSpec spec;
  std::string note;
  /// dilation_averaged: |phi_n(D_2 x) - phi_n(x)| and its bound 2 sup|x| / (n+1).
  std::optional<Interval> dilation_residual;
  std::optional<Rational> dilation_bound;

  /// A point of `value`, rounded at `digits`.
  Rational point(int digits) const { return exact ? *exact_value : nearest_rational(value, digits); }
};

namespace detail {

inline LimitEstimate forced_estimate(const EstimatorSpec& spec, const Rational& v, std::string note) {
  LimitEstimate e;
  e.value = Interval(v);
  e.interval = e.value;
  e.exact = true;
  e.exact_value = v;
  e.spec = spec;
  e.note = std::move(note);
  return e;
}

inline void check_window(const Stream& x, const BigInt& end) {
  if (x.last && end > *x.last) {
    throw InvalidInput("window ends at " + end.get_str() + " but the sequence is evaluable only to " + x.last->get_str());
  }
}

inline LimitEstimate finish(const EstimatorSpec& spec, const Stream& x, Interval value, Interval range,
                            const BigInt& end, std::string note) {
  LimitEstimate e;
  e.value = std::move(value);
  e.interval = Interval::hull(e.value, range);
  if (x.convergent) {
    if (auto tail = x.beyond(end)) e.interval = Interval::hull(e.interval, *tail);
  }
  e.spec = spec;
  e.note = std::move(note);
  return e;
}

inline LimitEstimate cesaro(const EstimatorSpec& spec, const Stream& x) {
  const unsigned long w = spec.window;
  BigInt end = spec.offset + w;
  check_window(x, end);
  auto g = x.open(spec.offset + 1);
  Interval sum, range;
  bool started = false;
  const unsigned long from = (w + 1) / 2;
  for (unsigned long j = 1; j <= w; ++j) {
    sum += g();
    if (j >= from) {
      Interval avg = sum / Interval(static_cast<long>(j));
      range = started ? Interval::hull(range, avg) : avg;
      started = true;
    }
  }
  Interval value = sum / Interval(static_cast<long>(w));
  return finish(spec, x, value, range, end, "windowed average");
}

inline LimitEstimate iterated_cesaro(const EstimatorSpec& spec, const Stream& x) {
  const unsigned long w = spec.window;
  BigInt end = spec.offset + w;
  check_window(x, end);
  auto g = x.open(spec.offset + 1);
  std::vector<Interval> sums(spec.depth);
  Interval level, range;
  bool started = false;
  const unsigned long from = (w + 1) / 2;
  for (unsigned long j = 1; j <= w; ++j) {
    level = g();
    Interval jj(static_cast<long>(j));
    for (auto& s : sums) {
      s += level;
      level = s / jj;
    }
    if (j >= from) {
      range = started ? Interval::hull(range, level) : level;
      started = true;
    }
  }
  return finish(spec, x, level, range, end, "iterated windowed average");
}

}  // namespace detail

inline LimitEstimate estimate_limit(const EstimatorSpec& spec, const Stream& x);

/// phi_n = (1/(n+1)) sum_{k=0..n} phi(D_2^k x) with phi the Cesaro estimator.
inline LimitEstimate dilation_averaged_estimate(const EstimatorSpec& spec, const Stream& x) {
  const unsigned n = spec.stages;
  EstimatorSpec base = spec.base();
  std::vector<LimitEstimate> parts;
  for (unsigned k = 0; k <= n + 1; ++k) parts.push_back(estimate_limit(base, dilated(x, k)));
  Interval count(static_cast<long>(n + 1));
  Interval value, range;
  bool exact = true;
  Rational exact_sum = 0;
  for (unsigned k = 0; k <= n; ++k) {
    value += parts[k].value;
    range += parts[k].interval;
    exact = exact && parts[k].exact;
    if (parts[k].exact) exact_sum += *parts[k].exact_value;
  }
  LimitEstimate e;
  if (exact) {
    e = detail::forced_estimate(spec, exact_sum / Rational(static_cast<long>(n + 1)), "forced value at every stage");
  } else {
    e.value = value / count;
    e.interval = Interval::hull(e.value, range / count);
    e.spec = spec;
    e.note = "average over D_2^k, k = 0.." + std::to_string(n);
  }
  // phi_n(D_2 x) - phi_n(x) telescopes to (phi(D_2^{n+1} x) - phi(x)) / (n+1).
  e.dilation_residual = abs((parts[n + 1].value - parts[0].value) / count);
  if (x.sup_bound) e.dilation_bound = Rational(2) * *x.sup_bound / Rational(static_cast<long>(n + 1));
  return e;
}

inline LimitEstimate estimate_limit(const EstimatorSpec& spec, const Stream& x) {
  spec.validate();
  if (spec.method == EstimatorSpec::Method::dilation_averaged) return dilation_averaged_estimate(spec, x);
  if (x.forced) return detail::forced_estimate(spec, *x.forced, "value forced by shift invariance");
  if (spec.method == EstimatorSpec::Method::iterated_cesaro) return detail::iterated_cesaro(spec, x);
  return detail::cesaro(spec, x);
}

inline LimitEstimate estimate_limit(const EstimatorSpec& spec, const Sequence& x) {
  return estimate_limit(spec, to_stream(x));
}

// ---------------------------------------------------------------------------
// Axiom residuals

struct AxiomReport {
  LimitEstimate estimate;
  /// |est(Sx) - est(x)|
  Interval shift_residual;
  bool positivity_applies = false;
  bool positivity_holds = true;
  /// |est(x)| <= sup |x|
  bool norm_bound_holds = true;
  /// |est(x) - lim x| when the limit is known exactly.
  std::optional<Interval> agreement_residual;
  /// |est(a x) - a est(x)| for the supplied convergent a.
  std::optional<Interval> product_residual;
  std::optional<Rational> product_limit;
};

struct ConvergentFactor {
  Stream terms;
  Rational limit;
};

/// a_n = 1 + 1/n.
inline ConvergentFactor one_plus_reciprocal() {
  Stream a = from_function([](const BigInt& n) { return Interval(Rational(n + 1, n)); }, std::nullopt, Rational(2));
  a.convergent = true;
  a.beyond = [](const BigInt& n0) -> std::optional<Interval> {
    return Interval::hull(Interval(1L), Interval(Rational(n0 + 2, n0 + 1)));
  };
  return {std::move(a), Rational(1)};
}

inline AxiomReport axiom_residuals(const EstimatorSpec& spec, const Stream& x,
                                   const std::optional<ConvergentFactor>& a = std::nullopt) {
  AxiomReport r;
  r.estimate = estimate_limit(spec, x);
  LimitEstimate sx = estimate_limit(spec, shifted(x, BigInt(1)));
  r.shift_residual = abs(sx.value - r.estimate.value);
  if (auto b = x.beyond(BigInt(0))) {
    r.positivity_applies = b->nonnegative();
    if (r.positivity_applies) r.positivity_holds = r.estimate.value.nonnegative();
  }
  if (x.sup_bound) r.norm_bound_holds = certainly_le(abs(r.estimate.value), Interval(*x.sup_bound));
  if (x.forced && x.convergent) r.agreement_residual = abs(r.estimate.value - Interval(*x.forced));
  if (a) {
    LimitEstimate ax = estimate_limit(spec, product(a->terms, x));
    r.product_residual = abs(ax.value - Interval(a->limit) * r.estimate.value);
    r.product_limit = a->limit;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Ratio sequences and the symmetric functional

/// (s_n(x) / Psi(n))_{n <= N}
inline std::vector<Interval> ratio_sequence(const PsiSpec& psi, const Sequence& x, std::size_t n) {
  Stream s = ratio_stream(psi, x);
  detail::check_window(s, BigInt(static_cast<unsigned long>(n)));
  std::vector<Interval> out;
  out.reserve(n);
  if (n == 0) return out;
  auto g = s.open(BigInt(1));
  for (std::size_t i = 0; i < n; ++i) out.push_back(g());
  return out;
}

/// CSV rows n,s_n,Psi(n),ratio; at most 1e6 rows, then a truncation marker.
inline void write_ratio_csv(std::ostream& out, const PsiSpec& psi, const Sequence& x, std::size_t n, int digits) {
  out << "n,s_n,psi_n,ratio\n";
  std::size_t rows = std::min(n, kMaxCsvRows);
  psi.check_range(BigInt(static_cast<unsigned long>(rows)));
  auto ratios = ratio_sequence(psi, x, rows);
  Interval partial;
  Sequence star = x.is_catalog() ? Sequence() : decreasing_rearrangement(x);
  Cursor c(star);
  Harmonic h = x.is_catalog() ? x.harmonic_params() : Harmonic{};
  Rational exact_partial = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt idx(static_cast<unsigned long>(i + 1));
    std::string s;
    if (x.is_catalog()) {
      partial += Interval(Rational(abs(h.scale))) * detail::reciprocal(h.offset + idx);
      s = partial.mid_string(digits);
    } else {
      exact_partial += c.next();
      s = format_rational(exact_partial);
    }
    out << idx.get_str() << ',' << s << ',' << psi(idx).mid_string(digits) << ',' << ratios[i].mid_string(digits) << '\n';
  }
  if (rows < n) out << "# truncated at " << rows << " of " << n << " rows\n";
}

struct GammaEstimate {
  LimitEstimate positive;
  LimitEstimate negative;
  Interval value;
  Interval interval;
  bool exact = false;
  std::optional<Rational> exact_value;
};

/// gamma(x) = phi(x+) - phi(x-) with phi(y) = L((s_n(y) / Psi(n))_n).
inline GammaEstimate symmetric_functional(const PsiSpec& psi, const EstimatorSpec& spec, const Sequence& x) {
  Sequence parts[2] = {pos_part(x), neg_part(x)};
  for (const auto& p : parts) {
    Membership m = membership(SpaceSpec::marcinkiewicz(psi), p);
    if (m.status != Membership::Status::member) {
      throw NonMemberError("gamma needs x+ and x- in m_Psi (" + std::string(status_name(m.status)) + ": " +
                           m.certificate + ")");
    }
  }
  GammaEstimate g;
  g.positive = estimate_limit(spec, ratio_stream(psi, parts[0]));
  g.negative = estimate_limit(spec, ratio_stream(psi, parts[1]));
  g.value = g.positive.value - g.negative.value;
  g.interval = g.positive.interval - g.negative.interval;
  g.exact = g.positive.exact && g.negative.exact;
  if (g.exact) g.exact_value = *g.positive.exact_value - *g.negative.exact_value;
  return g;
}

// ---------------------------------------------------------------------------
// s_n(x+y) <= s_n(x) + s_n(y) <= s_2n(x+y)

struct SandwichReport {
  std::size_t n_checked = 0;
  std::size_t left_violations = 0;
  std::size_t right_violations = 0;
  std::optional<std::size_t> first_violation;
  /// min and max over n of s_n(x) + s_n(y) - s_n(x+y).
  Rational left_slack_min, left_slack_max;
  /// min and max over n of s_2n(x+y) - s_n(x) - s_n(y).
  Rational right_slack_min, right_slack_max;
  /// max over n <= N of Psi(2n) / Psi(n).
  Interval doubling_max;

  bool holds() const { return left_violations == 0 && right_violations == 0; }
};

/// max over n <= N of Psi(2n) / Psi(n); nullopt when a table Psi stops short of 2N.
inline std::optional<Interval> doubling_max(const PsiSpec& psi, std::size_t n) {
  if (psi.domain_end() && *psi.domain_end() < 2 * n) return std::nullopt;
  Interval out;
  for (std::size_t i = 1; i <= n; ++i) {
    BigInt k(static_cast<unsigned long>(i));
    Interval q = psi(BigInt(2 * k)) / psi(k);
    out = i == 1 ? q : max(out, q);
  }
  return out;
}

/// `doubling` is doubling_max(psi, n) when the caller already has it.
inline SandwichReport sandwich_check(const PsiSpec& psi, const Sequence& x, const Sequence& y, std::size_t n,
                                     std::optional<Interval> doubling = std::nullopt) {
  if (n < 1) throw InvalidInput("sandwich check needs N >= 1");
  if (!neg_part(x).is_zero() || !neg_part(y).is_zero()) throw InvalidInput("sandwich check needs nonnegative x and y");
  auto sx = partial_sums(x, n);
  auto sy = partial_sums(y, n);
  auto sxy = partial_sums(add(x, y), 2 * n);
  SandwichReport r;
  r.n_checked = n;
  for (std::size_t i = 0; i < n; ++i) {
    Rational mid = sx[i] + sy[i];
    Rational left = mid - sxy[i];
    Rational right = sxy[2 * i + 1] - mid;
    if (i == 0) {
      r.left_slack_min = r.left_slack_max = left;
      r.right_slack_min = r.right_slack_max = right;
    }
    r.left_slack_min = std::min(r.left_slack_min, left);
    r.left_slack_max = std::max(r.left_slack_max, left);
    r.right_slack_min = std::min(r.right_slack_min, right);
    r.right_slack_max = std::max(r.right_slack_max, right);
    if (left < 0) ++r.left_violations;
    if (right < 0) ++r.right_violations;
    if ((left < 0 || right < 0) && !r.first_violation) r.first_violation = i + 1;
  }
  if (!doubling) doubling = doubling_max(psi, n);
  if (doubling) r.doubling_max = *doubling;
  return r;
}

}  // namespace seqspace
