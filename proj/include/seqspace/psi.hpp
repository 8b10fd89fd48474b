#pragma once

// The functions Psi that define Marcinkiewicz spaces.

#include <optional>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace seqspace {

struct PsiSpec {
  enum class Family { log_base, table };

  Family family = Family::log_base;
  /// log_base: Psi(n) = log_b(n + 1). Empty base means b = e.
  std::optional<Rational> base = Rational(2);
  /// table: Psi(n) = values[n - 1].
  std::vector<Rational> values;

  static PsiSpec log_base(Rational b) {
    if (b <= 1) throw InvalidInput("log base must exceed 1");
    PsiSpec s;
    s.base = std::move(b);
    return s;
  }
  static PsiSpec natural_log() {
    PsiSpec s;
    s.base.reset();
    return s;
  }
  static PsiSpec table(std::vector<Rational> v) {
    if (v.empty()) throw InvalidInput("Psi table is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] <= 0) throw InvalidInput("Psi table values must be positive");
      if (i > 0 && v[i] < v[i - 1]) throw InvalidInput("Psi table must be nondecreasing");
    }
    PsiSpec s;
    s.family = Family::table;
    s.base.reset();
    s.values = std::move(v);
    return s;
  }

  bool is_log() const { return family == Family::log_base; }
  bool natural() const { return is_log() && !base; }

  /// Largest n with Psi(n) defined; nullopt when unbounded.
  std::optional<BigInt> domain_end() const {
    if (is_log()) return std::nullopt;
    return BigInt(static_cast<unsigned long>(values.size()));
  }

  /// Psi(n) as an exact rational, when it is one.
  std::optional<Rational> exact(const BigInt& n) const {
    if (n < 1) throw InvalidInput("Psi is defined for n >= 1");
    if (!is_log()) {
      check_range(n);
      return values[n.get_ui() - 1];
    }
    if (!base || base->get_den() != 1) return std::nullopt;
    unsigned long k = 0;
    if (exact_integer_log(n + 1, base->get_num(), k)) return Rational(static_cast<long>(k));
    return std::nullopt;
  }

  Interval operator()(const BigInt& n) const {
    if (auto q = exact(n)) return Interval(*q);
    Interval l = log(Interval(BigInt(n + 1)));
    if (natural()) return l;
    return l / log(Interval(*base));
  }

  std::string id() const {
    if (!is_log()) return "table:" + std::to_string(values.size());
    return natural() ? "log:e" : "log:" + format_rational(*base);
  }

  void check_range(const BigInt& n) const {
    if (!is_log() && n > values.size()) {
      throw InvalidInput("Psi table has " + std::to_string(values.size()) + " values but Psi(" + n.get_str() +
                         ") is needed");
    }
  }
};

inline bool operator==(const PsiSpec& a, const PsiSpec& b) {
  return a.family == b.family && a.base == b.base && a.values == b.values;
}

struct PsiReport {
  PsiSpec psi;
  BigInt n_max;
  Interval psi1;
  bool psi1_is_one = false;
  /// max over n < N of Psi(n) - Psi(n+1), floored at 0.
  Interval monotonicity_violation;
  /// (n, Psi(n)/n) at n = 1, 2, 4, ... <= N.
  std::vector<std::pair<BigInt, Interval>> decay;
  /// (n, Psi(2n)/Psi(n)) at n = 1, 2, 4, ... with 2n <= N.
  std::vector<std::pair<BigInt, Interval>> doubling;
  /// Doubling ratios nonincreasing and every one >= 1.
  bool doubling_trends_to_one = false;
  /// Psi(N) > Psi(N/2); false flags a table that has stopped growing.
  bool grows = false;
};

inline PsiReport psi_axiom_report(const PsiSpec& psi, const BigInt& n) {
  if (n < 4) throw InvalidInput("psi report needs N >= 4");
  psi.check_range(n);
  PsiReport r;
  r.psi = psi;
  r.n_max = n;
  r.psi1 = psi(BigInt(1));
  r.psi1_is_one = r.psi1.is_point() && r.psi1.contains(Rational(1));
  if (psi.is_log()) {
    r.monotonicity_violation = Interval{};
  } else {
    Rational worst = 0;
    for (std::size_t i = 1; i < n.get_ui(); ++i) worst = std::max(worst, Rational(psi.values[i - 1] - psi.values[i]));
    r.monotonicity_violation = Interval(worst);
  }
  for (BigInt k = 1; k <= n; k *= 2) r.decay.emplace_back(k, psi(k) / Interval(k));
  for (BigInt k = 1; 2 * k <= n; k *= 2) r.doubling.emplace_back(k, psi(BigInt(2 * k)) / psi(k));
  bool trend = !r.doubling.empty();
  for (std::size_t i = 0; i < r.doubling.size(); ++i) {
    if (!certainly_le(Interval(1L), r.doubling[i].second)) trend = false;
    if (i > 0 && !certainly_le(r.doubling[i].second, r.doubling[i - 1].second)) trend = false;
  }
  r.doubling_trends_to_one = trend;
  BigInt half = n / 2;
  r.grows = certainly_lt(psi(half), psi(n));
  return r;
}

}  // namespace seqspace
