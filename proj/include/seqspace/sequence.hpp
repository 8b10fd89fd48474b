#pragma once

// Finitely described infinite real sequences.
//
// Finite, Blocks and Periodic sequences share one internal form: a finite
// head of runs (a pattern repeated a big-integer number of times) followed
// by a cycle repeated forever. The public kind is derived from that form and
// a kind hint carried through operations. Catalog sequences (scaled, shifted
// harmonic) are kept in closed form.

#include "seqspace/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace seqspace {

enum class Kind { finite, blocks, periodic, rle, catalog };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::finite: return "finite";
    case Kind::blocks: return "blocks";
    case Kind::periodic: return "periodic";
    case Kind::rle: return "rle";
    case Kind::catalog: return "catalog";
  }
  return "?";
}

/// `pattern` repeated `repeat` times.
struct Run {
  std::vector<Rational> pattern;
  BigInt repeat;

  BigInt length() const { return BigInt(static_cast<unsigned long>(pattern.size())) * repeat; }
  bool constant() const { return pattern.size() == 1; }
  friend bool operator==(const Run& a, const Run& b) { return a.repeat == b.repeat && a.pattern == b.pattern; }
};

struct RunForm {
  std::vector<Run> head;
  std::vector<Rational> cycle{Rational(0)};

  BigInt head_length() const {
    BigInt n = 0;
    for (const auto& r : head) n += r.length();
    return n;
  }
  bool zero_cycle() const { return cycle.size() == 1 && cycle[0] == 0; }
  bool constant_cycle() const { return cycle.size() == 1; }
  friend bool operator==(const RunForm& a, const RunForm& b) { return a.head == b.head && a.cycle == b.cycle; }
};

/// x_n = scale / (n + offset), n >= 1.
struct Harmonic {
  Rational scale{1};
  BigInt offset{0};

  Rational at(const BigInt& n) const { return scale / Rational(n + offset); }
  friend bool operator==(const Harmonic& a, const Harmonic& b) { return a.scale == b.scale && a.offset == b.offset; }
};

inline constexpr std::size_t kMaxPrefix = 50'000'000;
inline constexpr std::size_t kMaxPeriod = 1'000'000;
inline constexpr std::size_t kMaxFiniteEntries = 1'000'000;

namespace detail {

inline std::size_t to_size(const BigInt& v) {
  if (v < 0 || !v.fits_ulong_p()) throw InvalidInput("count too large for an in-memory expansion");
  return static_cast<std::size_t>(v.get_ui());
}

inline std::size_t mod_size(const BigInt& v, std::size_t m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
  return static_cast<std::size_t>(r.get_ui());
}

inline std::size_t checked_lcm(std::size_t a, std::size_t b) {
  std::size_t l = std::lcm(a, b);
  if (l > kMaxPeriod) throw UnsupportedCombination("combined period exceeds " + std::to_string(kMaxPeriod));
  return l;
}

/// Smallest p dividing v.size() with v[i] == v[i % p].
inline std::size_t minimal_period(const std::vector<Rational>& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = v[i] == v[i - p];
    if (ok) return p;
  }
  return n;
}

inline std::vector<Rational> rotate_right(const std::vector<Rational>& c, std::size_t by) {
  const std::size_t p = c.size();
  std::vector<Rational> out(p);
  for (std::size_t i = 0; i < p; ++i) out[(i + by) % p] = c[i];
  return out;
}

inline constexpr std::size_t kExpandSmallRuns = 64;

inline void merge_runs(std::vector<Run>& head) {
  std::vector<Run> out;
  for (auto& r : head) {
    if (!out.empty() && out.back().pattern == r.pattern) {
      out.back().repeat += r.repeat;
    } else {
      out.push_back(std::move(r));
    }
  }
  head = std::move(out);
}

/// Moves the trailing part of the head that already agrees with the
/// backward extension of the cycle into the cycle.
inline void absorb_into_cycle(RunForm& f) {
  while (!f.head.empty()) {
    Run& last = f.head.back();
    const std::size_t q = last.pattern.size();
    const std::size_t p = f.cycle.size();
    const BigInt len = last.length();
    const std::size_t span = std::lcm(q, p) + q;
    std::size_t limit = len.fits_ulong_p() && len.get_ui() < span ? static_cast<std::size_t>(len.get_ui()) : span;
    std::size_t matched = 0;
    while (matched < limit) {
      const Rational& a = last.pattern[(q - 1 - matched % q)];
      const Rational& b = f.cycle[(p - 1 - matched % p)];
      if (a != b) break;
      ++matched;
    }
    if (matched == limit) {
      // Every element matches; both sides repeat with a period dividing lcm.
      std::size_t shift = mod_size(len, p);
      f.cycle = rotate_right(f.cycle, shift);
      f.head.pop_back();
      continue;
    }
    if (matched == 0) return;
    // Cut `matched` trailing elements off the run.
    std::size_t whole = (matched + q - 1) / q;
    std::size_t keep_partial = whole * q - matched;
    std::vector<Rational> partial(last.pattern.begin(), last.pattern.begin() + static_cast<std::ptrdiff_t>(keep_partial));
    last.repeat -= static_cast<unsigned long>(whole);
    if (last.repeat == 0) f.head.pop_back();
    if (!partial.empty()) f.head.push_back(Run{std::move(partial), 1});
    f.cycle = rotate_right(f.cycle, matched % p);
    return;
  }
}

/// Minimal pattern periods, small multi-valued runs expanded into constant
/// runs, equal neighbours merged.
inline void shape_runs(std::vector<Run>& head) {
  std::vector<Run> runs;
  for (auto& r : head) {
    if (r.repeat < 0) throw InvalidInput("negative repeat count");
    if (r.repeat == 0 || r.pattern.empty()) continue;
    std::size_t mp = minimal_period(r.pattern);
    if (mp < r.pattern.size()) {
      r.repeat *= static_cast<unsigned long>(r.pattern.size() / mp);
      r.pattern.resize(mp);
    }
    const BigInt len = r.length();
    if (r.pattern.size() > 1 && len <= kExpandSmallRuns) {
      std::size_t n = to_size(len);
      for (std::size_t i = 0; i < n; ++i) runs.push_back(Run{{r.pattern[i % r.pattern.size()]}, 1});
    } else {
      runs.push_back(std::move(r));
    }
  }
  merge_runs(runs);
  head = std::move(runs);
}

inline void normalize(RunForm& f) {
  if (f.cycle.empty()) throw InvalidInput("cycle must be nonempty");
  f.cycle.resize(minimal_period(f.cycle));
  shape_runs(f.head);
  absorb_into_cycle(f);
  shape_runs(f.head);
}

inline bool all_constant_runs(const RunForm& f) {
  for (const auto& r : f.head) {
    if (!r.constant()) return false;
  }
  return true;
}

/// Reads a RunForm as consecutive segments of constant pattern.
class RunReader {
 public:
  explicit RunReader(const RunForm& f) : f_(&f) {
    if (!f.head.empty()) left_ = f.head[0].length();
  }
  bool in_cycle() const { return run_ >= f_->head.size(); }
  const std::vector<Rational>& pattern() const { return in_cycle() ? f_->cycle : f_->head[run_].pattern; }
  std::size_t phase() const { return phase_; }
  /// Elements left in the current head run; meaningless in the cycle.
  const BigInt& left() const { return left_; }

  void advance(const BigInt& len) {
    const auto& pat = pattern();
    phase_ = (phase_ + mod_size(len, pat.size())) % pat.size();
    if (in_cycle()) return;
    left_ -= len;
    if (left_ == 0) {
      ++run_;
      phase_ = 0;
      if (!in_cycle()) left_ = f_->head[run_].length();
    }
  }

 private:
  const RunForm* f_;
  std::size_t run_ = 0;
  std::size_t phase_ = 0;
  BigInt left_ = 0;
};

/// Pointwise combination f(a_n, b_n) on the common refinement of two forms.
template <class F>
RunForm combine(const RunForm& a, const RunForm& b, F f) {
  RunReader ra(a), rb(b);
  RunForm out;
  auto build = [&](std::size_t len) {
    const auto& pa = ra.pattern();
    const auto& pb = rb.pattern();
    std::vector<Rational> p(len);
    for (std::size_t t = 0; t < len; ++t) {
      p[t] = f(pa[(ra.phase() + t) % pa.size()], pb[(rb.phase() + t) % pb.size()]);
    }
    return p;
  };
  while (!(ra.in_cycle() && rb.in_cycle())) {
    BigInt len = ra.in_cycle() ? rb.left() : rb.in_cycle() ? ra.left() : (ra.left() < rb.left() ? ra.left() : rb.left());
    const std::size_t period = checked_lcm(ra.pattern().size(), rb.pattern().size());
    if (len <= period) {
      out.head.push_back(Run{build(to_size(len)), 1});
    } else {
      std::vector<Rational> p = build(period);
      BigInt reps = len / static_cast<unsigned long>(period);
      std::size_t rem = mod_size(len, period);
      if (rem > 0) {
        std::vector<Rational> tail(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(rem));
        out.head.push_back(Run{std::move(p), reps});
        out.head.push_back(Run{std::move(tail), 1});
      } else {
        out.head.push_back(Run{std::move(p), reps});
      }
    }
    ra.advance(len);
    rb.advance(len);
  }
  out.cycle = build(checked_lcm(ra.pattern().size(), rb.pattern().size()));
  normalize(out);
  return out;
}

}  // namespace detail

class Sequence {
 public:
  /// The zero sequence.
  Sequence() = default;

  static Sequence zero() { return Sequence(); }

  /// Finite support; `entries` are (index >= 1, value) with strictly
  /// increasing indices. Zero values are dropped.
  static Sequence finite(const std::vector<std::pair<BigInt, Rational>>& entries) {
    RunForm f;
    BigInt pos = 0;
    for (const auto& [index, value] : entries) {
      if (index <= pos) throw InvalidInput("finite sequence indices must be positive and strictly increasing");
      if (index - pos > 1) f.head.push_back(Run{{Rational(0)}, index - pos - 1});
      f.head.push_back(Run{{value}, 1});
      pos = index;
    }
    return from_runs(std::move(f), Kind::finite);
  }

  /// (value, count) blocks followed by a constant tail (nullopt = zero).
  static Sequence blocks(const std::vector<std::pair<Rational, BigInt>>& blocks, std::optional<Rational> tail) {
    RunForm f;
    for (const auto& [value, count] : blocks) {
      if (count < 1) throw InvalidInput("block counts must be >= 1");
      f.head.push_back(Run{{value}, count});
    }
    f.cycle = {tail.value_or(Rational(0))};
    return from_runs(std::move(f), Kind::blocks);
  }

  static Sequence constant(const Rational& c) { return blocks({}, c); }

  static Sequence periodic(std::vector<Rational> pattern) {
    if (pattern.empty()) throw InvalidInput("periodic pattern must be nonempty");
    if (pattern.size() > kMaxPeriod) throw InvalidInput("periodic pattern too long");
    RunForm f;
    f.cycle = std::move(pattern);
    return from_runs(std::move(f), Kind::periodic);
  }

  static Sequence harmonic(Rational scale = Rational(1), BigInt offset = BigInt(0)) {
    if (offset < 0) throw InvalidInput("harmonic offset must be >= 0");
    scale.canonicalize();
    if (scale == 0) return Sequence();
    Sequence s;
    s.catalog_ = Harmonic{std::move(scale), std::move(offset)};
    s.kind_ = Kind::catalog;
    return s;
  }

  /// General eventually periodic sequence; the kind is the closest match to
  /// `hint` that can represent the value.
  static Sequence from_runs(RunForm f, Kind hint) {
    for (auto& r : f.head) {
      for (auto& v : r.pattern) v.canonicalize();
    }
    for (auto& v : f.cycle) v.canonicalize();
    detail::normalize(f);
    Sequence s;
    s.form_ = std::move(f);
    s.kind_ = present(s.form_, hint);
    return s;
  }

  Kind kind() const { return kind_; }
  bool is_catalog() const { return catalog_.has_value(); }
  const RunForm& runs() const { return form_; }
  const Harmonic& harmonic_params() const { return *catalog_; }
  bool is_zero() const { return !catalog_ && form_.head.empty() && form_.zero_cycle(); }

  /// Only finitely many nonzero terms.
  bool finite_support() const { return !catalog_ && form_.zero_cycle(); }

  Rational at(const BigInt& n) const {
    if (n < 1) throw InvalidInput("sequence indices start at 1");
    if (catalog_) return catalog_->at(n);
    BigInt pos = n - 1;  // zero-based
    for (const auto& r : form_.head) {
      BigInt len = r.length();
      if (pos < len) return r.pattern[detail::mod_size(pos, r.pattern.size())];
      pos -= len;
    }
    return form_.cycle[detail::mod_size(pos, form_.cycle.size())];
  }

  /// (x_1, ..., x_N).
  std::vector<Rational> prefix(std::size_t n) const;

  /// sup_n |x_n|, attained for every representable kind.
  Rational sup_abs() const {
    if (catalog_) return abs(catalog_->scale) / Rational(catalog_->offset + 1);
    Rational m = 0;
    for (const auto& r : form_.head) {
      for (const auto& v : r.pattern) m = std::max(m, Rational(abs(v)));
    }
    for (const auto& v : form_.cycle) m = std::max(m, Rational(abs(v)));
    return m;
  }

  /// Nonzero entries of a finite-support sequence, in index order.
  std::vector<std::pair<BigInt, Rational>> nonzero_entries() const {
    if (!finite_support()) throw InvalidInput("sequence does not have finite support");
    std::vector<std::pair<BigInt, Rational>> out;
    BigInt pos = 0;
    for (const auto& r : form_.head) {
      const std::size_t q = r.pattern.size();
      bool any_nonzero = false;
      for (const auto& v : r.pattern) any_nonzero = any_nonzero || v != 0;
      if (any_nonzero) {
        BigInt nnz = r.repeat * static_cast<unsigned long>(q);
        if (nnz > kMaxFiniteEntries || out.size() + detail::to_size(nnz) > kMaxFiniteEntries) {
          throw InvalidInput("too many nonzero entries to list");
        }
        std::size_t reps = detail::to_size(r.repeat);
        for (std::size_t k = 0; k < reps; ++k) {
          for (std::size_t i = 0; i < q; ++i) {
            if (r.pattern[i] != 0) out.emplace_back(pos + 1 + k * q + i, r.pattern[i]);
          }
        }
      }
      pos += r.length();
    }
    return out;
  }

  friend bool same_values(const Sequence& a, const Sequence& b);
  friend bool operator==(const Sequence& a, const Sequence& b) { return a.kind_ == b.kind_ && same_values(a, b); }
  friend bool operator!=(const Sequence& a, const Sequence& b) { return !(a == b); }

 private:
  static Kind present(const RunForm& f, Kind hint) {
    if (f.head.empty() && f.zero_cycle()) return Kind::finite;
    if (f.head.empty() && f.cycle.size() > 1) return Kind::periodic;
    if (detail::all_constant_runs(f) && f.constant_cycle()) {
      if (hint == Kind::finite && f.zero_cycle() && fits_finite(f)) return Kind::finite;
      return Kind::blocks;
    }
    return Kind::rle;
  }

  static bool fits_finite(const RunForm& f) {
    BigInt nnz = 0;
    for (const auto& r : f.head) {
      if (r.pattern[0] != 0) nnz += r.repeat;
    }
    return nnz <= kMaxFiniteEntries && f.head_length().fits_ulong_p();
  }

  RunForm form_{};
  std::optional<Harmonic> catalog_{};
  Kind kind_ = Kind::finite;
};

/// Sequential reader starting at a (1-based) position.
class Cursor {
 public:
  explicit Cursor(const Sequence& x, const BigInt& start = BigInt(1)) : x_(&x), pos_(start) {
    if (start < 1) throw InvalidInput("cursor start must be >= 1");
    if (x.is_catalog()) return;
    BigInt rest = start - 1;
    const auto& head = x.runs().head;
    for (run_ = 0; run_ < head.size(); ++run_) {
      BigInt len = head[run_].length();
      if (rest < len) break;
      rest -= len;
    }
    if (run_ < head.size()) {
      left_ = head[run_].length() - rest;
      phase_ = detail::mod_size(rest, head[run_].pattern.size());
    } else {
      phase_ = detail::mod_size(rest, x.runs().cycle.size());
    }
  }

  Rational next() {
    if (x_->is_catalog()) {
      Rational v = x_->harmonic_params().at(pos_);
      ++pos_;
      return v;
    }
    const auto& head = x_->runs().head;
    ++pos_;
    if (run_ < head.size()) {
      const auto& pat = head[run_].pattern;
      Rational v = pat[phase_];
      phase_ = (phase_ + 1) % pat.size();
      if (--left_ == 0) {
        ++run_;
        phase_ = 0;
        if (run_ < head.size()) left_ = head[run_].length();
      }
      return v;
    }
    const auto& cyc = x_->runs().cycle;
    Rational v = cyc[phase_];
    phase_ = (phase_ + 1) % cyc.size();
    return v;
  }

  const BigInt& position() const { return pos_; }

 private:
  const Sequence* x_;
  BigInt pos_;
  std::size_t run_ = 0;
  std::size_t phase_ = 0;
  BigInt left_ = 0;
};

inline std::vector<Rational> Sequence::prefix(std::size_t n) const {
  if (n < 1) throw InvalidInput("prefix length must be >= 1");
  if (n > kMaxPrefix) throw PrecisionError("prefix length " + std::to_string(n) + " exceeds the evaluable range");
  std::vector<Rational> out;
  out.reserve(n);
  Cursor c(*this);
  for (std::size_t i = 0; i < n; ++i) out.push_back(c.next());
  return out;
}

inline bool same_values(const Sequence& a, const Sequence& b) {
  if (a.catalog_ || b.catalog_) return a.catalog_ == b.catalog_;
  RunForm diff = detail::combine(a.form_, b.form_, [](const Rational& u, const Rational& v) { return Rational(u - v); });
  return diff.head.empty() && diff.zero_cycle();
}

/// eval_prefix
inline std::vector<Rational> eval_prefix(const Sequence& x, std::size_t n) { return x.prefix(n); }

}  // namespace seqspace
