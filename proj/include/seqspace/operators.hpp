#pragma once

// Pointwise algebra, decreasing rearrangement, closing up, index maps and
// restrictions on Sequence values.

#include "seqspace/sequence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace seqspace {

namespace detail {

inline int kind_rank(Kind k) {
  switch (k) {
    case Kind::finite: return 0;
    case Kind::blocks: return 1;
    case Kind::periodic: return 2;
    case Kind::rle: return 3;
    case Kind::catalog: return 4;
  }
  return 3;
}

inline Kind wider_kind(Kind a, Kind b) { return kind_rank(a) >= kind_rank(b) ? a : b; }

template <class F>
RunForm map_values(const RunForm& f, F fn) {
  RunForm out = f;
  for (auto& r : out.head) {
    for (auto& v : r.pattern) v = fn(v);
  }
  for (auto& v : out.cycle) v = fn(v);
  return out;
}

template <class F>
Sequence map_pointwise(const Sequence& x, F fn) {
  return Sequence::from_runs(map_values(x.runs(), fn), x.kind());
}

inline Rational abs_value(const Rational& v) { return abs(v); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Pointwise algebra

inline Sequence abs(const Sequence& x) {
  if (x.is_catalog()) return Sequence::harmonic(abs(x.harmonic_params().scale), x.harmonic_params().offset);
  return detail::map_pointwise(x, detail::abs_value);
}

inline Sequence negate(const Sequence& x) {
  if (x.is_catalog()) return Sequence::harmonic(-x.harmonic_params().scale, x.harmonic_params().offset);
  return detail::map_pointwise(x, [](const Rational& v) { return Rational(-v); });
}

inline Sequence scale(const Rational& lambda, const Sequence& x) {
  if (lambda == 0) return Sequence::zero();
  if (x.is_catalog()) return Sequence::harmonic(lambda * x.harmonic_params().scale, x.harmonic_params().offset);
  return detail::map_pointwise(x, [&](const Rational& v) { return Rational(lambda * v); });
}

/// x+ = max(x, 0)
inline Sequence pos_part(const Sequence& x) {
  if (x.is_catalog()) return x.harmonic_params().scale > 0 ? x : Sequence::zero();
  return detail::map_pointwise(x, [](const Rational& v) { return v > 0 ? v : Rational(0); });
}

/// x- = max(-x, 0), so that x = x+ - x- and |x| = x+ + x-.
inline Sequence neg_part(const Sequence& x) {
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    return h.scale < 0 ? Sequence::harmonic(-h.scale, h.offset) : Sequence::zero();
  }
  return detail::map_pointwise(x, [](const Rational& v) { return v < 0 ? Rational(-v) : Rational(0); });
}

namespace detail {

/// Catalog operand combined with something else; nullopt when the result
/// has no finite description.
template <class F>
std::optional<Sequence> combine_with_catalog(const Sequence& a, const Sequence& b, F fn, bool is_product) {
  if (a.is_catalog() && b.is_catalog()) {
    const auto& ha = a.harmonic_params();
    const auto& hb = b.harmonic_params();
    if (!is_product && ha.offset == hb.offset) {
      return Sequence::harmonic(fn(ha.scale, hb.scale), ha.offset);
    }
    return std::nullopt;
  }
  const Sequence& cat = a.is_catalog() ? a : b;
  const Sequence& other = a.is_catalog() ? b : a;
  const bool cat_first = a.is_catalog();
  if (!is_product) {
    if (other.is_zero()) return cat_first ? Sequence::harmonic(fn(cat.harmonic_params().scale, Rational(0)), cat.harmonic_params().offset)
                                          : Sequence::harmonic(fn(Rational(0), cat.harmonic_params().scale), cat.harmonic_params().offset);
    return std::nullopt;
  }
  const auto& f = other.runs();
  if (f.head.empty() && f.constant_cycle()) {
    const Rational& c = f.cycle[0];
    return scale(c, cat);
  }
  if (other.finite_support()) {
    std::vector<std::pair<BigInt, Rational>> out;
    for (const auto& [idx, v] : other.nonzero_entries()) {
      Rational w = cat.harmonic_params().at(idx);
      Rational p = cat_first ? fn(w, v) : fn(v, w);
      if (p != 0) out.emplace_back(idx, p);
    }
    return Sequence::from_runs(Sequence::finite(out).runs(), other.kind());
  }
  return std::nullopt;
}

}  // namespace detail

inline Sequence add(const Sequence& x, const Sequence& y) {
  auto plus = [](const Rational& u, const Rational& v) { return Rational(u + v); };
  if (x.is_catalog() || y.is_catalog()) {
    if (auto r = detail::combine_with_catalog(x, y, plus, false)) return *r;
    throw UnsupportedCombination(std::string("cannot add ") + kind_name(x.kind()) + " and " + kind_name(y.kind()) +
                                 " sequences: the sum has no finite description");
  }
  return Sequence::from_runs(detail::combine(x.runs(), y.runs(), plus), detail::wider_kind(x.kind(), y.kind()));
}

inline Sequence subtract(const Sequence& x, const Sequence& y) { return add(x, negate(y)); }

/// Pointwise product.
inline Sequence multiply(const Sequence& x, const Sequence& y) {
  auto times = [](const Rational& u, const Rational& v) { return Rational(u * v); };
  if (x.is_catalog() || y.is_catalog()) {
    if (auto r = detail::combine_with_catalog(x, y, times, true)) return *r;
    throw UnsupportedCombination(std::string("cannot multiply ") + kind_name(x.kind()) + " and " + kind_name(y.kind()) +
                                 " sequences");
  }
  Kind hint = x.finite_support() ? x.kind() : y.finite_support() ? y.kind() : detail::wider_kind(x.kind(), y.kind());
  return Sequence::from_runs(detail::combine(x.runs(), y.runs(), times), hint);
}

// ---------------------------------------------------------------------------
// Decreasing rearrangement

/// x* as (value, multiplicity) blocks in strictly decreasing order followed
/// by a constant tail; values not above the tail are absorbed by it.
struct RearrangedBlocks {
  std::vector<std::pair<Rational, BigInt>> blocks;
  Rational tail{0};
};

inline RearrangedBlocks rearranged_blocks(const Sequence& x) {
  if (x.is_catalog()) throw UnsupportedCombination("catalog sequences take infinitely many distinct values");
  const RunForm& f = x.runs();
  Rational tail = 0;
  for (const auto& v : f.cycle) tail = std::max(tail, Rational(abs(v)));
  std::map<Rational, BigInt, std::greater<>> mult;
  for (const auto& r : f.head) {
    for (const auto& v : r.pattern) {
      Rational a = abs(v);
      if (a > tail) mult[a] += r.repeat;
    }
  }
  RearrangedBlocks out;
  out.tail = tail;
  for (auto& [v, c] : mult) out.blocks.emplace_back(v, c);
  return out;
}

inline Sequence decreasing_rearrangement(const Sequence& x) {
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    return Sequence::harmonic(abs(h.scale), h.offset);
  }
  RearrangedBlocks rb = rearranged_blocks(x);
  RunForm f;
  for (auto& [v, c] : rb.blocks) f.head.push_back(Run{{v}, c});
  f.cycle = {rb.tail};
  return Sequence::from_runs(std::move(f), x.kind() == Kind::finite ? Kind::finite : Kind::blocks);
}

// ---------------------------------------------------------------------------
// Closing up

inline Sequence closing_up(const Sequence& x) {
  if (x.is_catalog()) return x;
  RunForm f;
  for (const auto& r : x.runs().head) {
    Run nr{{}, r.repeat};
    for (const auto& v : r.pattern) {
      if (v != 0) nr.pattern.push_back(v);
    }
    if (!nr.pattern.empty()) f.head.push_back(std::move(nr));
  }
  f.cycle.clear();
  for (const auto& v : x.runs().cycle) {
    if (v != 0) f.cycle.push_back(v);
  }
  if (f.cycle.empty()) f.cycle = {Rational(0)};
  return Sequence::from_runs(std::move(f), x.kind());
}

// ---------------------------------------------------------------------------
// Index maps: y_n = x_{pi(n)}

struct InjectionSpec {
  enum class Type { finite_permutation, finite_injection, shift, dilation2, evens_to_all, odds_to_all, interleave_with_zeros };

  Type type = Type::finite_permutation;
  /// finite_permutation: images[n-1] = sigma(n) for n = 1..K.
  std::vector<std::uint64_t> images;
  /// finite_injection: (n, pi(n)) pairs.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  BigInt shift{0};

  static InjectionSpec permutation(std::vector<std::uint64_t> images) {
    InjectionSpec s;
    s.type = Type::finite_permutation;
    s.images = std::move(images);
    s.validate();
    return s;
  }
  static InjectionSpec injection(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    InjectionSpec s;
    s.type = Type::finite_injection;
    s.pairs = std::move(pairs);
    s.validate();
    return s;
  }
  static InjectionSpec named(Type t, BigInt k = BigInt(0)) {
    InjectionSpec s;
    s.type = t;
    s.shift = std::move(k);
    s.validate();
    return s;
  }

  /// Injective maps only; the dilation repeats coordinates.
  bool injective() const { return type != Type::dilation2; }

  void validate() const {
    if (type == Type::finite_permutation) {
      std::vector<bool> seen(images.size() + 1, false);
      for (auto v : images) {
        if (v < 1 || v > images.size() || seen[v]) throw InvalidInput("permutation map is not a bijection of {1..K}");
        seen[v] = true;
      }
    } else if (type == Type::finite_injection) {
      std::set<std::uint64_t> dom, img;
      for (auto [n, m] : pairs) {
        if (n < 1 || m < 1) throw InvalidInput("injection indices start at 1");
        if (!dom.insert(n).second) throw InvalidInput("injection domain has a repeated index");
        if (!img.insert(m).second) throw InvalidInput("injection map is not injective");
      }
    } else if (type == Type::shift && shift < 0) {
      throw InvalidInput("shift must be >= 0");
    }
  }
};

inline const char* injection_name(InjectionSpec::Type t) {
  using T = InjectionSpec::Type;
  switch (t) {
    case T::finite_permutation: return "permutation";
    case T::finite_injection: return "injection";
    case T::shift: return "shift";
    case T::dilation2: return "dilation2";
    case T::evens_to_all: return "evens_to_all";
    case T::odds_to_all: return "odds_to_all";
    case T::interleave_with_zeros: return "interleave_with_zeros";
  }
  return "?";
}

namespace detail {

/// Drops the first k terms.
inline RunForm drop_front(const RunForm& f, BigInt k) {
  RunForm out;
  std::size_t i = 0;
  for (; i < f.head.size(); ++i) {
    BigInt len = f.head[i].length();
    if (k < len) break;
    k -= len;
  }
  if (i == f.head.size()) {
    std::size_t p = f.cycle.size();
    std::size_t by = mod_size(k, p);
    out.cycle.assign(f.cycle.begin() + static_cast<std::ptrdiff_t>(by), f.cycle.end());
    out.cycle.insert(out.cycle.end(), f.cycle.begin(), f.cycle.begin() + static_cast<std::ptrdiff_t>(by));
    return out;
  }
  const Run& r = f.head[i];
  const std::size_t q = r.pattern.size();
  BigInt skipped = k / static_cast<unsigned long>(q);
  std::size_t ph = mod_size(k, q);
  BigInt reps = r.repeat - skipped;
  if (ph > 0) {
    out.head.push_back(Run{std::vector<Rational>(r.pattern.begin() + static_cast<std::ptrdiff_t>(ph), r.pattern.end()), 1});
    reps -= 1;
  }
  if (reps > 0) out.head.push_back(Run{r.pattern, reps});
  for (++i; i < f.head.size(); ++i) out.head.push_back(f.head[i]);
  out.cycle = f.cycle;
  return out;
}

inline std::vector<Rational> every_other(const std::vector<Rational>& v, std::size_t start) {
  std::vector<Rational> out;
  for (std::size_t i = start; i < v.size(); i += 2) out.push_back(v[i]);
  return out;
}

inline std::vector<Rational> doubled(const std::vector<Rational>& v) {
  std::vector<Rational> out = v;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Terms at positions of the given parity (1 = odd positions, 0 = even).
inline RunForm decimate(const RunForm& f, int want_parity) {
  RunForm out;
  int parity = 1;  // parity of the global position of the next term
  for (const auto& r : f.head) {
    const std::size_t q = r.pattern.size();
    std::size_t s0 = parity == want_parity ? 0 : 1;
    if (q % 2 == 0) {
      out.head.push_back(Run{every_other(r.pattern, s0), r.repeat});
    } else {
      BigInt pairs = r.repeat / 2;
      if (pairs > 0) out.head.push_back(Run{every_other(doubled(r.pattern), s0), pairs});
      if (r.repeat % 2 != 0) {
        auto rest = every_other(r.pattern, s0);
        if (!rest.empty()) out.head.push_back(Run{std::move(rest), 1});
      }
    }
    if (mod_size(r.length(), 2) == 1) parity ^= 1;
  }
  std::size_t s0 = parity == want_parity ? 0 : 1;
  out.cycle = f.cycle.size() % 2 == 0 ? every_other(f.cycle, s0) : every_other(doubled(f.cycle), s0);
  return out;
}

inline std::vector<Rational> each_twice(const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (const auto& e : v) {
    out.push_back(e);
    out.push_back(e);
  }
  return out;
}

inline std::vector<Rational> with_zeros(const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (const auto& e : v) {
    out.push_back(e);
    out.push_back(Rational(0));
  }
  return out;
}

}  // namespace detail

inline Sequence apply_map(const Sequence& x, const InjectionSpec& pi) {
  using T = InjectionSpec::Type;
  pi.validate();
  if (x.is_catalog()) {
    const auto& h = x.harmonic_params();
    if (pi.type == T::shift) return Sequence::harmonic(h.scale, h.offset + pi.shift);
    if (pi.type == T::finite_permutation) {
      bool identity = true;
      for (std::size_t i = 0; i < pi.images.size(); ++i) identity = identity && pi.images[i] == i + 1;
      if (identity) return x;
    }
    if (pi.type == T::finite_injection) {
      std::vector<std::pair<BigInt, Rational>> out;
      auto pairs = pi.pairs;
      std::sort(pairs.begin(), pairs.end());
      for (auto [n, m] : pairs) out.emplace_back(BigInt(static_cast<unsigned long>(n)), h.at(BigInt(static_cast<unsigned long>(m))));
      return Sequence::finite(out);
    }
    throw UnsupportedCombination(std::string("map '") + injection_name(pi.type) + "' on a catalog sequence has no finite description");
  }
  const RunForm& f = x.runs();
  switch (pi.type) {
    case T::finite_permutation: {
      const std::size_t k = pi.images.size();
      if (k == 0) return x;
      auto vals = x.prefix(k);
      RunForm out = detail::drop_front(f, BigInt(static_cast<unsigned long>(k)));
      std::vector<Run> head;
      for (std::size_t n = 0; n < k; ++n) head.push_back(Run{{vals[pi.images[n] - 1]}, 1});
      head.insert(head.end(), out.head.begin(), out.head.end());
      out.head = std::move(head);
      return Sequence::from_runs(std::move(out), x.kind());
    }
    case T::finite_injection: {
      if (!x.finite_support()) {
        throw UnsupportedCombination("a finite injection is only applied to finite-support sequences");
      }
      auto pairs = pi.pairs;
      std::sort(pairs.begin(), pairs.end());
      std::vector<std::pair<BigInt, Rational>> out;
      for (auto [n, m] : pairs) {
        Rational v = x.at(BigInt(static_cast<unsigned long>(m)));
        if (v != 0) out.emplace_back(BigInt(static_cast<unsigned long>(n)), v);
      }
      return Sequence::from_runs(Sequence::finite(out).runs(), x.kind());
    }
    case T::shift:
      return Sequence::from_runs(detail::drop_front(f, pi.shift), x.kind());
    case T::dilation2: {
      RunForm out = f;
      for (auto& r : out.head) r.pattern = detail::each_twice(r.pattern);
      out.cycle = detail::each_twice(f.cycle);
      return Sequence::from_runs(std::move(out), x.kind());
    }
    case T::evens_to_all:
      return Sequence::from_runs(detail::decimate(f, 0), x.kind());
    case T::odds_to_all:
      return Sequence::from_runs(detail::decimate(f, 1), x.kind());
    case T::interleave_with_zeros: {
      RunForm out = f;
      for (auto& r : out.head) r.pattern = detail::with_zeros(r.pattern);
      out.cycle = detail::with_zeros(f.cycle);
      return Sequence::from_runs(std::move(out), x.kind());
    }
  }
  throw InvalidInput("unknown map");
}

/// D2 (x1, x1, x2, x2, ...)
inline Sequence dilate2(const Sequence& x) { return apply_map(x, InjectionSpec::named(InjectionSpec::Type::dilation2)); }

// ---------------------------------------------------------------------------
// Restriction x_I

struct IndexSetSpec {
  enum class Type { explicit_set, evens, odds, complement_of_explicit };
  Type type = Type::explicit_set;
  std::vector<BigInt> indices;  // sorted, distinct, >= 1

  static IndexSetSpec explicit_set(std::vector<BigInt> idx) { return make(Type::explicit_set, std::move(idx)); }
  static IndexSetSpec complement_of(std::vector<BigInt> idx) { return make(Type::complement_of_explicit, std::move(idx)); }
  static IndexSetSpec evens() { return make(Type::evens, {}); }
  static IndexSetSpec odds() { return make(Type::odds, {}); }

  bool contains(const BigInt& n) const {
    switch (type) {
      case Type::evens: return n % 2 == 0;
      case Type::odds: return n % 2 != 0;
      case Type::explicit_set: return std::binary_search(indices.begin(), indices.end(), n);
      case Type::complement_of_explicit: return !std::binary_search(indices.begin(), indices.end(), n);
    }
    return false;
  }

  /// Indicator sequence of the set.
  Sequence indicator() const {
    switch (type) {
      case Type::evens: return Sequence::periodic({Rational(0), Rational(1)});
      case Type::odds: return Sequence::periodic({Rational(1), Rational(0)});
      case Type::explicit_set:
      case Type::complement_of_explicit: {
        std::vector<std::pair<BigInt, Rational>> e;
        for (const auto& i : indices) e.emplace_back(i, Rational(1));
        Sequence ind = Sequence::finite(e);
        if (type == Type::explicit_set) return ind;
        RunForm f = detail::map_values(ind.runs(), [](const Rational& v) { return Rational(1 - v); });
        return Sequence::from_runs(std::move(f), Kind::blocks);
      }
    }
    return Sequence::zero();
  }

 private:
  static IndexSetSpec make(Type t, std::vector<BigInt> idx) {
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) throw InvalidInput("index set has repeated entries");
    if (!idx.empty() && idx.front() < 1) throw InvalidInput("indices start at 1");
    IndexSetSpec s;
    s.type = t;
    s.indices = std::move(idx);
    return s;
  }
};

inline Sequence restrict(const Sequence& x, const IndexSetSpec& set) {
  if (x.is_catalog()) {
    if (set.type == IndexSetSpec::Type::explicit_set) {
      std::vector<std::pair<BigInt, Rational>> e;
      for (const auto& i : set.indices) e.emplace_back(i, x.at(i));
      return Sequence::finite(e);
    }
    throw UnsupportedCombination("restriction of a catalog sequence to an infinite index set has no finite description");
  }
  Sequence mask = set.indicator();
  RunForm f = detail::combine(x.runs(), mask.runs(),
                              [](const Rational& v, const Rational& m) { return m != 0 ? v : Rational(0); });
  return Sequence::from_runs(std::move(f), x.kind());
}

// ---------------------------------------------------------------------------
// Partial sums of the decreasing rearrangement

/// (s_1(x), ..., s_N(x)) with s_n = x*_1 + ... + x*_n.
inline std::vector<Rational> partial_sums(const Sequence& x, std::size_t n) {
  auto star = decreasing_rearrangement(x).prefix(n);
  std::vector<Rational> out;
  out.reserve(n);
  Rational acc = 0;
  for (const auto& v : star) {
    acc += v;
    out.push_back(acc);
  }
  return out;
}

/// s_n(x) for one (possibly huge) n; exact for non-catalog sequences.
inline Rational partial_sum_at(const RearrangedBlocks& rb, const BigInt& n) {
  Rational acc = 0;
  BigInt left = n;
  for (const auto& [v, c] : rb.blocks) {
    if (left <= c) return acc + v * Rational(left);
    acc += v * Rational(c);
    left -= c;
  }
  return acc + rb.tail * Rational(left);
}

}  // namespace seqspace
