#pragma once

// Real sequences read term by term as intervals, together with what is
// known about their tails. Banach-limit estimators consume these.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "spaces.hpp"

namespace seqspace {

struct Stream {
  using Generator = std::function<Interval()>;

  /// Generator yielding x_first, x_{first+1}, ...
  std::function<Generator(const BigInt& first)> open;
  /// The value every Banach limit assigns (eventually periodic or
  /// convergent to a known rational).
  std::optional<Rational> forced;
  /// Encloses every x_n with n > n0, when known.
  std::function<std::optional<Interval>(const BigInt& n0)> beyond;
  /// The sequence converges, so beyond(n0) also encloses its limit.
  bool convergent = false;
  /// Upper bound on sup |x_n|.
  std::optional<Rational> sup_bound;
  /// Last index that can be evaluated.
  std::optional<BigInt> last;

  Interval at(const BigInt& n) const { return open(n)(); }
};

namespace detail {

inline std::optional<Interval> unknown_tail(const BigInt&) { return std::nullopt; }

inline Interval hull_of(const std::vector<Rational>& vs) {
  Interval h(vs.front());
  for (const auto& v : vs) h = Interval::hull(h, Interval(v));
  return h;
}

inline Rational mean(const std::vector<Rational>& vs) {
  Rational s = 0;
  for (const auto& v : vs) s += v;
  return s / Rational(static_cast<unsigned long>(vs.size()));
}

}  // namespace detail

inline Stream to_stream(const Sequence& x) {
  Stream s;
  if (x.is_catalog()) {
    Harmonic h = x.harmonic_params();
    s.open = [h](const BigInt& first) {
      return Stream::Generator([h, n = BigInt(first)]() mutable {
        Interval v(h.at(n));
        ++n;
        return v;
      });
    };
    s.forced = Rational(0);
    s.convergent = true;
    s.beyond = [h](const BigInt& n0) -> std::optional<Interval> { return Interval::hull(Interval{}, Interval(h.at(n0 + 1))); };
    s.sup_bound = x.sup_abs();
    return s;
  }
  auto shared = std::make_shared<const Sequence>(x);
  s.open = [shared](const BigInt& first) {
    // The cursor points into *shared, which the generator keeps alive.
    return Stream::Generator([shared, c = Cursor(*shared, first)]() mutable { return Interval(c.next()); });
  };
  // Every Banach limit of an eventually periodic sequence is its cycle mean.
  s.forced = detail::mean(x.runs().cycle);
  s.convergent = x.runs().constant_cycle();
  Interval all = detail::hull_of(x.runs().cycle);
  for (const auto& r : x.runs().head) all = Interval::hull(all, detail::hull_of(r.pattern));
  Interval cycle = detail::hull_of(x.runs().cycle);
  BigInt head = x.runs().head_length();
  s.beyond = [all, cycle, head](const BigInt& n0) -> std::optional<Interval> { return n0 >= head ? cycle : all; };
  s.sup_bound = x.sup_abs();
  return s;
}

/// (x_{n+k})_n
inline Stream shifted(const Stream& x, const BigInt& k) {
  Stream s = x;
  s.open = [x, k](const BigInt& first) { return x.open(first + k); };
  s.beyond = [x, k](const BigInt& n0) { return x.beyond(n0 + k); };
  if (x.last) s.last = *x.last - k;
  return s;
}

/// D_2^k x: each term repeated 2^k times.
inline Stream dilated(const Stream& x, unsigned k) {
  if (k == 0) return x;
  Stream s = x;
  BigInt block = BigInt(1) << k;
  s.open = [x, block](const BigInt& first) {
    BigInt idx = (first + block - 1) / block;  // ceil(first / 2^k)
    BigInt left = idx * block - first + 1;     // copies of x_idx still to emit
    return Stream::Generator([g = x.open(idx), left, block, cur = Interval(), fresh = true]() mutable {
      if (fresh) {
        cur = g();
        fresh = false;
      }
      Interval v = cur;
      if (--left == 0) {
        left = block;
        fresh = true;
      }
      return v;
    });
  };
  s.beyond = [x, block](const BigInt& n0) { return x.beyond(n0 / block); };
  if (x.last) s.last = *x.last * block;
  return s;
}

/// (a_n x_n)_n. No forced value is claimed for the product.
inline Stream product(const Stream& a, const Stream& x) {
  Stream s;
  s.open = [a, x](const BigInt& first) {
    return Stream::Generator([ga = a.open(first), gx = x.open(first)]() mutable { return ga() * gx(); });
  };
  s.convergent = a.convergent && x.convergent;
  s.beyond = [a, x](const BigInt& n0) -> std::optional<Interval> {
    auto ba = a.beyond(n0);
    auto bx = x.beyond(n0);
    if (!ba || !bx) return std::nullopt;
    return *ba * *bx;
  };
  if (a.sup_bound && x.sup_bound) s.sup_bound = *a.sup_bound * *x.sup_bound;
  if (a.last || x.last) s.last = a.last && x.last ? std::min(*a.last, *x.last) : a.last ? *a.last : *x.last;
  return s;
}

/// Stream from a term function; `limit` is an exact limit if one is known.
inline Stream from_function(std::function<Interval(const BigInt&)> f, std::optional<Rational> limit = std::nullopt,
                            std::optional<Rational> sup_bound = std::nullopt) {
  Stream s;
  s.open = [f](const BigInt& first) {
    return Stream::Generator([f, n = BigInt(first)]() mutable { return f(n++); });
  };
  s.forced = std::move(limit);
  s.beyond = detail::unknown_tail;
  s.sup_bound = std::move(sup_bound);
  return s;
}

// ---------------------------------------------------------------------------
// Ratio sequences s_n(x) / Psi(n)

inline Stream ratio_stream(const PsiSpec& psi, const Sequence& x) {
  Stream s;
  s.last = psi.domain_end();
  s.beyond = detail::unknown_tail;
  if (x.is_catalog()) {
    if (!psi.is_log()) throw InvalidInput("the harmonic ratio sequence needs a logarithmic Psi");
    Harmonic h = x.harmonic_params();
    Interval scale(Rational(abs(h.scale)));
    s.open = [h, psi, scale](const BigInt& first) {
      Interval partial = harmonic_segment(h.offset, first - 1);
      return Stream::Generator([h, psi, scale, partial, n = BigInt(first)]() mutable {
        partial += detail::reciprocal(h.offset + n);
        Interval v = scale * partial / psi(n);
        ++n;
        return v;
      });
    };
    // H_n >= ln(n+1) and H_n <= ln(n+1) + gamma when k = 0;
    // ln(n+1) - ln(k+1) <= H_{n+k} - H_k <= ln(n+1) when k >= 1.
    Interval log_b = psi.natural() ? Interval(1L) : log(Interval(*psi.base));
    s.convergent = true;
    s.beyond = [h, log_b, scale](const BigInt& n0) -> std::optional<Interval> {
      Interval l = log(Interval(BigInt(n0 + 2)));
      Interval one(1L);
      Interval band = h.offset == 0 ? Interval::hull(one, one + Interval::euler_gamma() / l)
                                    : Interval::hull(one - log(Interval(BigInt(h.offset + 1))) / l, one);
      return scale * log_b * band;
    };
    s.sup_bound = marcinkiewicz_norm(psi, x).value.hi_rational();
    return s;
  }
  RearrangedBlocks rb = rearranged_blocks(x);
  s.open = [rb, psi](const BigInt& first) {
    // Locate the block holding `first`.
    std::size_t b = 0;
    BigInt left = first - 1;
    while (b < rb.blocks.size() && left >= rb.blocks[b].second) {
      left -= rb.blocks[b].second;
      ++b;
    }
    BigInt in_block = b < rb.blocks.size() ? rb.blocks[b].second - left : BigInt(0);
    Rational partial = partial_sum_at(rb, first - 1);
    return Stream::Generator([rb, psi, b, in_block, partial, n = BigInt(first)]() mutable {
      if (b < rb.blocks.size()) {
        partial += rb.blocks[b].first;
        if (--in_block == 0 && ++b < rb.blocks.size()) in_block = rb.blocks[b].second;
      } else {
        partial += rb.tail;
      }
      Interval v = detail::ratio_candidate(psi, n, partial).value;
      ++n;
      return v;
    });
  };
  if (rb.tail == 0 && psi.is_log()) {
    // s_n is eventually the constant S while Psi(n) -> infinity.
    BigInt support = 0;
    Rational total = 0;
    for (const auto& [v, c] : rb.blocks) {
      support += c;
      total += v * Rational(c);
    }
    NormResult top = marcinkiewicz_norm(psi, x);
    s.forced = Rational(0);
    s.convergent = true;
    Interval sup = Interval::hull(Interval{}, top.value);
    s.beyond = [support, total, psi, sup](const BigInt& n0) -> std::optional<Interval> {
      if (n0 < support) return sup;
      return Interval::hull(Interval{}, Interval(total) / psi(BigInt(n0 + 1)));
    };
    s.sup_bound = top.value.hi_rational();
  }
  return s;
}

}  // namespace seqspace
