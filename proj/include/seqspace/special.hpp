#pragma once

// Harmonic numbers and the closed-form bounds built on them.

#include "numeric.hpp"

namespace seqspace {

inline constexpr unsigned long kDirectHarmonicLimit = 16384;

namespace detail {

/// 1/n as an interval.
inline Interval reciprocal(const BigInt& n) { return Interval(Rational(BigInt(1), n)); }

inline Interval power(const Interval& base, unsigned e) {
  Interval r(1L);
  for (unsigned i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace detail

/// Encloses H_n = 1 + 1/2 + ... + 1/n.
///
/// Small n are summed term by term. Past the limit the Euler-Maclaurin
/// series is cut after the n^-10 term; the remainder has the sign and at
/// most the size of the next term, 691/(32760 n^12).
inline Interval harmonic_number(const BigInt& n) {
  if (n < 0) throw InvalidInput("harmonic number of a negative index");
  if (n <= kDirectHarmonicLimit) {
    Interval h;
    for (unsigned long k = n.get_ui(); k >= 1; --k) h += detail::reciprocal(BigInt(k));
    return h;
  }
  Interval inv = detail::reciprocal(n);
  Interval inv2 = inv * inv;
  static const long kDen[] = {12, 120, 252, 240, 132};
  Interval h = log(Interval(n)) + Interval::euler_gamma() + inv * Interval(Rational(1, 2));
  Interval p = inv2;
  for (int i = 0; i < 5; ++i) {
    Interval term = p * Interval(Rational(1, kDen[i]));
    if (i % 2 == 0) {
      h -= term;
    } else {
      h += term;
    }
    p = p * inv2;
  }
  // p is now n^-12.
  Interval rest = p * Interval(Rational(691, 32760));
  Interval zero;
  return h + Interval::hull(zero, rest);
}

/// Encloses H_{n+k} - H_k = 1/(k+1) + ... + 1/(k+n).
inline Interval harmonic_segment(const BigInt& k, const BigInt& n) {
  if (n <= 0) return Interval{};
  if (n <= kDirectHarmonicLimit) {
    Interval h;
    for (unsigned long j = n.get_ui(); j >= 1; --j) h += detail::reciprocal(k + j);
    return h;
  }
  return harmonic_number(k + n) - harmonic_number(k);
}

}  // namespace seqspace
