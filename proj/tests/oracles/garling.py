"""Reference values for the Garling norm sup_{n_1 < n_2 < ...} sum_k |x_{n_k}| / sqrt(k).

x^m = (1, 1/sqrt 2, ..., 1/sqrt m) and y^m is x^m reversed.
Independent O(m^2) dynamic program at 60 digits, cross-checked by
brute force over all increasing selections for m <= 12.
Run: python3 garling.py
"""
from fractions import Fraction
from itertools import combinations
from mpmath import mp, mpf, sqrt

mp.dps = 60


def dp(items):
    # best[j]: largest sum over selections of exactly j items seen so far.
    best = [None] * (len(items) + 1)
    best[0] = mpf(0)
    for i, a in enumerate(items, start=1):
        for j in range(i, 0, -1):
            if best[j - 1] is not None:
                v = best[j - 1] + a / sqrt(j)
                if best[j] is None or v > best[j]:
                    best[j] = v
    return max(b for b in best if b is not None)


def brute(items):
    best = mpf(0)
    m = len(items)
    for r in range(1, m + 1):
        for sel in combinations(range(m), r):
            best = max(best, sum(items[i] / sqrt(k + 1) for k, i in enumerate(sel)))
    return best


def x(m):
    return [1 / sqrt(k) for k in range(1, m + 1)]


if __name__ == "__main__":
    for m in (2, 4, 12):
        assert abs(dp(x(m)) - brute(x(m))) < mpf(10) ** -50
        assert abs(dp(x(m)[::-1]) - brute(x(m)[::-1])) < mpf(10) ** -50
    for m in (2, 3, 4, 12, 100, 1000):
        h = sum(Fraction(1, k) for k in range(1, m + 1))
        print(m, "H_m =", h if m <= 12 else mp.nstr(mpf(h.numerator) / h.denominator, 30),
              "x:", mp.nstr(dp(x(m)), 30), "y:", mp.nstr(dp(x(m)[::-1]), 30))
