"""Reference values for the oscillating element of m_Psi, Psi(n) = log(n + 1).

Exact recurrence at 120 digits, no rounding of c_k:
  N_1 = 1, c_1 = log 2
  even k: N_k = (T+1)^4 - (T+1), c_k = min(c_{k-1}, log(T_k + 1) / (4 N_k))
  odd k:  N_k = least n with (S + n c_{k-1}) / log(T + n + 1) > 1,
          c_k = (log(T_k + 1) - S) / N_k
Run: python3 oscillation.py [stages]
"""
import sys
from mpmath import mp, mpf, log

mp.dps = 120


def first_crossing(s, c, t):
    f = lambda n: s + n * c - log(t + n + 1)
    hi = 1
    while f(hi) <= 0:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def construct(stages):
    out = []
    t, s, c = 0, mpf(0), None
    for k in range(1, stages + 1):
        if k == 1:
            n, ck = 1, log(2)
        elif k % 2 == 0:
            n = (t + 1) ** 4 - (t + 1)
            ck = min(c, log(t + n + 1) / (4 * n))
        else:
            n = first_crossing(s, c, t)
            ck = (log(t + n + 1) - s) / n
        t += n
        s += n * ck
        c = ck
        out.append((k, n, t, ck, s / log(t + 1)))
    return out


if __name__ == "__main__":
    stages = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    for k, n, t, ck, ratio in construct(stages):
        print(k, n, t, mp.nstr(ck, 40), mp.nstr(ratio, 40))
