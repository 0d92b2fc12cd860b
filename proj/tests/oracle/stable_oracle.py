#!/usr/bin/env python3
"""High-precision reference values for the symmetric stable density.

The density is the Zolotarev angular integral evaluated with mpmath at 40
digits, with the angle interval split at level sets of the kernel. x- and
alpha-derivatives are numerical derivatives of that integral (mpmath.diff),
so no series or closed-form derivative enters the reference values.

    python3 stable_oracle.py > ../unit/oracle_values.inc

regenerates the frozen table used by the C++ unit tests.
"""
import sys

import mpmath as mp

mp.mp.dps = 40


def f_zol(x, a):
    x = abs(mp.mpf(x))
    a = mp.mpf(a)
    if a == 1:
        return 1 / (mp.pi * (1 + x * x))
    if x == 0:
        return mp.gamma(1 + 1 / a) / mp.pi
    b = a / (a - 1)

    def lg(p):
        return b * mp.log(x * mp.cos(p) / mp.sin(a * p)) + mp.log(mp.cos((a - 1) * p) / mp.cos(p))

    def integrand(p):
        if p <= 0 or p >= mp.pi / 2:
            return mp.mpf(0)
        v = lg(p)
        if v > 1000:
            return mp.mpf(0)
        g = mp.exp(v)
        return g * mp.exp(-g)

    pts = [mp.mpf(0)]
    lo, hi = mp.mpf(10) ** -30, mp.pi / 2 - mp.mpf(10) ** -30
    for c in [mp.mpf(10) ** k for k in range(-6, 4)] + [0.5, 2, 3]:
        lc = mp.log(c)
        flo, fhi = lg(lo) - lc, lg(hi) - lc
        if flo * fhi < 0:
            A, B = lo, hi
            for _ in range(140):
                M = (A + B) / 2
                if (lg(M) - lc < 0) == (flo < 0):
                    A = M
                else:
                    B = M
            pts.append((A + B) / 2)
    if a > 1.9:
        d = 2 - a
        for s in [d / 10, d, 10 * d, 100 * d]:
            if s < 1:
                pts.append(mp.pi / 2 - s)
    pts.append(mp.pi / 2)
    pts = sorted(set(pts))
    return a / (mp.pi * abs(a - 1) * x) * mp.quad(integrand, pts)


def quantity(q, x, a):
    if q == "f":
        return f_zol(x, a)
    if q == "df_dx":
        return mp.diff(lambda t: f_zol(t, a), x, 1)
    if q == "d2f_dx2":
        return mp.diff(lambda t: f_zol(t, a), x, 2)
    if q == "df_dalpha":
        return mp.diff(lambda s: f_zol(x, s), a, 1)
    if q == "d2f_dalpha2":
        return mp.diff(lambda s: f_zol(x, s), a, 2)
    raise ValueError(q)


QUANTITIES = ["f", "df_dx", "d2f_dx2", "df_dalpha", "d2f_dalpha2"]

# (alpha, x) points covering the integral, series and boundary regimes
GRID = [(a, x) for a in (0.3, 0.5, 0.8, 1.2, 1.5, 1.8, 1.95) for x in (0.05, 0.7, 1.5, 4.0, 20.0)]
EXTRA = [
    (0.995, 0.5), (1.005, 0.5), (1.005, 3.0), (1.02, 1.0), (0.98, 1.0),
    (0.5, 1e-4), (1.5, 1e-4), (0.25, 2.0), (1.99, 2.5),
]
F_ONLY = [(0.1, 0.01), (0.1, 1.0), (0.15, 3.0), (1.99999, 3.0), (1.99999, 8.0),
          (1.99999, 10.0), (1.99999, 20.0), (1.9999, 12.0), (0.7, 500.0), (1.3, 300.0)]


def main():
    out = sys.stdout
    out.write("// Generated by tests/oracle/stable_oracle.py; do not edit.\n")
    out.write("// {quantity, x, alpha, value}\n")
    for a, x in GRID + EXTRA:
        for q in QUANTITIES:
            v = quantity(q, x, a)
            out.write('{"%s", %s, %s, %s},\n' % (q, repr(x), repr(a), mp.nstr(v, 20)))
            out.flush()
    for a, x in F_ONLY:
        v = quantity("f", x, a)
        out.write('{"f", %s, %s, %s},\n' % (repr(x), repr(a), mp.nstr(v, 20)))
        out.flush()


if __name__ == "__main__":
    main()
