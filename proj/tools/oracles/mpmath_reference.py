#!/usr/bin/env python3
"""Offline reference values at 60+ significant digits.

Everything here is computed straight from the defining q-series and closed
forms with mpmath, independently of the C++ evaluation paths. Run from the
repository root:

    python3 tools/oracles/mpmath_reference.py

It prints the scalar anchors frozen into tests/ and rewrites
tests/fixtures/cross_term_oracle.csv.
"""
import csv

import mpmath as mp

mp.mp.dps = 80


def theta(kind, v, log_nome):
    # Series in the (v | tau) convention: argument pi*v, nome h = exp(log_nome).
    h = mp.e ** log_nome
    z = mp.pi * v
    idx = {1: 1, 2: 2, 3: 3, 0: 4}[kind]
    return mp.jtheta(idx, z, h)


def slit_geometry(a):
    a = mp.mpf(a)
    h = mp.e ** (4 * a)
    L = mp.jtheta(2, 0, h) / mp.jtheta(3, 0, h)
    # 1-L from the transformed nome, summed directly (no cancellation).
    hp = mp.e ** (mp.pi ** 2 / (4 * a))
    th3p = 1 + 2 * mp.nsum(lambda n: hp ** (n * n), [1, mp.inf])
    diff = 4 * mp.nsum(lambda k: hp ** ((2 * k + 1) ** 2), [0, mp.inf])
    return L, diff / th3p


def endpoint_u(a, x):
    a = mp.mpf(a)
    x = mp.mpf(x)
    h = mp.e ** (4 * a)
    v = mp.mpf(1) / 2 - x / (2 * mp.pi) + 1j * abs(a) / mp.pi
    w1 = theta(1, v, 4 * a) / theta(0, v, 4 * a)
    u = 1j * (1 + w1) / (1 - w1)
    return u, 1 - w1


def cross_direct(one_minus_L, u, b):
    oml = mp.mpf(one_minus_L)
    u = mp.mpf(u)
    b = mp.mpf(b)
    L = 1 - oml
    r = (oml / (1 + L)) ** 2
    s1 = r * u * u
    s2 = r / (u * u)
    kappa = oml ** 4 / (8 * (L + L ** 3))
    Q = 1 + s1 + s2 + kappa * (2 + s1 + s2)
    beta = 2 * b
    val = (1 - (1 + s2) ** (-beta)) + (1 - (1 + s1) ** (-beta)) - 1 + Q ** (-beta)
    return val, s1


def g17(x):
    return mp.nstr(x, 17, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


def main():
    print("theta3(0) at log_nome=-pi :", mp.nstr(theta(3, 0, -mp.pi), 40))
    print("closed form pi^(1/4)/Gamma(3/4):", mp.nstr(mp.pi ** 0.25 / mp.gamma(0.75), 40))
    for a in (-mp.pi / 4, -0.5, -0.01, -1, -0.3, -0.8):
        L, oml = slit_geometry(a)
        print(f"a={mp.nstr(a, 8)}  L={mp.nstr(L, 25)}  1-L={mp.nstr(oml, 25)}  log(1-L)={mp.nstr(mp.log(oml), 25)}")
    for a, x in ((-0.1, mp.pi / 2), (-0.05, mp.pi / 2), (-1, mp.pi / 2), (-0.8, mp.pi / 2)):
        u, omw = endpoint_u(a, x)
        print(f"a={a} x={mp.nstr(x, 8)}  u={mp.nstr(u, 25)}  log|u|={mp.nstr(mp.log(abs(u)), 25)}  1-w1={mp.nstr(omw, 20)}")

    # Cross-term fixture: (a, x, b) configurations whose s1 lies in [1e-6, 1e-2].
    configs = [
        (-0.8, mp.pi / 2, mp.mpf(5) / 8),
        (-0.6, mp.pi / 2, 1),
        (-0.5, 2.0, mp.mpf(5) / 8),
        (-0.4, 2.5, 1),
        (-0.35, mp.pi / 2, 2),
        (-0.3, 2.0, mp.mpf("1.2")),
        (-0.25, mp.pi / 2, mp.mpf(5) / 8),
        (-0.2, 1.2, 1),
        (-0.15, 1.0, mp.mpf(5) / 4),
        (-0.12, 0.8, mp.mpf(5) / 8),
        (-0.1, 0.95, 1),
        (-0.45, 2.2, mp.mpf("0.7")),
    ]
    rows = []
    for a, x, b in configs:
        _, oml = slit_geometry(a)
        u, _ = endpoint_u(a, x)
        oml17 = mp.mpf(g17(oml))
        u17 = mp.mpf(g17(u.real))
        val, s1 = cross_direct(oml17, u17, b)
        in_band = int(mp.mpf("1e-6") <= s1 <= mp.mpf("1e-2"))
        rows.append((g17(oml17), g17(u17), g17(mp.mpf(b)), mp.nstr(val, 40), mp.nstr(s1, 6), in_band))
        print(f"cross a={a} x={mp.nstr(x, 6)} b={mp.nstr(b, 4)} s1={mp.nstr(s1, 4)} value={mp.nstr(val, 20)}")
    with open("tests/fixtures/cross_term_oracle.csv", "w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["one_minus_L", "u", "b", "cross", "s1", "in_band"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
