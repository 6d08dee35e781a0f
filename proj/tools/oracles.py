#!/usr/bin/env python3
"""Independent reference values, computed with sympy/mpmath.

The printed numbers are frozen into the unit tests. Rerun with
`python3 tools/oracles.py` after changing any of the fixtures below.
"""

import mpmath as mp
import sympy as sp

mp.mp.dps = 50

T3 = sp.Matrix([[1, 1, 2], [0, 1, 2], [0, 0, 1]])
B3 = [0.41421356237309515, 0.7320508075688772, 0.2360679774997898]


def frac(x):
    return x - mp.floor(x)


def step(a, b, x):
    d = len(x)
    return [frac(sum(x[i] * a[i, j] for i in range(d)) + b[j]) for j in range(d)]


def step_back(a, b, x):
    ainv = a.inv()
    d = len(x)
    y = [x[j] - b[j] for j in range(d)]
    return [frac(sum(y[i] * ainv[i, j] for i in range(d))) for j in range(d)]


def f3(x):
    # cos(2 pi z) + 0.5 sin(2 pi (x + y)) - 0.25 cos(2 pi (x - 2 z))
    return (mp.cos(2 * mp.pi * x[2]) + mp.mpf("0.5") * mp.sin(2 * mp.pi * (x[0] + x[1]))
            - mp.mpf("0.25") * mp.cos(2 * mp.pi * (x[0] - 2 * x[2])))


def birkhoff(a, b, f, x, n):
    b = [mp.mpf(v) for v in b]
    x = [mp.mpf(v) for v in x]
    s = mp.mpf(0)
    if n >= 0:
        for _ in range(n):
            s += f(x)
            x = step(a, b, x)
        return s
    for _ in range(-n):
        x = step_back(a, b, x)
        s -= f(x)
    return s


def suspension_flow(a, b, roof, x, r, t):
    b = [mp.mpf(v) for v in b]
    x = [mp.mpf(v) for v in x]
    h = mp.mpf(r) + mp.mpf(t)
    n = 0
    while h >= roof(x):
        h -= roof(x)
        x = step(a, b, x)
        n += 1
    while h < 0:
        x = step_back(a, b, x)
        h += roof(x)
        n -= 1
    return x, h, n


def filiform_matrix(lam, v):
    d = len(v) - 1
    m = sp.zeros(d + 1, d + 1)
    for i in range(d - 1):
        m[i, i + 1] = v[0] * lam[d - 2 - i]
    for i in range(d):
        m[i, d] = v[d - i]
    return m


def from_filiform_matrix(lam, m):
    d = m.shape[0] - 1
    v = [sp.Integer(0)] * (d + 1)
    v[0] = m[0, 1] / lam[d - 2] if d >= 2 else 0
    for i in range(d):
        v[d - i] = m[i, d]
    return v


def nil_exp(m):
    n = m.shape[0]
    out = sp.eye(n)
    term = sp.eye(n)
    for j in range(1, n):
        term = term * m / j
        out += term
    return out


def nil_log(u):
    n = u.shape[0]
    x = u - sp.eye(n)
    out = sp.zeros(n, n)
    p = sp.eye(n)
    for j in range(1, n):
        p = p * x
        out += p * sp.Rational((-1) ** (j + 1), j)
    return out


def bch(lam, v, w):
    return from_filiform_matrix(lam, nil_log(nil_exp(filiform_matrix(lam, v)) * nil_exp(filiform_matrix(lam, w))))


def fmt(x):
    return mp.nstr(x, 20, min_fixed=-mp.inf, max_fixed=mp.inf) if not isinstance(x, int) else str(x)


def main():
    print("// power_matrix, T3 example, N = 1000")
    print(T3 ** 1000)
    print("// sum_{j<10} (A^T)^j and sum_{j=1}^{10} (A^T)^-j")
    print(sum((T3.T ** j for j in range(10)), sp.zeros(3, 3)))
    print(sum((T3.T.inv() ** j for j in range(1, 11)), sp.zeros(3, 3)))

    x0 = [0.1, 0.2, 0.3]
    print("// Birkhoff sums of f3 at x0")
    for n in (1, 10, 137, -1, -25):
        print(n, fmt(birkhoff(T3, B3, f3, x0, n)))

    a2 = sp.Matrix([[1, 1], [0, 1]])
    b2 = [0.41421356237309515, 0.57735026918962584]
    roof = lambda x: 1 + mp.mpf("0.4") * mp.cos(2 * mp.pi * x[1])
    print("// suspension flow, 2-d, roof 1 + 0.4 cos(2 pi y), from ((0.3, 0.7), 0.2)")
    for t in (50.5, -37.25, 0.79):
        x, h, n = suspension_flow(a2, b2, roof, [0.3, 0.7], 0.2, t)
        print(t, fmt(x[0]), fmt(x[1]), fmt(h), n)

    print("// BCH products, E = (1, 2, 6)")
    lam = [sp.Integer(2), sp.Integer(3)]
    u = [sp.Rational(1, 2), sp.Rational(-3, 4), sp.Rational(5, 7), sp.Rational(2, 9)]
    v = [sp.Rational(-2, 3), sp.Rational(1, 5), sp.Rational(7, 8), sp.Rational(-1, 6)]
    print(bch(lam, u, v))
    print(bch(lam, v, u))

    print("// Poincare section, E = (1, 2, 6), w = (1, w1, w2, w3)")
    w = [sp.Integer(1), sp.Rational(41421356237309515, 10 ** 17), sp.Rational(3, 10), sp.Rational(1, 5)]
    sec = bch(lam, [sp.Integer(-1), 0, 0, 0], w)
    print([mp.nstr(mp.mpf(sp.N(c, 40)), 20) for c in sec])
    print("// same with w0 = -2")
    w = [sp.Integer(-2), sp.Rational(41421356237309515, 10 ** 17), sp.Rational(3, 10), sp.Rational(1, 5)]
    sec = bch(lam, [sp.Integer(1), 0, 0, 0], [c / 2 for c in w])
    print([mp.nstr(mp.mpf(sp.N(c, 40)), 20) for c in sec])


if __name__ == "__main__":
    main()
