"""Truncated power series with exact rational coefficients.

A series of order k is a list ``[c0, c1, ..., ck]`` standing for
c0 + c1 t + ... + ck t^k mod t^{k+1}.  These are the independent oracle
for everything jet-theoretic: the Taylor coefficients of a curve are
exactly its jet coordinates z^{(p)}.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .errors import NonInvertibleCurve

Series = List[Fraction]


def series(coeffs: Sequence, k: int) -> Series:
    out = [Fraction(c) for c in coeffs[: k + 1]]
    return out + [Fraction(0)] * (k + 1 - len(out))


def s_add(a: Series, b: Series) -> Series:
    return [x + y for x, y in zip(a, b)]


def s_sub(a: Series, b: Series) -> Series:
    return [x - y for x, y in zip(a, b)]


def s_scale(a: Series, c) -> Series:
    c = Fraction(c)
    return [x * c for x in a]


def s_mul(a: Series, b: Series) -> Series:
    n = len(a)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def s_pow(a: Series, e: int) -> Series:
    out = series([1], len(a) - 1)
    for _ in range(e):
        out = s_mul(out, a)
    return out


def s_const(c, k: int) -> Series:
    return series([c], k)


def s_compose(f: Series, g: Series) -> Series:
    """f(g(t)); requires g(0) = 0."""
    if g[0] != 0:
        raise ValueError("inner series must vanish at 0")
    k = len(f) - 1
    out = s_const(0, k)
    power = s_const(1, k)
    for c in f:
        if c:
            out = s_add(out, s_scale(power, c))
        power = s_mul(power, g)
    return out


def s_inverse(a: Series) -> Series:
    """Multiplicative inverse, requires a(0) != 0."""
    if a[0] == 0:
        raise ZeroDivisionError("series has no inverse")
    n = len(a)
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for m in range(1, n):
        s = sum(a[i] * out[m - i] for i in range(1, m + 1))
        out[m] = -s / a[0]
    return out


def s_revert(f: Series) -> Series:
    """Compositional inverse g with f(g(t)) = t, for f(0) = 0, f'(0) != 0."""
    if f[0] != 0:
        raise ValueError("series must vanish at 0")
    if len(f) < 2 or f[1] == 0:
        raise NonInvertibleCurve("f'(0) = 0, the series is not invertible")
    k = len(f) - 1
    g = series([0, 1 / f[1]], k)
    # Newton-free fixed point: fix one coefficient per round
    for m in range(2, k + 1):
        err = s_compose(f, g)
        g[m] -= err[m] / f[1]
    return g


def s_derivative(a: Series) -> Series:
    """d/dt, truncated to the same length (top coefficient becomes 0)."""
    return [a[i + 1] * (i + 1) for i in range(len(a) - 1)] + [Fraction(0)]


def s_log(a: Series) -> Series:
    """log(a) - log(a(0)): the part of the logarithm with zero constant term."""
    if a[0] == 0:
        raise ZeroDivisionError("log of a series vanishing at 0")
    k = len(a) - 1
    # (log a)' = a'/a, then integrate
    q = s_mul(s_derivative(a), s_inverse(a))
    out = [Fraction(0)] * (k + 1)
    for i in range(1, k + 1):
        out[i] = q[i - 1] / i
    return out
