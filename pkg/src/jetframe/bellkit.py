"""Bell polynomials and the standard <-> geometric jet coordinate changes.

B_{p,q}(h) = sum over mu in N^k with ||mu|| = p and |mu| = q of
(|mu|! / mu!) h^{(1)mu_1} ... h^{(k)mu_k}, where |mu| = sum mu_i and
||mu|| = sum i mu_i.  With Taylor-coefficient jets this is exactly the
coefficient of s^p in (h(s) - h(0))^q, so the Faa di Bruno formula reads

    g^{(p)} = sum_q B_{p,q}(h) (g o h^{-1})^{(q)} o h.

Geometric jets z_i^{[p]} are the Taylor coefficients of z_i as a function of
z_1, and t^{[p]} those of t as a function of z_1.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Tuple

from .jetcalc import JetConfig, VectorField, adjoint
from .polycore import (FracPoly, as_frac, GeoJet, Jet, LogWJet, Poly, TJet, VarId, W, WJet, Z)


def weighted_partitions(p: int, q: int, k: int | None = None) -> List[Tuple[int, ...]]:
    """All mu in N^k with sum i*mu_i = p and sum mu_i = q (k defaults to p)."""
    if k is None:
        k = max(p, 1)
    out = []

    def rec(i, rem_p, rem_q, acc):
        if i > k:
            if rem_p == 0 and rem_q == 0:
                out.append(tuple(acc))
            return
        for m in range(min(rem_q, rem_p // i) + 1):
            acc.append(m)
            rec(i + 1, rem_p - i * m, rem_q - m, acc)
            acc.pop()

    rec(1, p, q, [])
    return out


def _multinomial(mu) -> int:
    out = factorial(sum(mu))
    for m in mu:
        out //= factorial(m)
    return out


def bell(p: int, q: int, jet: Callable[[int], Poly] | None = None) -> Poly:
    """B_{p,q}(h); ``jet(m)`` returns the polynomial standing for h^{(m)}.

    Defaults to the jets of z1.  Returns 0 outside 1 <= q <= p (and
    B_{0,0} = 1).
    """
    if jet is None:
        jet = _z1_jet
    if p == 0 and q == 0:
        return Poly.const(1)
    if q < 1 or q > p:
        return Poly()
    out = Poly()
    for mu in weighted_partitions(p, q):
        term = Poly.const(_multinomial(mu))
        for i, m in enumerate(mu, start=1):
            if m:
                term = term * jet(i) ** m
        out = out + term
    return out


def _z1_jet(m: int) -> Poly:
    return Poly.var(Jet(1, m))


def _t_jet(m: int) -> Poly:
    return Poly.var(TJet(m))


@lru_cache(maxsize=None)
def bell_z1(p: int, q: int) -> Poly:
    return bell(p, q, _z1_jet)


@lru_cache(maxsize=None)
def bell_t(p: int, q: int) -> Poly:
    return bell(p, q, _t_jet)


def bell_matrix_z1(k: int) -> List[List[Poly]]:
    """[B_{p,q}(z1)]_{p,q=1..k} (row p, column q)."""
    k = k.k if isinstance(k, JetConfig) else k
    return [[bell_z1(p, q) for q in range(1, k + 1)] for p in range(1, k + 1)]


def bell_matrix_t(k: int) -> List[List[Poly]]:
    k = k.k if isinstance(k, JetConfig) else k
    return [[bell_t(p, q) for q in range(1, k + 1)] for p in range(1, k + 1)]


def matrix_to_json(M) -> list:
    return [e.to_json() for row in M for e in row]


@lru_cache(maxsize=None)
def bell_inverse_std(k: int) -> Tuple[Tuple[FracPoly, ...], ...]:
    """The inverse of B(z1) as a lower triangular FracPoly matrix (0-based)."""
    B = [[FracPoly(bell_z1(p, q)) for q in range(1, k + 1)] for p in range(1, k + 1)]
    inv = [[FracPoly() for _ in range(k)] for _ in range(k)]
    # forward substitution column by column; B[p][p] = z1'^(p+1)
    for col in range(k):
        for p in range(col, k):
            rhs = FracPoly(1) if p == col else FracPoly()
            for q in range(col, p):
                rhs = rhs - B[p][q] * inv[q][col]
            inv[p][col] = rhs * FracPoly(1, p + 1)
    return tuple(tuple(r) for r in inv)


@lru_cache(maxsize=None)
def t_std(k: int) -> Tuple[FracPoly, ...]:
    """t^{[1]}, ..., t^{[k]} in standard coordinates, from sum_q B_{p,q}(z1) t^{[q]} = delta_{p,1}."""
    inv = bell_inverse_std(k)
    return tuple(inv[p][0] for p in range(k))


def std_from_geo(cfg: JetConfig) -> Dict[VarId, FracPoly]:
    """z_i^{[q]} (i >= 2) and t^{[q]} written in the standard jets."""
    k = cfg.k
    inv = bell_inverse_std(k)
    out: Dict[VarId, FracPoly] = {}
    for q in range(1, k + 1):
        out[TJet(q)] = t_std(k)[q - 1]
        for i in range(2, cfg.n + 1):
            f = FracPoly()
            for p in range(1, q + 1):
                if inv[q - 1][p - 1]:
                    f = f + inv[q - 1][p - 1] * Poly.var(Jet(i, p))
            out[GeoJet(i, q)] = f
    return out


def geo_from_std(cfg: JetConfig) -> Dict[VarId, Poly]:
    """z_i^{(p)} = sum_q B_{p,q}(z1) z_i^{[q]} for i >= 2 (z1 jets are kept)."""
    out: Dict[VarId, Poly] = {}
    for i in range(2, cfg.n + 1):
        for p in range(1, cfg.k + 1):
            f = Poly()
            for q in range(1, p + 1):
                f = f + bell_z1(p, q) * Poly.var(GeoJet(i, q))
            out[Jet(i, p)] = f
    return out


def to_standard(f, cfg: JetConfig) -> FracPoly:
    """Rewrite an expression in geometric coordinates in the standard ones."""
    return as_frac(f).substitute(std_from_geo(cfg))


def to_geometric(f: Poly, cfg: JetConfig) -> Poly:
    return f.substitute(geo_from_std(cfg))


def geo_field(cfg: JetConfig, i: int, p: int) -> VectorField:
    """d/dz_i^{[p]} = sum_{q>=p} B_{q,p}(z1) d/dz_i^{(q)} in standard coordinates.

    p = 0 gives d/dz_i.
    """
    if p == 0:
        return VectorField.basis(Z(i))
    return VectorField({Jet(i, q): bell_z1(q, p) for q in range(p, cfg.k + 1)})


def vertical_T(cfg: JetConfig, ell: int) -> VectorField:
    """T_ell = -sum_i sum_{p=1}^{k-ell+1} p z_i^{(p)} d/dz_i^{(p+ell-1)}.

    In the logarithmic case the Taylor coefficients of log w_j transform like
    those of any other coordinate and get the same terms.
    """
    k = cfg.k
    if not 1 <= ell <= k:
        raise ValueError("ell must be in 1..k")
    coeffs: Dict[VarId, Poly] = {}
    for i in range(1, cfg.n + 1):
        for p in range(1, k - ell + 2):
            coeffs[Jet(i, p + ell - 1)] = Poly.var(Jet(i, p)).scale(-p)
    if cfg.is_log:
        for j in range(1, cfg.c + 1):
            for p in range(1, k - ell + 2):
                coeffs[LogWJet(j, p + ell - 1)] = Poly.var(LogWJet(j, p)).scale(-p)
    return VectorField(coeffs)


def vertical_T_lhs(k: int, ell: int) -> VectorField:
    """sum_m B_{m,ell}[t] d/dt^{[m]} in the abstract t^{[.]} variables."""
    return VectorField({TJet(m): bell_t(m, ell) for m in range(ell, k + 1)})


def tgt_sym_identity(k: int, ell: int, p: int, q: int, verbatim: bool = False) -> Tuple[Poly, Poly]:
    """Both sides of (sum_m B_{m,ell}[t] d/dt^{[m]}) B_{p,q}[t] = q B_{p,q+ell-1}[t].

    The field sends the series t(s) to t(s)^ell, hence t(s)^q to
    q t(s)^{q+ell-1}.  ``verbatim=True`` uses the factor ell instead of q,
    which only holds when q = ell.
    """
    lhs = vertical_T_lhs(k, ell).apply(bell_t(p, q))
    rhs = bell_t(p, q + ell - 1).scale(ell if verbatim else q)
    return lhs.to_poly(), rhs


def log_field(cfg: JetConfig, j: int, p: int) -> VectorField:
    """d/d(log w_j)^{[p]} in the (w_j, (log w_j)^{(m)}) coordinates.

    p = 0 gives w_j d/dw_j; p >= 1 gives sum_{m>=p} B_{m,p}(z1) d/d(log w_j)^{(m)}.
    """
    if p == 0:
        return VectorField({W(j): Poly.var(W(j))})
    return VectorField({LogWJet(j, m): bell_z1(m, p) for m in range(p, cfg.k + 1)})


def log_dual_field(k: int, j: int, p: int) -> VectorField:
    """d/d(log w)^{[p]} = sum_{q>=p} w^{[q-p]} d/dw^{[q]} in geometric w-jets."""
    return VectorField({WJet(j, q): Poly.var(WJet(j, q - p)) for q in range(p, k + 1)})


def geometric_D_w(k: int, j: int) -> VectorField:
    """The w-part of the geometric total derivative: sum_{p<k} (p+1) w^{[p+1]} d/dw^{[p]}."""
    return VectorField({WJet(j, p): Poly.var(WJet(j, p + 1)).scale(p + 1) for p in range(k)})


def log_dual_adjoint(k: int, j: int, p: int) -> Tuple[VectorField, VectorField]:
    """[D, d/d(log w)^{[p]}] next to the closed form -p d/d(log w)^{[p-1]} + (k+1) w^{[k+1-p]} d/dw^{[k]}."""
    D = geometric_D_w(k, j)
    lhs = adjoint(D, log_dual_field(k, j, p))
    rhs = log_dual_field(k, j, p - 1).scale(-p) + \
        VectorField({WJet(j, k): Poly.var(WJet(j, k + 1 - p)).scale(k + 1)})
    return lhs, rhs
