"""Jet-space instances, formal differentiation, adjoint actions and Lambda maps.

The ambient space is the affine chart C^N x J_k(C^n) with jet coordinates
z_i^{(p)} (Taylor coefficients, so z_i^{(p)} = f_i^{(p)}(0) / p!).  The
formal differentiation

    D_t = sum_i sum_{p<k} (p+1) z_i^{(p+1)} d/dz_i^{(p)}

mimics d/dt along curves, and D_{z1} = D_t / z1' on the chart z1' != 0.

In the logarithmic case each component j carries an extra variable w_j and
the Taylor coefficients (log w_j)^{(p)}, p = 1..k, of log w_j; there

    D_t w_j = w_j (log w_j)^{(1)},   D_t (log w_j)^{(p)} = (p+1) (log w_j)^{(p+1)}.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import ConfigError, NonInvertibleCurve
from .polycore import (FracPoly, GeoJet, Jet, Kind, LogWJet, Param, Poly, VarId,
                       W, Z, Z1P, as_frac, var_from_json, var_to_json, zpow)
from . import series as S

COMPACT = "compact"
LOG = "log"


# ---------------------------------------------------------------------------
# multi-indices

def multi_indices(n: int, d: int) -> List[Tuple[int, ...]]:
    """All alpha in N^n with |alpha| <= d, graded then lexicographic."""
    out = []
    for total in range(d + 1):
        out.extend(sorted(_compositions(n, total), reverse=True))
    return out


def _compositions(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def mi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mi_le(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def unit(n: int, i: int, m: int = 1) -> Tuple[int, ...]:
    """m * 1_i (i is 1-based)."""
    return tuple(m if r == i - 1 else 0 for r in range(n))


def mi_binom(lam, gam) -> int:
    """lambda! / (gamma! (lambda - gamma)!) = prod of binomials."""
    out = 1
    for l, g in zip(lam, gam):
        out *= comb(l, g)
    return out


def sub_indices(lam) -> Iterable[Tuple[int, ...]]:
    """All gamma <= lambda."""
    return product(*(range(l + 1) for l in lam))


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class JetConfig:
    """One problem instance.

    ``degrees`` holds d_1..d_c.  ``hat_alpha`` (compact case) holds, per
    component, the multi-index whose coefficient is normalized to 1; it
    defaults to d_j * 1_n.  ``chart`` picks the reference coordinate z_chart
    with z_chart' != 0; constructions are done for chart 1 and relabeled.
    """
    n: int
    k: int
    degrees: Tuple[int, ...]
    case: str = COMPACT
    hat_alpha: Tuple[Tuple[int, ...], ...] | None = None
    chart: int = 1

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.k < 1:
            raise ConfigError("the jet order k must be at least 1")
        if not self.degrees:
            raise ConfigError("at least one degree is required")
        if any(d < 1 for d in self.degrees):
            raise ConfigError("degrees must be at least 1")
        if self.case not in (COMPACT, LOG):
            raise ConfigError(f"unknown case {self.case!r}")
        if not 1 <= self.chart <= self.n:
            raise ConfigError("chart index out of range")
        if self.case == COMPACT:
            if self.n < 2:
                raise ConfigError("the compact case needs n >= 2 (hat alpha must have alpha_1 = 0)")
            if self.hat_alpha is None:
                ha = tuple(unit(self.n, self._default_hat_coord(), d) for d in self.degrees)
                object.__setattr__(self, "hat_alpha", ha)
            else:
                ha = tuple(tuple(a) for a in self.hat_alpha)
                object.__setattr__(self, "hat_alpha", ha)
            if len(self.hat_alpha) != len(self.degrees):
                raise ConfigError("one hat alpha per component is required")
            for a, d in zip(self.hat_alpha, self.degrees):
                if len(a) != self.n or sum(a) != d or any(x < 0 for x in a):
                    raise ConfigError(f"hat alpha {a} must be a multi-index of length {d}")
                if a[self.chart - 1] != 0:
                    raise ConfigError("hat alpha must have zero exponent on the chart coordinate")
        else:
            object.__setattr__(self, "hat_alpha", None)
        if self.k >= min(self.degrees):
            warnings.warn(f"k = {self.k} is not smaller than min degree {min(self.degrees)}; "
                          "the global generation statement assumes k < d", stacklevel=3)

    def _default_hat_coord(self) -> int:
        return self.n if self.chart != self.n else 1

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def is_log(self) -> bool:
        return self.case == LOG

    def all_alphas(self, j: int) -> List[Tuple[int, ...]]:
        return multi_indices(self.n, self.degrees[j - 1])

    def params(self, j: int) -> List[Tuple[int, ...]]:
        """Multi-indices alpha with a free coefficient a_alpha^j."""
        alphas = self.all_alphas(j)
        if self.case == COMPACT:
            ha = self.hat_alpha[j - 1]
            alphas = [a for a in alphas if a != ha]
        return alphas

    def param_vars(self, j: int | None = None) -> List[VarId]:
        js = range(1, self.c + 1) if j is None else [j]
        return [Param(jj, a) for jj in js for a in self.params(jj)]

    def jet_vars(self) -> List[VarId]:
        return [Jet(i, p) for i in range(1, self.n + 1) for p in range(self.k + 1)]

    def log_vars(self) -> List[VarId]:
        if not self.is_log:
            return []
        out = []
        for j in range(1, self.c + 1):
            out.append(W(j))
            out.extend(LogWJet(j, p) for p in range(1, self.k + 1))
        return out

    def coordinates(self) -> List[VarId]:
        """All ambient coordinates in canonical order."""
        return sorted(self.jet_vars() + self.param_vars() + self.log_vars())

    def ambient_dimension(self) -> int:
        return len(self.coordinates())

    def with_chart(self, chart: int) -> "JetConfig":
        return JetConfig(self.n, self.k, self.degrees, self.case, None, chart)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "degrees": list(self.degrees), "case": self.case,
                "hat_alpha": None if self.hat_alpha is None else [list(a) for a in self.hat_alpha],
                "chart": self.chart}

    @classmethod
    def from_json(cls, d) -> "JetConfig":
        ha = d.get("hat_alpha")
        return cls(d["n"], d["k"], tuple(d["degrees"]), d.get("case", COMPACT),
                   None if ha is None else tuple(tuple(a) for a in ha), d.get("chart", 1))


# ---------------------------------------------------------------------------
# defining polynomials

def a_part(cfg: JetConfig, j: int) -> Poly:
    """sum_alpha a_alpha z^alpha for component j (a_hat = 1 in the compact case)."""
    out = Poly()
    ha = cfg.hat_alpha[j - 1] if cfg.case == COMPACT else None
    for a in cfg.all_alphas(j):
        if a == ha:
            out = out + zpow(a)
        else:
            out = out + Poly.var(Param(j, a)) * zpow(a)
    return out


def universal_poly(cfg: JetConfig, j: int = 1) -> Poly:
    """P_j (compact) or Q_j = w_j^{d_j} - sum a_alpha z^alpha (logarithmic)."""
    if not 1 <= j <= cfg.c:
        raise ConfigError(f"component {j} out of range")
    if cfg.case == COMPACT:
        return a_part(cfg, j)
    return Poly.var(W(j), cfg.degrees[j - 1]) - a_part(cfg, j)


def param_poly(cfg: JetConfig, j: int = 1) -> Poly:
    """Alias kept for readability in the field constructors."""
    return a_part(cfg, j)


# ---------------------------------------------------------------------------
# vector fields

class VectorField:
    """A derivation sum_v c_v d/dv with FracPoly coefficients."""
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[VarId, object] | None = None):
        out = {}
        for v, c in (coeffs or {}).items():
            c = as_frac(c)
            if c:
                out[v] = c
        self.coeffs: Dict[VarId, FracPoly] = out

    @classmethod
    def basis(cls, v: VarId) -> "VectorField":
        return cls({v: FracPoly(1)})

    def __getitem__(self, v):
        return self.coeffs.get(v, FracPoly())

    def apply(self, f) -> FracPoly:
        f = as_frac(f)
        if not f:
            return FracPoly()
        fv = f.variables()
        out = FracPoly()
        for v, c in self.coeffs.items():
            if v in fv:
                out = out + c * f.partial(v)
        return out

    __call__ = apply

    def __add__(self, other: "VectorField") -> "VectorField":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return VectorField(out)

    def __neg__(self):
        return VectorField({v: -c for v, c in self.coeffs.items()})

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, f) -> "VectorField":
        """Multiply every coefficient by a function (number, Poly or FracPoly)."""
        f = as_frac(f)
        return VectorField({v: c * f for v, c in self.coeffs.items()})

    def __rmul__(self, f):
        return self.scale(f)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def variables(self) -> List[VarId]:
        return sorted(self.coeffs)

    def pole_order(self) -> int:
        """Max pole order over the coefficients (the direction carries weight 0)."""
        return max((c.pole_order() for c in self.coeffs.values()), default=0)

    def a_degree(self) -> int:
        return max((c.a_degree() for c in self.coeffs.values()), default=0)

    def evaluate(self, point: Mapping[VarId, object]) -> Dict[VarId, Fraction]:
        return {v: c.eval(point) for v, c in self.coeffs.items()}

    def substitute(self, mapping) -> "VectorField":
        return VectorField({v: c.substitute(mapping) for v, c in self.coeffs.items()})

    def relabel(self, fn) -> "VectorField":
        """Apply a variable renaming to directions and coefficients."""
        out = {}
        for v, c in self.coeffs.items():
            out[fn(v)] = FracPoly(_relabel_poly(c.num, fn), c.epow)
        return VectorField(out)

    def to_json(self) -> dict:
        return {"coeffs": [{"var": var_to_json(v), "num": c.num.to_json(), "epow": c.epow}
                           for v, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, d) -> "VectorField":
        return cls({var_from_json(e["var"]): FracPoly(Poly.from_json(e["num"]), e["epow"])
                    for e in d["coeffs"]})

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{c.to_text()}] d/d{v!r}" for v, c in sorted(self.coeffs.items()))

    def __repr__(self):
        return f"VectorField({self.to_text()})"


def _relabel_poly(p: Poly, fn) -> Poly:
    from .polycore import mono_from_dict
    items = []
    for m, c in p.terms.items():
        d = {}
        for v, e in m:
            u = fn(v)
            d[u] = d.get(u, 0) + e
        items.append((mono_from_dict(d), c))
    return Poly.from_terms(items)


def apply(V: VectorField, f) -> FracPoly:
    return V.apply(f)


def adjoint(A: VectorField, B: VectorField) -> VectorField:
    """The commutator: (A ad B) f = A(B f) - B(A f)."""
    out: Dict[VarId, FracPoly] = {}
    for v, c in B.coeffs.items():
        out[v] = A.apply(c)
    for v, c in A.coeffs.items():
        t = B.apply(c)
        if t:
            out[v] = out[v] - t if v in out else -t
    return VectorField(out)


def build_Dt(cfg: JetConfig) -> VectorField:
    coeffs = {}
    for i in range(1, cfg.n + 1):
        for p in range(cfg.k):
            coeffs[Jet(i, p)] = Poly.var(Jet(i, p + 1)).scale(p + 1)
    if cfg.is_log:
        for j in range(1, cfg.c + 1):
            coeffs[W(j)] = Poly.var(W(j)) * Poly.var(LogWJet(j, 1))
            for p in range(1, cfg.k):
                coeffs[LogWJet(j, p)] = Poly.var(LogWJet(j, p + 1)).scale(p + 1)
    return VectorField(coeffs)


def build_Dz1(cfg: JetConfig) -> VectorField:
    """(1 / z1') D_t."""
    return VectorField({v: FracPoly(c.num, 1) for v, c in build_Dt(cfg).coeffs.items()})


def build_Dz1_geometric(cfg: JetConfig) -> VectorField:
    """d/dz1 + sum_{i>=2} sum_{p<k} (p+1) z_i^{[p+1]} d/dz_i^{[p]} (geometric coordinates).

    Agrees with D_t / z1' on D^p Q for polynomials Q(z) and p <= k.
    """
    coeffs = {Z(1): Poly.const(1)}
    for i in range(2, cfg.n + 1):
        for p in range(cfg.k):
            coeffs[GeoJet(i, p)] = Poly.var(GeoJet(i, p + 1)).scale(p + 1)
    return VectorField(coeffs)


def base_field(cfg: JetConfig, base: str) -> VectorField:
    if base in ("Dt", "t"):
        return build_Dt(cfg)
    if base in ("Dz1", "z1"):
        return build_Dz1(cfg)
    raise ValueError(f"unknown base {base!r}")


class LambdaVec:
    """The vector ((D^p ad V) . P)_{p=0..k}."""
    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[FracPoly]):
        self.entries = [as_frac(e) for e in entries]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, p):
        return self.entries[p]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def nonzero_slots(self) -> List[int]:
        return [p for p, e in enumerate(self.entries) if e]

    def __eq__(self, other):
        if isinstance(other, LambdaVec):
            return self.entries == other.entries
        return NotImplemented

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

    def __repr__(self):
        return "LambdaVec(" + ", ".join(e.to_text() for e in self.entries) + ")"


def iterated_adjoints(D: VectorField, V: VectorField, k: int) -> List[VectorField]:
    """[V, D ad V, D^2 ad V, ..., D^k ad V]."""
    out = [V]
    for _ in range(k):
        out.append(adjoint(D, out[-1]))
    return out


def lambda_vec(cfg: JetConfig, V: VectorField, j: int = 1, base: str = "Dz1",
               D: VectorField | None = None, P: Poly | None = None) -> LambdaVec:
    if D is None:
        D = base_field(cfg, base)
    if P is None:
        P = universal_poly(cfg, j)
    return LambdaVec([W_.apply(P) for W_ in iterated_adjoints(D, V, cfg.k)])


def defining_equations(cfg: JetConfig, base: str = "Dt", j: int | None = None) -> List[FracPoly]:
    """[D^p P_j for p = 0..k] for one component, or all components if j is None."""
    D = base_field(cfg, base)
    js = range(1, cfg.c + 1) if j is None else [j]
    out = []
    for jj in js:
        f = FracPoly(universal_poly(cfg, jj))
        for p in range(cfg.k + 1):
            out.append(f)
            if p < cfg.k:
                f = D.apply(f)
    return out


def d_power(D: VectorField, f, p: int) -> FracPoly:
    f = as_frac(f)
    for _ in range(p):
        f = D.apply(f)
    return f


def binomial_adjoint_expand(q: int, V: VectorField, D: VectorField, f) -> Dict[str, Tuple[FracPoly, FracPoly]]:
    """Both sides of the two binomial identities linking ad and composition.

    forward:  (D^q ad V) f = sum_p (-1)^p C(q,p) D^{q-p} (V (D^p f))
    backward: V (D^q f)    = sum_p (-1)^p C(q,p) D^{q-p} ((D^p ad V) f)
    """
    ads = iterated_adjoints(D, V, q)
    lhs_f = ads[q].apply(f)
    rhs_f = FracPoly()
    for p in range(q + 1):
        rhs_f = rhs_f + d_power(D, V.apply(d_power(D, f, p)), q - p) * ((-1) ** p * comb(q, p))
    lhs_b = V.apply(d_power(D, f, q))
    rhs_b = FracPoly()
    for p in range(q + 1):
        rhs_b = rhs_b + d_power(D, ads[p].apply(f), q - p) * ((-1) ** p * comb(q, p))
    return {"forward": (lhs_f, rhs_f), "backward": (lhs_b, rhs_b)}


# ---------------------------------------------------------------------------
# truncated-series oracle

@dataclass
class TruncCurve:
    """A curve t -> (f_1(t), ..., f_n(t)) known modulo t^{k+1}.

    ``w`` optionally holds one series per log component (w_j(0) != 0).
    """
    k: int
    coords: List[List[Fraction]]
    w: List[List[Fraction]] = field(default_factory=list)

    def __post_init__(self):
        self.coords = [S.series(c, self.k) for c in self.coords]
        self.w = [S.series(c, self.k) for c in self.w]

    @property
    def n(self) -> int:
        return len(self.coords)

    def to_json(self) -> dict:
        return {"k": self.k, "coords": [[str(c) for c in s] for s in self.coords],
                "w": [[str(c) for c in s] for s in self.w]}

    @classmethod
    def from_json(cls, d) -> "TruncCurve":
        return cls(d["k"], [[Fraction(c) for c in s] for s in d["coords"]],
                   [[Fraction(c) for c in s] for s in d.get("w", [])])


def oracle_jet(curve: TruncCurve) -> Dict[VarId, Fraction]:
    """Jet coordinates of the curve at t = 0 (Taylor coefficients)."""
    out = {}
    for i, s in enumerate(curve.coords, start=1):
        for p in range(curve.k + 1):
            out[Jet(i, p)] = s[p]
    for j, s in enumerate(curve.w, start=1):
        if s[0] == 0:
            raise ValueError("w must not vanish at t = 0")
        out[W(j)] = s[0]
        lg = S.s_log(s)
        for p in range(1, curve.k + 1):
            out[LogWJet(j, p)] = lg[p]
    return out


def compose_poly_curve(P: Poly, curve: TruncCurve, params: Mapping[VarId, object]) -> List[Fraction]:
    """The series P(f(t)) with the parameters fixed, modulo t^{k+1}."""
    k = curve.k
    total = S.s_const(0, k)
    for m, c in P.terms.items():
        term = S.s_const(c, k)
        for v, e in m:
            if v.kind == Kind.Z:
                s = curve.coords[v.i - 1]
            elif v.kind == Kind.W:
                s = curve.w[v.i - 1]
            elif v.kind == Kind.PARAM:
                s = S.s_const(params[v], k)
            else:
                raise ValueError(f"unexpected variable {v!r} in a defining polynomial")
            term = S.s_mul(term, S.s_pow(s, e))
        total = S.s_add(total, term)
    return total


def oracle_check_Dt(cfg: JetConfig, P: Poly, curve: TruncCurve, params: Mapping[VarId, object]) -> bool:
    """(D_t^p P)(jets of f) / p! equals the t^p coefficient of P(f(t)), p <= k."""
    point = dict(oracle_jet(curve))
    point.update(params)
    ser = compose_poly_curve(P, curve, params)
    D = build_Dt(cfg)
    f = FracPoly(P)
    for p in range(cfg.k + 1):
        if f.eval(point) != ser[p] * factorial(p):
            return False
        f = D.apply(f)
    return True


def oracle_geo_jets(curve: TruncCurve) -> Dict[VarId, Fraction]:
    """z_i^{[p]} and t^{[p]} by reparametrizing the curve by its first coordinate."""
    from .polycore import TJet
    f1 = curve.coords[0]
    if f1[1] == 0:
        raise NonInvertibleCurve("f1'(0) = 0")
    k = curve.k
    h = S.s_sub(f1, S.s_const(f1[0], k))     # t -> f1(t) - f1(0)
    g = S.s_revert(h)                         # s -> t(s)
    out = {TJet(p): g[p] for p in range(1, k + 1)}
    for i in range(2, curve.n + 1):
        fi = curve.coords[i - 1]
        comp = S.s_compose(fi, g)
        for p in range(1, k + 1):
            out[GeoJet(i, p)] = comp[p]
    return out
