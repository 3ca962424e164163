"""Exact sparse polynomials over Q on the structured jet-space variables.

Every symbol of the ambient space is a ``VarId``.  A monomial is a sorted
tuple of ``(VarId, exponent)`` pairs and a ``Poly`` is a dict from monomials
to ``Fraction`` coefficients with no zero entries.  ``FracPoly`` adds a single
denominator, a power of z1' (the only denominator the chain rule
D_{z1} = D_t / z1' ever introduces).

All objects are treated as immutable once built.
"""
from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from .errors import UnassignedVariable, UnsupportedVariable


class Kind(IntEnum):
    # the integer values fix the canonical variable order
    Z = 0
    JET = 1
    GEOJET = 2
    TJET = 3
    PARAM = 4
    W = 5
    LOGWJET = 6
    WJET = 7


class VarId(NamedTuple):
    """One symbol of the jet space.

    ``i`` is the coordinate index (or the component index j for Param, W,
    LogWJet and WJet), ``p`` the jet order, ``alpha`` the multi-index of a
    parameter.  Unused slots are 0 or ().
    """
    kind: Kind
    i: int = 0
    p: int = 0
    alpha: Tuple[int, ...] = ()

    def __repr__(self):
        return var_name(self)


def Z(i: int) -> VarId:
    return VarId(Kind.Z, i)


def Jet(i: int, p: int) -> VarId:
    """z_i^{(p)}; order 0 is the coordinate z_i itself."""
    if p == 0:
        return VarId(Kind.Z, i)
    return VarId(Kind.JET, i, p)


def GeoJet(i: int, p: int) -> VarId:
    """z_i^{[p]}; order 0 is again z_i."""
    if p == 0:
        return VarId(Kind.Z, i)
    return VarId(Kind.GEOJET, i, p)


def TJet(p: int) -> VarId:
    return VarId(Kind.TJET, 0, p)


def Param(j: int, alpha) -> VarId:
    return VarId(Kind.PARAM, j, 0, tuple(alpha))


def W(j: int) -> VarId:
    return VarId(Kind.W, j)


def LogWJet(j: int, p: int) -> VarId:
    return VarId(Kind.LOGWJET, j, p)


def WJet(j: int, p: int) -> VarId:
    """w_j^{[p]}; order 0 is w_j."""
    if p == 0:
        return VarId(Kind.W, j)
    return VarId(Kind.WJET, j, p)


Z1P = Jet(1, 1)   # z1', the chart denominator

Monomial = Tuple[Tuple[VarId, int], ...]
ONE: Monomial = ()


# ---------------------------------------------------------------------------
# names, text and JSON forms of variables

def var_name(v: VarId) -> str:
    k = v.kind
    if k == Kind.Z:
        return f"z{v.i}"
    if k == Kind.JET:
        return f"z{v.i}({v.p})"
    if k == Kind.GEOJET:
        return f"z{v.i}[{v.p}]"
    if k == Kind.TJET:
        return f"t[{v.p}]"
    if k == Kind.PARAM:
        return f"a{v.i}_" + "_".join(str(x) for x in v.alpha)
    if k == Kind.W:
        return f"w{v.i}"
    if k == Kind.LOGWJET:
        return f"logw{v.i}({v.p})"
    return f"w{v.i}[{v.p}]"


_NAME_RE = [
    (re.compile(r"^z(\d+)$"), lambda m: Z(int(m[1]))),
    (re.compile(r"^z(\d+)\((\d+)\)$"), lambda m: Jet(int(m[1]), int(m[2]))),
    (re.compile(r"^z(\d+)\[(\d+)\]$"), lambda m: GeoJet(int(m[1]), int(m[2]))),
    (re.compile(r"^t\[(\d+)\]$"), lambda m: TJet(int(m[1]))),
    (re.compile(r"^a(\d+)_([\d_]+)$"),
     lambda m: Param(int(m[1]), [int(x) for x in m[2].split("_")])),
    (re.compile(r"^w(\d+)$"), lambda m: W(int(m[1]))),
    (re.compile(r"^logw(\d+)\((\d+)\)$"), lambda m: LogWJet(int(m[1]), int(m[2]))),
    (re.compile(r"^w(\d+)\[(\d+)\]$"), lambda m: WJet(int(m[1]), int(m[2]))),
]


def parse_var(name: str) -> VarId:
    for rx, make in _NAME_RE:
        m = rx.match(name)
        if m:
            return make(m)
    raise ValueError(f"not a variable name: {name!r}")


_KIND_NAMES = {Kind.Z: "Z", Kind.JET: "Jet", Kind.GEOJET: "GeoJet", Kind.TJET: "TJet",
               Kind.PARAM: "Param", Kind.W: "W", Kind.LOGWJET: "LogWJet", Kind.WJET: "WJet"}
_KIND_BY_NAME = {v: k for k, v in _KIND_NAMES.items()}


def var_to_json(v: VarId) -> dict:
    k = v.kind
    name = _KIND_NAMES[k]
    if k == Kind.Z:
        return {"kind": name, "i": v.i}
    if k in (Kind.JET, Kind.GEOJET):
        return {"kind": name, "i": v.i, "p": v.p}
    if k == Kind.TJET:
        return {"kind": name, "p": v.p}
    if k == Kind.PARAM:
        return {"kind": name, "j": v.i, "alpha": list(v.alpha)}
    if k == Kind.W:
        return {"kind": name, "j": v.i}
    return {"kind": name, "j": v.i, "p": v.p}


def var_from_json(d: Mapping) -> VarId:
    k = _KIND_BY_NAME[d["kind"]]
    if k == Kind.Z:
        return Z(d["i"])
    if k == Kind.JET:
        return VarId(k, d["i"], d["p"])
    if k == Kind.GEOJET:
        return VarId(k, d["i"], d["p"])
    if k == Kind.TJET:
        return TJet(d["p"])
    if k == Kind.PARAM:
        return Param(d["j"], d["alpha"])
    if k == Kind.W:
        return W(d["j"])
    return VarId(k, d["j"], d["p"])


def frac_to_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# monomials

@lru_cache(maxsize=1 << 18)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_from_dict(d: Mapping[VarId, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in d.items() if e))


def var_weight(v: VarId) -> int:
    """Pole order along the hyperplane at infinity of a single variable."""
    k = v.kind
    if k == Kind.Z or k == Kind.W:
        return 1
    if k == Kind.JET:
        return v.p + 1
    if k == Kind.LOGWJET:
        # (log w)^{(p)} = (log W - log Z0)^{(p)} only picks up (Z0'/Z0)^p
        return v.p
    if k == Kind.PARAM:
        return 0
    raise UnsupportedVariable(f"pole order is not defined on {var_name(v)}")


def mono_pole_order(m: Monomial) -> int:
    return sum(var_weight(v) * e for v, e in m)


def mono_a_degree(m: Monomial) -> int:
    return sum(e for v, e in m if v.kind == Kind.PARAM)


def mono_text(m: Monomial) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


# ---------------------------------------------------------------------------
# polynomials

def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Sparse polynomial with rational coefficients.

    >>> x = Poly.var(Z(1))
    >>> (x + 1) + (-1) == x
    True
    """
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] | None = None):
        # callers hand over canonical dicts (no zero coefficients)
        self.terms = terms if terms is not None else {}

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = _as_fraction(c)
        return cls({ONE: c} if c else {})

    @classmethod
    def var(cls, v: VarId, e: int = 1) -> "Poly":
        return cls({((v, e),) if e else ONE: Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial | Mapping[VarId, int], c=1) -> "Poly":
        if not isinstance(m, tuple):
            m = mono_from_dict(m)
        c = _as_fraction(c)
        return cls({m: c} if c else {})

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Monomial, object]]) -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m, c in items:
            c = out.get(m, 0) + _as_fraction(c)
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return cls(out)

    # ring operations --------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly()
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                s = out.get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return Poly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    # calculus and evaluation --------------------------------------------------
    def partial(self, v: VarId) -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for idx, (u, e) in enumerate(m):
                if u == v:
                    if e == 1:
                        nm = m[:idx] + m[idx + 1:]
                    else:
                        nm = m[:idx] + ((u, e - 1),) + m[idx + 1:]
                    s = out.get(nm, 0) + c * e
                    if s:
                        out[nm] = s
                    else:
                        out.pop(nm, None)
                    break
        return Poly(out)

    def eval(self, point: Mapping[VarId, object]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                try:
                    x = point[v]
                except KeyError:
                    raise UnassignedVariable(v) from None
                val *= x ** e
            total += val
        return total

    def substitute(self, mapping: Mapping[VarId, "Poly"]) -> "Poly":
        """Replace some variables by polynomials (others are kept)."""
        out = Poly()
        powers: Dict[Tuple[VarId, int], Poly] = {}
        for m, c in self.terms.items():
            keep = []
            term = Poly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = mapping[v] ** e
                    term = term * powers[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Poly.monomial(tuple(keep))
            out = out + term
        return out

    def partial_eval(self, point: Mapping[VarId, object]) -> "Poly":
        """Substitute rational values for the variables present in ``point``."""
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            keep = []
            for v, e in m:
                if v in point:
                    c = c * Fraction(point[v]) ** e
                else:
                    keep.append((v, e))
            if c:
                nm = tuple(keep)
                s = out.get(nm, 0) + c
                if s:
                    out[nm] = s
                else:
                    out.pop(nm, None)
        return Poly(out)

    # inspection -------------------------------------------------------------
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, v: VarId) -> int:
        best = 0
        for m in self.terms:
            for u, e in m:
                if u == v and e > best:
                    best = e
        return best

    def pole_order(self) -> int:
        """Max over monomials of the weighted degree (z: 1, z^{(p)}: p+1, a: 0).

        The zero polynomial gets 0 by convention.
        """
        if not self.terms:
            return 0
        return max(mono_pole_order(m) for m in self.terms)

    def a_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_a_degree(m) for m in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # serialization ------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = str(c)
            parts.append(cs if not m else f"{cs}*{mono_text(m)}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, s: str) -> "Poly":
        s = s.strip()
        if s == "0":
            return cls()
        items = []
        for term in s.split(" + "):
            fields = term.split("*")
            c = Fraction(fields[0])
            d: Dict[VarId, int] = {}
            for f in fields[1:]:
                name, _, e = f.partition("^")
                v = parse_var(name)
                d[v] = d.get(v, 0) + (int(e) if e else 1)
            items.append((mono_from_dict(d), c))
        return cls.from_terms(items)

    def to_json(self) -> list:
        return [{"exponents": [[var_to_json(v), e] for v, e in m], "coef": frac_to_str(c)}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "Poly":
        items = []
        for t in data:
            m = mono_from_dict({var_from_json(v): e for v, e in t["exponents"]})
            items.append((m, Fraction(t["coef"])))
        return cls.from_terms(items)

    def __repr__(self):
        return f"Poly({self.to_text()})"


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def partial(p, v: VarId):
    return p.partial(v)


def pole_order(p) -> int:
    return p.pole_order()


def a_degree(p) -> int:
    return p.a_degree()


# ---------------------------------------------------------------------------
# fractions with a z1' power denominator

_Z1P_POW_CACHE: Dict[int, Poly] = {}


def z1p_power(e: int) -> Poly:
    p = _Z1P_POW_CACHE.get(e)
    if p is None:
        p = Poly.var(Z1P, e)
        _Z1P_POW_CACHE[e] = p
    return p


def _shift_z1p(num: Poly, s: int) -> Poly:
    """Divide every monomial by z1'^s (caller guarantees divisibility)."""
    out = {}
    for m, c in num.terms.items():
        nm = []
        for v, e in m:
            if v == Z1P:
                if e > s:
                    nm.append((v, e - s))
            else:
                nm.append((v, e))
        out[tuple(nm)] = c
    return Poly(out)


class FracPoly:
    """num / (z1')^epow, with z1' not dividing num whenever epow > 0."""
    __slots__ = ("num", "epow")

    def __init__(self, num: Poly | int | Fraction = 0, epow: int = 0):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if epow < 0:
            num = num * z1p_power(-epow)
            epow = 0
        if epow and num.terms:
            low = min(dict(m).get(Z1P, 0) for m in num.terms)
            s = min(low, epow)
            if s:
                num = _shift_z1p(num, s)
                epow -= s
        elif not num.terms:
            epow = 0
        self.num = num
        self.epow = epow

    @staticmethod
    def _coerce(x) -> "FracPoly":
        if isinstance(x, FracPoly):
            return x
        if isinstance(x, (Poly, int, Fraction)):
            return FracPoly(x)
        return NotImplemented

    def __add__(self, other):
        other = FracPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        e = max(self.epow, other.epow)
        a = self.num if self.epow == e else self.num * z1p_power(e - self.epow)
        b = other.num if other.epow == e else other.num * z1p_power(e - other.epow)
        return FracPoly(a + b, e)

    __radd__ = __add__

    def __neg__(self):
        return FracPoly._raw(-self.num, self.epow)

    def __sub__(self, other):
        other = FracPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FracPoly._raw(self.num.scale(other), self.epow) if other else FracPoly()
        other = FracPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.epow == 0 and other.epow == 0:
            return FracPoly._raw(self.num * other.num, 0)
        return FracPoly(self.num * other.num, self.epow + other.epow)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FracPoly(self.num ** e, self.epow * e)

    @classmethod
    def _raw(cls, num: Poly, epow: int) -> "FracPoly":
        obj = cls.__new__(cls)
        obj.num = num
        obj.epow = epow if num.terms else 0
        return obj

    def __eq__(self, other):
        other = FracPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.epow == other.epow and self.num == other.num

    def __hash__(self):
        return hash((self.num, self.epow))

    def __bool__(self):
        return bool(self.num.terms)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_poly(self) -> bool:
        return self.epow == 0

    def to_poly(self) -> Poly:
        if self.epow:
            raise ValueError("fraction still has a z1' denominator")
        return self.num

    def partial(self, v: VarId) -> "FracPoly":
        d = self.num.partial(v)
        if self.epow and v == Z1P:
            # d(num u^-e) = (num_u u - e num) / u^(e+1)
            return FracPoly(d * z1p_power(1) - self.num.scale(self.epow), self.epow + 1)
        return FracPoly(d, self.epow) if self.epow else FracPoly._raw(d, 0)

    def eval(self, point: Mapping[VarId, object]) -> Fraction:
        val = self.num.eval(point)
        if self.epow:
            try:
                u = Fraction(point[Z1P])
            except KeyError:
                raise UnassignedVariable(Z1P) from None
            if u == 0:
                raise ZeroDivisionError("z1' vanishes at this point")
            val /= u ** self.epow
        return val

    def substitute(self, mapping: Mapping[VarId, "FracPoly"]) -> "FracPoly":
        """Substitute FracPoly values; z1' itself must not be substituted."""
        if Z1P in mapping:
            raise ValueError("cannot substitute the chart denominator z1'")
        out = FracPoly()
        for m, c in self.num.terms.items():
            term = FracPoly(Poly.const(c))
            keep = []
            for v, e in m:
                if v in mapping:
                    term = term * (mapping[v] ** e)
                else:
                    keep.append((v, e))
            if keep:
                term = term * Poly.monomial(tuple(keep))
            out = out + term
        return FracPoly(out.num, out.epow + self.epow)

    def variables(self) -> set:
        vs = self.num.variables()
        if self.epow:
            vs.add(Z1P)
        return vs

    def pole_order(self) -> int:
        if not self.num.terms:
            return 0
        return self.num.pole_order() - 2 * self.epow

    def a_degree(self) -> int:
        return self.num.a_degree()

    def to_text(self) -> str:
        if not self.epow:
            return self.num.to_text()
        return f"({self.num.to_text()}) / {var_name(Z1P)}^{self.epow}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "epow": self.epow}

    @classmethod
    def from_json(cls, d) -> "FracPoly":
        return cls(Poly.from_json(d["num"]), d["epow"])

    def __repr__(self):
        return f"FracPoly({self.to_text()})"


def frac_add(a: FracPoly, b: FracPoly) -> FracPoly:
    return a + b


def frac_mul(a: FracPoly, b: FracPoly) -> FracPoly:
    return a * b


def as_frac(x) -> FracPoly:
    if isinstance(x, FracPoly):
        return x
    return FracPoly(x)


def var(v: VarId) -> Poly:
    """Shorthand: the polynomial consisting of the single variable v."""
    return Poly.var(v)


def zpow(alpha) -> Poly:
    """The monomial z^alpha = z_1^{alpha_1} ... z_n^{alpha_n}."""
    return Poly.monomial({Z(i + 1): e for i, e in enumerate(alpha) if e})
