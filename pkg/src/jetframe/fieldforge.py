"""Construction of the slanted vector fields and of the full frame.

Families (all emitted in standard jet coordinates):

* building blocks U_q^beta with Lambda_{z1}(U_q^beta) = s z^beta e_q, where
  s = +1 for P (compact) and s = -1 for Q = w^d - A (logarithmic);
* Merker fields T_{beta,lambda} annihilating P, D_t P, ..., D_t^k P;
* slanted fields T_{j,q}, the vertical fields T_1..T_k and T_{1,0};
* parameter fields T_beta;
* logarithmic fields T_{w_j,q}.

Every construction that relies on a sign convention is checked at build time
against the Lambda map, and the variant that passes is recorded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple

from .bellkit import geo_field, log_field, std_from_geo, t_std, vertical_T, bell_inverse_std
from .errors import (ConfigError, ConstructionFailed, InvalidDirection, NoValidLambda,
                     RangeError, ReservedIndex, WrongCase)
from .jetcalc import (COMPACT, LOG, JetConfig, LambdaVec, VectorField, a_part, build_Dz1,
                      d_power, lambda_vec, mi_add, mi_binom, mi_le, mi_sub, sub_indices,
                      unit, universal_poly)
from .polycore import (FracPoly, Jet, Kind, LogWJet, Param, Poly, VarId, W, Z, Z1P, zpow)

# Variants actually emitted by the self-checking constructors, per config.
CHOICES: Dict[Tuple[JetConfig, str], set] = {}


def _record(cfg: JetConfig, key: str, label: str) -> None:
    CHOICES.setdefault((cfg, key), set()).add(label)


def choices_for(cfg: JetConfig) -> Dict[str, str]:
    return {key: "+".join(sorted(labels)) for (c, key), labels in sorted(
        CHOICES.items(), key=lambda kv: kv[0][1]) if c == cfg}


def _sigma(cfg: JetConfig) -> int:
    """Sign of d/da_beta applied to the defining polynomial, over z^beta."""
    return 1 if cfg.case == COMPACT else -1


def _check_param(cfg: JetConfig, j: int, beta) -> None:
    if cfg.case == COMPACT and tuple(beta) == cfg.hat_alpha[j - 1]:
        raise ConfigError(f"a_{tuple(beta)} is normalized to 1 and has no direction")


def d_a(cfg: JetConfig, j: int, beta) -> VectorField:
    _check_param(cfg, j, beta)
    return VectorField.basis(Param(j, beta))


# ---------------------------------------------------------------------------
# building blocks

@lru_cache(maxsize=None)
def U_q_beta(cfg: JetConfig, j: int, q: int, beta: Tuple[int, ...]) -> VectorField:
    """sum_{p=0}^q (-1)^p / (p! (q-p)!) z1^{q-p} d/da_{beta + p 1_1}, for |beta| + q <= d_j."""
    beta = tuple(beta)
    d = cfg.degrees[j - 1]
    if sum(beta) + q > d:
        raise RangeError(f"|beta| + q = {sum(beta) + q} exceeds d = {d}")
    V = VectorField()
    for p in range(q + 1):
        idx = mi_add(beta, unit(cfg.n, 1, p))
        _check_param(cfg, j, idx)
        coef = Fraction((-1) ** p, factorial(p) * factorial(q - p))
        V = V + VectorField({Param(j, idx): zpow(unit(cfg.n, 1, q - p)).scale(coef)})
    return V


def merker_lambdas(cfg: JetConfig, beta) -> List[Tuple[int, ...]]:
    """All lambda <= beta with |lambda| = k+1, in lexicographic order."""
    out = [lam for lam in sub_indices(beta) if sum(lam) == cfg.k + 1]
    return sorted(out)


def default_lambda(cfg: JetConfig, beta) -> Tuple[int, ...]:
    lams = merker_lambdas(cfg, beta)
    if not lams:
        raise NoValidLambda(f"no lambda <= {tuple(beta)} of length {cfg.k + 1}")
    return lams[0]


def _merker_sum(cfg: JetConfig, j: int, beta, lam, include_zero: bool, block) -> VectorField:
    V = VectorField()
    for gam in sub_indices(lam):
        if not include_zero and not any(gam):
            continue
        coef = (-1) ** sum(gam) * mi_binom(lam, gam)
        V = V + block(mi_sub(beta, gam)).scale(zpow(gam).scale(coef))
    return V


@lru_cache(maxsize=None)
def T_merker(cfg: JetConfig, j: int, beta: Tuple[int, ...], lam: Tuple[int, ...] | None = None) -> VectorField:
    """sum_{gamma <= lambda} (-1)^{|gamma|} C(lambda, gamma) z^gamma d/da_{beta - gamma}."""
    beta = tuple(beta)
    d = cfg.degrees[j - 1]
    if not cfg.k + 1 <= sum(beta) <= d:
        raise ConfigError(f"Merker fields need k+1 <= |beta| <= d, got |beta| = {sum(beta)}")
    _check_param(cfg, j, beta)
    if lam is None:
        lam = default_lambda(cfg, beta)
    lam = tuple(lam)
    if sum(lam) != cfg.k + 1 or not mi_le(lam, beta):
        raise NoValidLambda(f"lambda = {lam} is not admissible for beta = {beta}")
    return _merker_sum(cfg, j, beta, lam, True, lambda b: d_a(cfg, j, b))


def _needs_extension(cfg: JetConfig, j: int, beta) -> bool:
    if sum(beta) > cfg.degrees[j - 1]:
        return True
    return cfg.case == COMPACT and tuple(beta) == cfg.hat_alpha[j - 1]


def _target(cfg: JetConfig, beta, q: int) -> LambdaVec:
    s = _sigma(cfg)
    return LambdaVec([zpow(beta).scale(s) if p == q else Poly() for p in range(cfg.k + 1)])


@lru_cache(maxsize=None)
def U0_extended(cfg: JetConfig, j: int, beta: Tuple[int, ...]) -> VectorField:
    """A field acting like the missing d/da_beta: Lambda_{z1} = s z^beta e_0.

    Used for |beta| > d (and for the normalized slot hat alpha in the compact
    case).  Built by recursion on |beta| - d from the Merker sum over
    0 < gamma <= lambda.  The sum is tried with its plain sign first and
    with the opposite sign if the Lambda check fails.
    """
    beta = tuple(beta)
    if not _needs_extension(cfg, j, beta):
        return d_a(cfg, j, beta)
    lam = default_lambda(cfg, beta)
    raw = _merker_sum(cfg, j, beta, lam, False, lambda b: U0_extended(cfg, j, b))
    target = _target(cfg, beta, 0)
    for sign, label in ((1, "plain"), (-1, "flipped")):
        cand = raw.scale(sign)
        if lambda_vec(cfg, cand, j) == target:
            _record(cfg, "U0_extended_sign", label)
            return cand
    raise ConstructionFailed(f"no sign makes U_0^{beta} satisfy its Lambda identity")


@lru_cache(maxsize=None)
def U_general(cfg: JetConfig, j: int, q: int, beta: Tuple[int, ...]) -> VectorField:
    """U_q^beta for any beta: sum_p (-1)^p/(p!(q-p)!) z1^{q-p} U_0^{beta + p 1_1}."""
    beta = tuple(beta)
    if q > cfg.k:
        raise ConfigError("q must not exceed k")
    d = cfg.degrees[j - 1]
    if sum(beta) + q <= d and not _needs_extension(cfg, j, beta):
        return U_q_beta(cfg, j, q, beta)
    V = VectorField()
    for p in range(q + 1):
        coef = Fraction((-1) ** p, factorial(p) * factorial(q - p))
        blk = U0_extended(cfg, j, mi_add(beta, unit(cfg.n, 1, p)))
        V = V + blk.scale(zpow(unit(cfg.n, 1, q - p)).scale(coef))
    return V


def U_inductive(cfg: JetConfig, j: int, q: int, beta: Tuple[int, ...]) -> VectorField:
    """U_q^beta by the recurrence (q+1) U_{q+1}^beta = z1 U_q^beta - U_q^{beta + 1_1}."""
    if q == 0:
        return U0_extended(cfg, j, tuple(beta))
    z1 = Poly.var(Z(1))
    prev = U_inductive(cfg, j, q - 1, beta)
    nxt = U_inductive(cfg, j, q - 1, mi_add(beta, unit(cfg.n, 1)))
    return (prev.scale(z1) - nxt).scale(Fraction(1, q))


# ---------------------------------------------------------------------------
# slanted and vertical fields

def z_coefficients(p: Poly) -> Dict[Tuple[int, ...], Poly]:
    """Split p = sum_beta u_beta z^beta with u_beta free of z (n inferred per monomial)."""
    out: Dict[Tuple[int, ...], Poly] = {}
    for m, c in p.terms.items():
        zexp = {}
        rest = []
        for v, e in m:
            if v.kind == Kind.Z:
                zexp[v.i] = e
            else:
                rest.append((v, e))
        key = tuple(sorted(zexp.items()))
        out[key] = out.get(key, Poly()) + Poly.monomial(tuple(rest), c)
    return out


def _beta_from_key(n: int, key) -> Tuple[int, ...]:
    b = [0] * n
    for i, e in key:
        b[i - 1] = e
    return tuple(b)


def correction_terms(cfg: JetConfig, j_dir: int, q: int) -> VectorField:
    """sum over components of sum_beta u_{j,beta} U_q^beta, where d_j A = sum u_beta z^beta."""
    V = VectorField()
    for comp in range(1, cfg.c + 1):
        dA = a_part(cfg, comp).partial(Z(j_dir))
        for key, u in sorted(z_coefficients(dA).items()):
            beta = _beta_from_key(cfg.n, key)
            V = V + U_general(cfg, comp, q, beta).scale(u)
    return V


@lru_cache(maxsize=None)
def T_jq(cfg: JetConfig, j_dir: int, q: int, verbatim: bool = False) -> VectorField:
    """d/dz_j^{[q]} - (-1)^q q! sum_beta u_{j,beta} U_q^beta.

    Lambda_{z1}(d/dz_j^{[q]}) = (-1)^q q! (d_j P) e_q, hence the factor in
    front of the correction.  ``verbatim=True`` drops that factor (negative
    control).
    """
    if not 1 <= j_dir <= cfg.n or not 0 <= q <= cfg.k:
        raise ConfigError(f"(j, q) = ({j_dir}, {q}) out of range")
    if j_dir == 1 and q >= 1:
        raise InvalidDirection("T_{1,q} is only defined for q = 0")
    base = geo_field(cfg, j_dir, q)
    factor = 1 if verbatim else (-1) ** q * factorial(q)
    return base - correction_terms(cfg, j_dir, q).scale(factor)


def reserved_betas(cfg: JetConfig) -> List[Tuple[int, ...]]:
    return [unit(cfg.n, 1, m) for m in range(cfg.k + 1)]


@lru_cache(maxsize=None)
def T_param(cfg: JetConfig, j: int, beta: Tuple[int, ...], verbatim: bool = False) -> VectorField:
    """Parameter-direction field with leading term d/da_beta.

    k+1 <= |beta| <= d: the Merker field for the default lambda.
    |beta| <= k: z1'^{2k-1} (d/da_beta - sum_q (-1)^q (D_{z1}^q z^beta) U_q^0).
    ``verbatim=True`` drops the (-1)^q (negative control).
    """
    beta = tuple(beta)
    if beta in reserved_betas(cfg):
        raise ReservedIndex(f"beta = {beta} is used by the corrections")
    _check_param(cfg, j, beta)
    k = cfg.k
    if sum(beta) > cfg.degrees[j - 1]:
        raise ConfigError(f"|beta| exceeds d = {cfg.degrees[j - 1]}")
    if sum(beta) >= k + 1:
        return T_merker(cfg, j, beta)
    D = build_Dz1(cfg)
    V = d_a(cfg, j, beta)
    f = FracPoly(zpow(beta))
    for q in range(k + 1):
        sign = 1 if verbatim else (-1) ** q
        V = V - U_general(cfg, j, q, (0,) * cfg.n).scale(f * sign)
        f = D.apply(f)
    return V.scale(FracPoly(Poly.var(Z1P, 2 * k - 1)))


def _exp_neg_log_coeffs(k: int, ell: List[FracPoly]) -> List[FracPoly]:
    """[x^m] exp(-sum_{i>=1} ell[i] x^i) for m = 0..k (ell[0] unused)."""
    # e' = -(sum i ell_i x^{i-1}) e, solved coefficient by coefficient
    e = [FracPoly(1)] + [FracPoly() for _ in range(k)]
    for m in range(1, k + 1):
        acc = FracPoly()
        for i in range(1, m + 1):
            acc = acc + ell[i] * e[m - i] * i
        e[m] = acc * Fraction(-1, m)
    return e


def w_times_dual_field(cfg: JetConfig, j: int, q: int) -> VectorField:
    """w_j d/dw_j^{[q]} = sum_m e_m d/d(log w_j)^{[q+m]}, e = exp(-sum (log w)^{[i]} x^i).

    (log w)^{[i]} is rewritten in the standard log-jets through the inverse
    Bell matrix, exactly as for z_i^{[i]}.
    """
    k = cfg.k
    inv = bell_inverse_std(k)
    ell = [FracPoly()]
    for i in range(1, k + 1):
        f = FracPoly()
        for p in range(1, i + 1):
            if inv[i - 1][p - 1]:
                f = f + inv[i - 1][p - 1] * Poly.var(LogWJet(j, p))
        ell.append(f)
    e = _exp_neg_log_coeffs(k, ell)
    V = VectorField()
    for m in range(0, k - q + 1):
        V = V + log_field(cfg, j, q + m).scale(e[m])
    return V


def _log_correction(cfg: JetConfig, j: int, q: int) -> VectorField:
    d = cfg.degrees[j - 1]
    V = VectorField()
    for a in cfg.all_alphas(j):
        V = V + U_general(cfg, j, q, a).scale(Poly.var(Param(j, a)))
    return V.scale((-1) ** q * factorial(q) * d)


def T_wq_candidates(cfg: JetConfig, j: int, q: int) -> List[Tuple[str, VectorField]]:
    """w d/dw^{[q]} plus the correction (times the unit w) first, then the (log w)-basis field."""
    corr = _log_correction(cfg, j, q)
    shown = w_times_dual_field(cfg, j, q) + corr.scale(Poly.var(W(j)))
    logb = log_field(cfg, j, q) + corr
    return [("w_basis", shown), ("logw_basis", logb)]


@lru_cache(maxsize=None)
def T_wq(cfg: JetConfig, j: int, q: int) -> VectorField:
    """Logarithmic-direction field: the first candidate tangent modulo Q_j."""
    if cfg.case != LOG:
        raise WrongCase("T_{w,q} only exists in the logarithmic case")
    if not 0 <= q <= cfg.k:
        raise ConfigError("q out of range")
    from .verifier import check_tangency   # local import: verifier builds on this module
    for label, cand in T_wq_candidates(cfg, j, q):
        if check_tangency(cfg, cand, "ModuloQ").ok:
            _record(cfg, f"T_wq_base[q={q}]", label)
            return cand
    raise ConstructionFailed(f"no candidate T_(w,{q}) is tangent modulo Q")


# ---------------------------------------------------------------------------
# chart relabeling

def chart_swap(cfg: JetConfig):
    """Variable renaming exchanging coordinate 1 and the chart coordinate."""
    c = cfg.chart

    def sw(i):
        return c if i == 1 else (1 if i == c else i)

    def fn(v: VarId) -> VarId:
        if v.kind in (Kind.Z, Kind.JET, Kind.GEOJET):
            return VarId(v.kind, sw(v.i), v.p)
        if v.kind == Kind.PARAM:
            a = list(v.alpha)
            a[0], a[c - 1] = a[c - 1], a[0]
            return Param(v.i, a)
        return v
    return fn


def chart_one(cfg: JetConfig) -> JetConfig:
    """The equivalent configuration whose chart coordinate is z1."""
    if cfg.chart == 1:
        return cfg
    ha = None
    if cfg.hat_alpha is not None:
        ha = []
        for a in cfg.hat_alpha:
            a = list(a)
            a[0], a[cfg.chart - 1] = a[cfg.chart - 1], a[0]
            ha.append(tuple(a))
        ha = tuple(ha)
    return JetConfig(cfg.n, cfg.k, cfg.degrees, cfg.case, ha, 1)


# ---------------------------------------------------------------------------
# frame

FAMILY_ORDER = ("slanted", "vertical", "parameter", "logarithmic")


@dataclass
class FrameField:
    tag: str
    family: str
    params: dict
    field: VectorField
    pole_order: int = 0
    a_degree: int = 0

    def __post_init__(self):
        self.pole_order = self.field.pole_order()
        self.a_degree = self.field.a_degree()

    @property
    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag}({inner})"

    def to_json(self) -> dict:
        params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params.items()}
        return {"tag": self.tag, "family": self.family, "params": params,
                "field": self.field.to_json(), "pole_order": self.pole_order,
                "a_degree": self.a_degree}

    @classmethod
    def from_json(cls, d) -> "FrameField":
        params = {k: (tuple(v) if isinstance(v, list) else v) for k, v in d["params"].items()}
        return cls(d["tag"], d["family"], params, VectorField.from_json(d["field"]))


@dataclass
class FrameSpec:
    cfg: JetConfig
    fields: List[FrameField] = field(default_factory=list)
    choices: Dict[str, str] = field(default_factory=dict)

    def family(self, name: str) -> List[FrameField]:
        return [f for f in self.fields if f.family == name]

    def counts(self) -> Dict[str, int]:
        return {fam: len(self.family(fam)) for fam in FAMILY_ORDER}

    def max_pole_order(self) -> int:
        return max(f.pole_order for f in self.fields)

    def without(self, label: str) -> "FrameSpec":
        return FrameSpec(self.cfg, [f for f in self.fields if f.label != label], dict(self.choices))

    def to_json(self) -> dict:
        return {"config": self.cfg.to_json(), "choices": dict(sorted(self.choices.items())),
                "fields": [f.to_json() for f in self.fields]}

    @classmethod
    def from_json(cls, d) -> "FrameSpec":
        return cls(JetConfig.from_json(d["config"]), [FrameField.from_json(f) for f in d["fields"]],
                   dict(d.get("choices", {})))


def frame_fields_chart_one(cfg: JetConfig) -> List[FrameField]:
    n, k = cfg.n, cfg.k
    out: List[FrameField] = []
    for j in range(2, n + 1):
        for q in range(k + 1):
            out.append(FrameField("T_jq", "slanted", {"j": j, "q": q}, T_jq(cfg, j, q)))
    out.append(FrameField("T_jq", "vertical", {"j": 1, "q": 0}, T_jq(cfg, 1, 0)))
    for ell in range(1, k + 1):
        out.append(FrameField("T_ell", "vertical", {"ell": ell}, vertical_T(cfg, ell)))
    reserved = set(reserved_betas(cfg))
    for comp in range(1, cfg.c + 1):
        for beta in sorted(cfg.params(comp)):
            if beta in reserved:
                continue
            out.append(FrameField("T_beta", "parameter", {"component": comp, "beta": beta},
                                  T_param(cfg, comp, beta)))
    if cfg.is_log:
        for comp in range(1, cfg.c + 1):
            for q in range(k + 1):
                out.append(FrameField("T_wq", "logarithmic", {"component": comp, "q": q},
                                      T_wq(cfg, comp, q)))
    return out


def assemble_frame(cfg: JetConfig) -> FrameSpec:
    """The three (four in the log case) families spanning vertical jets where z_chart' != 0."""
    base = chart_one(cfg)
    fields = frame_fields_chart_one(base)
    if cfg.chart != 1:
        fn = chart_swap(cfg)
        fields = [FrameField(f.tag, f.family, _relabel_params(f.params, cfg), f.field.relabel(fn))
                  for f in fields]
    return FrameSpec(cfg, fields, choices_for(base))


def _relabel_params(params: dict, cfg: JetConfig) -> dict:
    out = dict(params)
    c = cfg.chart
    if "j" in out:
        j = out["j"]
        out["j"] = c if j == 1 else (1 if j == c else j)
    if "beta" in out:
        b = list(out["beta"])
        b[0], b[c - 1] = b[c - 1], b[0]
        out["beta"] = tuple(b)
    return out
