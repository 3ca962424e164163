"""Bell polynomials, Faa di Bruno, and geometric jet coordinates.

Jets are Taylor coefficients, so B_{p,q}(h) is just the coefficient of s^p in
(h(s) - h(0))^q.  Reparametrizing a curve by its first coordinate expresses
the geometric jets z_i^{[q]} through the inverse Bell matrix.
"""
import random
import warnings
from fractions import Fraction

from jetframe import bellkit as bk
from jetframe import series as S
from jetframe.jetcalc import JetConfig, oracle_geo_jets, oracle_jet
from jetframe.polycore import Jet, Z1P
from jetframe.verifier import random_curve

warnings.simplefilter("ignore")
k = 4

print("Bell matrix B(z1) for k = 4:")
for p in range(1, k + 1):
    print("  ", " | ".join(bk.bell_z1(p, q).to_text() for q in range(1, p + 1)))

# The inverse is lower triangular with z1'^{-p} on the diagonal.
inv = bk.bell_inverse_std(k)
print("\nfirst column of the inverse (t^{[p]} in standard jets):")
for p in range(k):
    print(f"  t[{p + 1}] =", inv[p][0].to_text())

# Cross-check against an honest reparametrization of a random curve.
cfg = JetConfig(2, k, (k + 1,))
curve = random_curve(random.Random(11), 2, k)
std = oracle_jet(curve)
std[Z1P] = std[Jet(1, 1)]          # the denominator variable z1'
geo = oracle_geo_jets(curve)
sg = bk.std_from_geo(cfg)
agree = all(expr.eval(std) == geo[v] for v, expr in sg.items())
print("\ngeometric jets from the inverse Bell matrix agree with series reversion:", agree)

# Faa di Bruno on numbers: g^{(p)} = sum_q B_{p,q}(h) (g o h^{-1})^{(q)}.
h, g = curve.coords
G = S.s_compose(g, S.s_revert(S.s_sub(h, S.s_const(h[0], k))))
jets = {Jet(1, m): std[Jet(1, m)] for m in range(1, k + 1)}
lhs = [g[p] for p in range(1, k + 1)]
rhs = [sum((bk.bell_z1(p, q).eval(jets) * G[q] for q in range(1, p + 1)), Fraction(0))
       for p in range(1, k + 1)]
print("Faa di Bruno holds on this curve:", lhs == rhs)
