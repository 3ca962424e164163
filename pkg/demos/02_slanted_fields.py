"""Slanted vector fields on the vertical 2-jets of plane cubics.

A field V is tangent to the vertical jets when the vector
Lambda(V) = (V P, [D, V] P, ..., (ad D)^k V P) vanishes, where D = D_t / z1'.
A coordinate field d/dz_2^{(q)} fails exactly from slot q on; the slanted
field T_{2,q} subtracts parameter directions that cancel it.
"""
import warnings

from jetframe.bellkit import geo_field
from jetframe.fieldforge import T_jq, T_param, U_general
from jetframe.jetcalc import JetConfig, VectorField, lambda_vec
from jetframe.polycore import Jet, Param
from jetframe.verifier import check_tangency

warnings.simplefilter("ignore")
cfg = JetConfig(2, 2, (3,))

print("Lambda of the plain coordinate fields:")
for q in range(3):
    lv = lambda_vec(cfg, VectorField.basis(Jet(2, q)))
    print(f"  d/dz2({q}): nonzero slots {lv.nonzero_slots()}")

print("\nbuilding blocks: Lambda(U_q^beta) = z^beta e_q")
for q, beta in [(0, (1, 1)), (1, (2, 0)), (2, (0, 2)), (1, (4, 0))]:
    lv = lambda_vec(cfg, U_general(cfg, 1, q, beta))
    print(f"  U_{q}^{beta}: slot {lv.nonzero_slots()} = {lv[q].to_text()}")

print("\nslanted fields:")
for q in range(3):
    V = T_jq(cfg, 2, q)
    print(f"  T_(2,{q}) tangent: {check_tangency(cfg, V).ok}, pole order {V.pole_order()}, "
          f"{len(V.coeffs)} coordinate directions")

print("  d/dz2^{[2]} without its correction is tangent:", check_tangency(cfg, geo_field(cfg, 2, 2)).ok)
print("  T_(2,2) without the (-1)^q q! scaling is tangent:",
      check_tangency(cfg, T_jq(cfg, 2, 2, verbatim=True)).ok)

print("\nparameter field with leading term d/da_(0,1):")
V = T_param(cfg, 1, (0, 1))
print("  tangent:", check_tangency(cfg, V).ok, " pole order:", V.pole_order(),
      " leading coefficient:", V[Param(1, (0, 1))].to_text())
