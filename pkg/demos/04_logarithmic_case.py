"""Logarithmic jets: curves avoiding the divisor {w^d = A(z)}.

The extra coordinates are w and the Taylor coefficients of log w.  Fields in
the w-direction are only tangent modulo Q = w^d - A, so the check rewrites
w^d -> A before testing the Lambda entries for zero.
"""
import warnings

from jetframe.fieldforge import T_wq_candidates, assemble_frame
from jetframe.jetcalc import JetConfig
from jetframe.verifier import (check_tangency, expected_dimension, fiber_oracle, rank_at_point,
                               sample_vertical_point)

warnings.simplefilter("ignore")
cfg = JetConfig(1, 1, (2,), "log")

for label, cand in T_wq_candidates(cfg, 1, 0):
    v = check_tangency(cfg, cand, "ModuloQ")
    print(f"candidate {label}: tangent modulo Q = {v.ok}")
    for w in v.witness[:2]:
        print(f"    residue in slot {w['slot']}: {w['entry']}")

for cfg in (cfg, JetConfig(2, 2, (3,), "log"), JetConfig(1, 1, (2, 2), "log")):
    fr = assemble_frame(cfg)
    ranks = [rank_at_point(fr, sample_vertical_point(cfg, i)) for i in range(3)]
    print(f"\nn={cfg.n} k={cfg.k} d={cfg.degrees}: {fr.counts()}")
    print(f"   ranks {ranks} vs dimension {expected_dimension(cfg)}; choices {fr.choices}")
    print(f"   fiber curves: {fiber_oracle(cfg, 20, 0)}")
