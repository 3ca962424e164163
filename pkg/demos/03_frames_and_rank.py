"""Global generation at sampled points, and where the poles sit.

Each frame is assembled, checked for tangency, and evaluated at random
rational points of the vertical jet variety (with z1' = 1).  The exact rank
must equal the dimension of the variety; dropping any field loses one.
"""
import warnings

from jetframe.fieldforge import assemble_frame
from jetframe.jetcalc import JetConfig
from jetframe.verifier import (check_tangency, expected_dimension, pole_audit, rank_at_point,
                               sample_vertical_point)

warnings.simplefilter("ignore")

for cfg in (JetConfig(2, 1, (2,)), JetConfig(2, 2, (3,)), JetConfig(3, 2, (3,)),
            JetConfig(2, 3, (4,)), JetConfig(3, 1, (2, 2))):
    fr = assemble_frame(cfg)
    tangent = all(check_tangency(cfg, f.field).ok for f in fr.fields)
    ranks = [rank_at_point(fr, sample_vertical_point(cfg, f"demo:{i}")) for i in range(3)]
    print(f"n={cfg.n} k={cfg.k} d={cfg.degrees}: {fr.counts()}")
    print(f"   tangent {tangent}, ranks {ranks}, dimension {expected_dimension(cfg)}, "
          f"max pole order {fr.max_pole_order()} (5k-2 = {5 * cfg.k - 2})")

print("\npole orders for k = 3, computed against the reference closed forms:")
audit = pole_audit(assemble_frame(JetConfig(2, 3, (4,))))
for row in audit["rows"]:
    mark = "" if row["match"] else "   <- differs"
    print(f"  {row['field']:<34} {row['computed']:>3} {row['relation']} {row['predicted']}{mark}")
print(f"  max {audit['max']} reached by {audit['argmax']}")
