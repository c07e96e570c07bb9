"""Where the l-local statement stops: a dihedral subgroup separating X from Y.

    python demos/sharpness.py [q] [l]
"""

import sys

from gl2sets.theorems import find_remark4_witness, verify_theorem3

q = int(sys.argv[1]) if len(sys.argv) > 1 else 5
l = int(sys.argv[2]) if len(sys.argv) > 2 else 2

for c in verify_theorem3(q, l).checks:
    print(f"{c.name}: {c.status}")

rep = find_remark4_witness(q, l)
w = rep.check("witness_X_Y")
print(f"witness of order {w.witness['subgroup_order']} found in {w.details['found_in']}, "
      f"image of order {w.details['quotient_order']} mod the center")
print("fixed points:", w.witness["fixed_counts"])
for name in ("conlon_X_Y", "conlon_Xbar_Ybar"):
    print(f"{name}: {rep.check(name).details['verdict']}")
