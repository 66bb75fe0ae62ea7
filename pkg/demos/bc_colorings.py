"""Perfect (b, c)-colorings: admissibility, routes, and verified builds.

Run: python demos/bc_colorings.py
"""

from doobcolor import admissibility, necessary_conditions
from doobcolor.constructions import build_bc_coloring
from doobcolor.constructions.bc import plans

pairs = [(1, 3), (3, 1), (3, 3), (2, 6), (5, 3), (6, 2), (9, 3), (29, 3)]
for b, c in pairs:
    rep = admissibility(b, c)
    print(f"({b},{c}): {rep}")

# Every route the dispatcher knows at the smallest diameter.
for b, c in [(6, 2), (5, 3), (9, 3)]:
    for p in plans(b, c):
        print(f"  ({b},{c}) on {p.spec}: {p.route}")

# Build and check.  Up to 4^12 vertices the check is exhaustive.
for b, c in [(6, 2), (5, 3), (9, 3), (12, 4)]:
    col = build_bc_coloring(b, c)
    cond = necessary_conditions(b, c, col.spec)
    print(f"({b},{c}) on {col.spec}: {col.verified}; necessary conditions "
          f"{'hold' if cond.passed else cond.violations}")
    print(col.quotient)
