"""Perfect codes in small Doob graphs: existence, search, and multifold partitions.

Run: python demos/perfect_codes.py
"""

import time

from doobcolor import GraphSpec, code_distance, completely_regular_check
from doobcolor.constructions import multifold_partition, perfect_code_partition
from doobcolor.errors import Unsatisfiable
from doobcolor.search import SearchBudget, find_additive_perfect_code, find_perfect_code

# A 1-perfect code needs 3D + 1 to divide 4^D.  Below diameter 5 this fails,
# and the exact-cover search confirms it without the arithmetic shortcut.
for spec in [GraphSpec(0, 2), GraphSpec(1, 0), GraphSpec(1, 1), GraphSpec(2, 0)]:
    t0 = time.perf_counter()
    try:
        find_perfect_code(spec, budget=SearchBudget(seconds=30), arithmetic=False)
        verdict = "found"
    except Unsatisfiable:
        verdict = "none"
    print(f"{spec}: 1-perfect code {verdict}  [{time.perf_counter() - t0:.2f} s]")

# Diameter 5: 1024 vertices and balls of size 16, so 64 codewords.  The code
# is the kernel of a homomorphism onto a group of order 16.
for spec in [GraphSpec(2, 1), GraphSpec(1, 3)]:
    t0 = time.perf_counter()
    f = find_additive_perfect_code(spec)
    print(f"{spec}: additive map found in {time.perf_counter() - t0:.2f} s")

part = perfect_code_partition(GraphSpec(2, 1))
code = part[0]
print(f"D(2,1): {len(part)} cosets, code size {len(code)}, min distance {code_distance(code)}")
print("intersection array:", completely_regular_check(code))

# Diameter 9: 3D + 1 = 28 = 7 * 4, so D(m,n) splits into four 7-fold codes.
for spec in [GraphSpec(0, 9), GraphSpec(4, 1), GraphSpec(2, 5)]:
    t0 = time.perf_counter()
    p = multifold_partition(spec)
    print(f"{spec}: {len(p)} disjoint {p.alpha}-fold 1-perfect codes, "
          f"{p.verified}  [{time.perf_counter() - t0:.2f} s]")
