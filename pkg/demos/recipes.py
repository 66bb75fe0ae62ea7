"""Composing colorings by recipe: declared quotients checked against the build.

Run: python demos/recipes.py
"""

from doobcolor.constructions import evaluate, parse_recipe
from doobcolor.constructions.recipe import declare

# Split the coset partition of D(0,1): 4 colors with quotient J - E become
# 16 colors on D(1,2).  Then multiply by 2 and extend by one K4 factor.
text = """
extend 0 1
  multiply 2
    split 1
      perfect 0 1
"""
root = parse_recipe(text)
d = declare(root)
print(f"declared: {d.spec}, {d.S.shape[0]} colors")
col = evaluate(root)
print(f"built {col.spec}, check: {col.verified}")

# Diagonal product: the 4 colors of K4 are cut into two blocks of two, each
# refined on a second K4 factor by a (2,2)-coloring.
text = """
diag
  mds 0 1
  bb 0 1
  bb 0 1
"""
col = evaluate(text)
print(col.spec, col.verified)
print(col.quotient)
