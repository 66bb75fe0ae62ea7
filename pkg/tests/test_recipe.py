import numpy as np
import pytest

from doobcolor.constructions.recipe import RecipeError, declare, evaluate, format_recipe, parse_recipe
from doobcolor.eqpart import compute_quotient
from doobcolor.errors import ConditionViolated
from doobcolor.graph import GraphSpec

SPLIT = """
# a 16-coloring of D(1,2)
split 1
  multiply 2 0      # H(2,4)
    perfect 0 1
"""


def test_parse_and_format():
    node = parse_recipe(SPLIT)
    assert node.name == "split" and node.args == (1,)
    assert node.children[0].children[0].args == (0, 1)
    assert parse_recipe(format_recipe(node)).children[0].args == (2, 0)


@pytest.mark.parametrize("text", ["", "perfect 0 x", "perfect 0 1\nmds 0 1", "\tperfect 0 1"])
def test_parse_errors(text):
    with pytest.raises(RecipeError):
        parse_recipe(text)


RECIPES = [
    (SPLIT, GraphSpec(1, 6), 16),
    ("extend 1 0\n  mds 0 2", GraphSpec(1, 2), 4),
    ("diag\n  perfect 0 1\n  mds 1 0", GraphSpec(1, 1), 4),
    ("sum\n  threejme 0 3\n  threejme 0 3", GraphSpec(0, 6), 4),
    ("merge 1 3\n  perfect 0 1", GraphSpec(0, 1), 2),
    ("bc 6 2", GraphSpec(0, 2), 2),
    ("bc 3 1 1 1", GraphSpec(1, 1), 2),
    ("bb 1 0", GraphSpec(1, 0), 2),
    ("multifold 0 9", GraphSpec(0, 9), 4),
    ("gammamds 2 0 8", GraphSpec(0, 8), 5),
    ("multipartite 2 0 4", GraphSpec(0, 4), 16),
    ("threej 1 2", GraphSpec(1, 2), 4),
    ("tiling 0\n  threej 0 4\n  multifold 0 1", GraphSpec(0, 5), 2),
]


@pytest.mark.parametrize("text,spec,k", RECIPES, ids=[r[0].split()[0] for r in RECIPES])
def test_evaluate(text, spec, k):
    d = declare(parse_recipe(text))
    assert d.spec == spec and d.S.shape == (k, k)
    col = evaluate(text)
    assert col.spec == spec and col.k == k and np.array_equal(col.quotient, d.S)
    if spec.order <= 4**8:
        assert np.array_equal(compute_quotient(col), d.S)


def test_declaration_errors():
    with pytest.raises(RecipeError):
        declare(parse_recipe("perfect 0"))
    with pytest.raises(RecipeError):
        declare(parse_recipe("extend 1 0"))
    with pytest.raises(RecipeError):
        declare(parse_recipe("frobnicate 1"))
    with pytest.raises(RecipeError):
        declare(parse_recipe("merge 1 1\n  perfect 0 1"))
    with pytest.raises(ConditionViolated):
        declare(parse_recipe("merge 1 15\n  multipartite 2 0 4"))
    with pytest.raises(RecipeError):
        declare(parse_recipe("diag\n  perfect 0 1"))
