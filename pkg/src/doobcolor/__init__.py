"""Perfect colorings, completely regular codes and multifold perfect codes in Doob graphs."""

from .eqpart import (
    Code,
    Coloring,
    IntersectionArray,
    code_distance,
    completely_regular_check,
    compute_quotient,
    is_mu_fold_perfect,
    is_perfect_bc,
    merge_colors,
    verify_quotient,
)
from .graph import GraphSpec, Vertex, ball, distance, eigenvalues, index, neighbors, vertex_at
from .params import admissibility, multifold_exists, necessary_conditions

__version__ = "0.1.0"
