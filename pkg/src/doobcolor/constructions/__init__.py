"""Builders for perfect colorings and codes; every builder verifies its output."""

from .base import (
    d40_partition,
    hamming_one_perfect,
    mds_coloring,
    mds_distance3_partition,
    mds_partition,
    perfect_code_coloring,
    perfect_code_partition,
)
from .bc import bb_coloring, bcind_family, build_bc_coloring, search_bcind_family
from .common import CodePartition
from .compose import bc_family_compose, diag_product, extend, multiply_coloring, split_coloring, tiling_compose
from .derived import gamma_mds_coloring, multipartite, rad2_code, three_j, three_j_minus_e
from .multifold import multifold_partition
from .recipe import evaluate, parse_recipe
