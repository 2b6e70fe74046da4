"""Weighted arc graphs on surfaces, their operadic gluing and cellular chains."""

from .arcgraph import (
    ArcGraph,
    GapGraph,
    WeightedArcGraph,
    ambient_genus,
    are_parallel,
    enumerate_graphs,
    euler_defect,
    face_trace,
    from_sequence,
    is_cgtree,
    is_gtree,
    is_lgtree,
    is_quasi_filling,
    is_twisted_at,
    is_untwisted,
    relabel,
    seq,
    validate,
)
from .cells import Cell, Chain, boundary, chain_compose, coinvariant_reduce, cup, dl_class, homology
from .errors import ArcError, EnumerationTooLarge, GlueError, InvalidGraphError, UnsupportedCellError
from .glue import (
    compose,
    degeneracy,
    fatten,
    identity,
    retract,
    surface,
    thick_compose,
    twist,
    twist_at,
    untwist_at_zero,
    untwist_canonical,
)
from .kgraph import KElement, filtration_level, k_compose, k_leq, ms_complexity, ordered_point, phi_star
from .stabilize import G, H, decompose_unstable, st, st_G, st_H, stable_equal

__version__ = "0.1.0"
