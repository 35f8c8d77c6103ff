"""Packing maximal matroid-independent arborescences in mixed graphs."""

from .conditions import (
    Certificate,
    Instance,
    check_condition_ii,
    check_condition_iii,
    check_dns,
    check_edmonds,
    check_kiraly,
    check_kkt,
    check_mt,
    eval_fC,
    find_min_deficient_or_tight,
    replay,
)
from .graph import (
    BiSet,
    MixedGraph,
    apply_orientation,
    atoms,
    indeg_biset,
    indeg_set,
    reach_from,
    reach_set,
    strong_components,
    subpartition_edge_count,
)
from .matroid import (
    FreeMatroid,
    GraphicMatroid,
    LinearGF2Matroid,
    PartitionMatroid,
    UniformMatroid,
    is_independent,
    is_placement_independent,
    preimage,
    rank,
)
from .orientation import CoverObstruction, check_intersecting_supermodular, cover_orientation
from .packing import (
    Arborescence,
    Item,
    Packing,
    brute_force_exists,
    pack_digraph,
    pack_mixed,
    verify_packing,
)

__all__ = [
    "Arborescence", "BiSet", "Certificate", "CoverObstruction", "FreeMatroid",
    "GraphicMatroid", "Instance", "Item", "LinearGF2Matroid", "MixedGraph", "Packing",
    "PartitionMatroid", "UniformMatroid", "apply_orientation", "atoms",
    "brute_force_exists", "check_condition_ii", "check_condition_iii", "check_dns",
    "check_edmonds", "check_intersecting_supermodular", "check_kiraly", "check_kkt",
    "check_mt", "cover_orientation", "eval_fC", "find_min_deficient_or_tight",
    "indeg_biset", "indeg_set", "is_independent", "is_placement_independent",
    "pack_digraph", "pack_mixed", "preimage", "rank", "reach_from", "reach_set",
    "replay", "strong_components", "subpartition_edge_count", "verify_packing",
]
