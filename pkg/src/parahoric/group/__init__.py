"""Parahoric quotient groups realized as windowed matrix groups."""

from .constants import (decompose_unipotent, expansion_word, extract_constants,
                        nested_commutator_check, subset_order)
from .core import DEFAULT_CAP, GroupElement, WindowedGroup
from .counterexample import CounterexampleResult, counterexample_group
from .families import (GroupSpec, HeteroBlockGroup, LinearGroup, SymplecticGroup,
                       make_group, parse_group_spec)
from .rank1 import (iwahori_abc, iwahori_sweep, rank1_check, rank1_sweep, weyl_rep)
from .structure import (InducedRing, OrbitReport, axiom_report, h_filtration,
                        independence_report, induced_ring, orbit_report, project_to_h,
                        weyl_transport_report)

__all__ = [
    "DEFAULT_CAP", "GroupElement", "WindowedGroup", "GroupSpec", "HeteroBlockGroup",
    "LinearGroup", "SymplecticGroup", "make_group", "parse_group_spec",
    "decompose_unipotent", "expansion_word", "extract_constants", "nested_commutator_check",
    "subset_order", "CounterexampleResult", "counterexample_group",
    "iwahori_abc", "iwahori_sweep", "rank1_check", "rank1_sweep", "weyl_rep",
    "InducedRing", "OrbitReport", "axiom_report", "h_filtration", "independence_report",
    "induced_ring", "orbit_report", "project_to_h", "weyl_transport_report",
]
