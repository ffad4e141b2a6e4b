"""Edge coloring of graphs whose core has maximum degree at most 2.

Kempe-chain and multifan recoloring machinery, the class 1 / class 2
classifier, exact and constructive edge colorers, the O_Delta family, and
verification campaigns that check the structural statements on small graphs.
"""

from .classify import ClassLabel, NotCandidateError, check_hz_structure, classify, is_petersen_star
from .coloring import Chain, ColoringError, PartialColoring, chain_through, coloring_from_dict, linked, validate_proper
from .enumerate import enumerate_hz_candidates
from .graph import SimpleGraph, core, is_hz_candidate, is_overfull, k5_minus_edge, petersen_star
from .graph6 import from_graph6, to_graph6
from .harness import CampaignConfig, VerificationReport, replay_witness, run_suite
from .lemmas import LemmaInstance, check_lemma_predicates
from .odelta import ODeltaSpec, build_o_delta, recognize_o_delta
from .oracle import chromatic_index_exact, delta_edge_color, vizing_plus_one_coloring
from .script import RecolorScript, apply_script

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig",
    "Chain",
    "ClassLabel",
    "ColoringError",
    "LemmaInstance",
    "NotCandidateError",
    "ODeltaSpec",
    "PartialColoring",
    "RecolorScript",
    "SimpleGraph",
    "VerificationReport",
    "apply_script",
    "build_o_delta",
    "chain_through",
    "check_hz_structure",
    "check_lemma_predicates",
    "chromatic_index_exact",
    "classify",
    "coloring_from_dict",
    "core",
    "delta_edge_color",
    "enumerate_hz_candidates",
    "from_graph6",
    "is_hz_candidate",
    "is_overfull",
    "is_petersen_star",
    "k5_minus_edge",
    "linked",
    "petersen_star",
    "recognize_o_delta",
    "replay_witness",
    "run_suite",
    "to_graph6",
    "validate_proper",
    "vizing_plus_one_coloring",
]
