"""Antimagic labelings of bipartite graphs with minimum degree at least 15."""
from .assembler import Labeling, LabelPartition, assemble
from .decomposer import DecompositionPlan, decompose
from .errors import ConstructionError, ContractError
from .generators import complete_bipartite, random_min_degree, split_cover, tiny_enumerate
from .graph import BipartiteGraph, Graph, parse_edge_list, read_edge_list, write_edge_list
from .oracle import brute_force_is_antimagic, find_antimagic_labeling
from .pipeline import LabelResult, label_graph
from .verifier import Verdict, structural_report, verify

__all__ = [
    "BipartiteGraph",
    "ConstructionError",
    "ContractError",
    "DecompositionPlan",
    "Graph",
    "LabelPartition",
    "LabelResult",
    "Labeling",
    "Verdict",
    "assemble",
    "brute_force_is_antimagic",
    "complete_bipartite",
    "decompose",
    "find_antimagic_labeling",
    "label_graph",
    "parse_edge_list",
    "random_min_degree",
    "read_edge_list",
    "split_cover",
    "structural_report",
    "tiny_enumerate",
    "verify",
    "write_edge_list",
]

__version__ = "0.1.0"
