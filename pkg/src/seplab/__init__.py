"""Balanced vertex separators in string graphs via all-pair vertex congestion."""

from .congestion import ConvergenceError, CongestionBracket, Flow, VertexWeighting, congestion_of, vcong_exact, vcong_mwu
from .cutfinder import best_sparse_cut, bourgain_line, sweep_round
from .drawing import count_conflicts, sample_paths, verify_conflict_bound, verify_lower_bound
from .geometry import Polyline, StringRepresentation, gen_grid_strings, gen_random_segments, intersection_graph
from .graph import Graph, InputError, Partition, Separator, components, validate_partition, validate_separator
from .separator import build_separator, separator_experiment

__version__ = "0.1.0"

__all__ = [
    "CongestionBracket",
    "ConvergenceError",
    "Flow",
    "Graph",
    "InputError",
    "Partition",
    "Polyline",
    "Separator",
    "StringRepresentation",
    "VertexWeighting",
    "best_sparse_cut",
    "bourgain_line",
    "build_separator",
    "components",
    "congestion_of",
    "count_conflicts",
    "gen_grid_strings",
    "gen_random_segments",
    "intersection_graph",
    "sample_paths",
    "separator_experiment",
    "sweep_round",
    "validate_partition",
    "validate_separator",
    "vcong_exact",
    "vcong_mwu",
    "verify_conflict_bound",
    "verify_lower_bound",
]
