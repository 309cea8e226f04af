"""Exact classification and construction of few-distance sets."""

from .construct import build_compat_graph, max_clique, simplex_orbit, solve_fish
from .geomcert import DistanceSet, EuclideanCertificate, certify, distance_spectrum
from .gramgen import CandidateGramMatrix, canonical_key, count_candidates, generate_levels
from .rankfilter import Verdict, build_system, candidate_feasible, rank_feasible, solve_parameters
from .search import LevelSet, SearchParams, full_search, run_level

__version__ = "0.1.0"

__all__ = [
    "CandidateGramMatrix",
    "DistanceSet",
    "EuclideanCertificate",
    "LevelSet",
    "SearchParams",
    "Verdict",
    "build_compat_graph",
    "build_system",
    "candidate_feasible",
    "canonical_key",
    "certify",
    "count_candidates",
    "distance_spectrum",
    "full_search",
    "generate_levels",
    "max_clique",
    "rank_feasible",
    "run_level",
    "simplex_orbit",
    "solve_fish",
    "solve_parameters",
]
