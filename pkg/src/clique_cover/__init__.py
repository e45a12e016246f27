"""Search, verification and enumeration for {K3,K4}-decompositions of complete graphs."""
from __future__ import annotations

from .graphs import Block, CompleteGraphSpec, Pair, SmallGraph
from .solver import (
    CoverInstance,
    CoverOutcome,
    SolverConfig,
    Status,
    solve_exact,
    solve_graph_decomposition,
    solve_minimum,
    verify_cover,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CompleteGraphSpec",
    "CoverInstance",
    "CoverOutcome",
    "Pair",
    "SmallGraph",
    "SolverConfig",
    "Status",
    "solve_exact",
    "solve_graph_decomposition",
    "solve_minimum",
    "verify_cover",
    "__version__",
]
