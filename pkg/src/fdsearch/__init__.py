"""Finite-domain solver kernel with pluggable search-state restoration.

The depth-first engine is parameterized by a Record/Restore strategy
pair: copying, trailing, recomputation and recollection (memoized
changed-domain snapshots), each with fixed/adaptive clone placement.
"""

from .branching import SearchMode, SearchStats
from .domain import State, state_bytes, state_clone
from .engine import Observer, dfs
from .models import (REGISTRY, ProblemSpec, build_alpha, build_golomb,
                     build_langford, build_magic_square, build_queens,
                     build_state, check_solution, parse_model)
from .restoration import StrategyConfig, parse_strategy

__version__ = "0.1.0"

__all__ = [
    "SearchMode", "SearchStats", "State", "state_bytes", "state_clone",
    "Observer", "dfs", "REGISTRY", "ProblemSpec", "build_alpha",
    "build_golomb", "build_langford", "build_magic_square", "build_queens",
    "build_state", "check_solution", "parse_model", "StrategyConfig",
    "parse_strategy", "__version__",
]
