"""Choices, branching, commits and search bookkeeping.

The brancher is fixed: lowest-indexed unfixed variable, its minimum
value as pivot, alternatives (var = pivot) then (var != pivot). One
deterministic rule keeps search trees identical across restoration
strategies, which is what the cross-strategy assertions rely on.
"""

from . import kernel as K
from .domain import ACTIVE, FAILED
from .propagation import apply_change

NONE_COMMITTED = 0
FIRST = 1
BOTH = 2

SECOND = 2  # alternative selector; numerically the same as BOTH


class Choice:
    """Binary choice: first = (var = pivot), second = (var != pivot)."""

    __slots__ = ("var", "pivot", "committed")

    def __init__(self, var, pivot):
        self.var = var
        self.pivot = pivot
        self.committed = NONE_COMMITTED

    def is_open(self):
        return self.committed < BOTH

    def __repr__(self):
        state = ("none", "first", "both")[self.committed]
        return "Choice(var=%d, pivot=%d, committed=%s)" % (
            self.var, self.pivot, state)


class SearchMode:
    """first_solution | all_solutions | best_solution (minimizing one
    objective variable)."""

    FIRST = "first"
    ALL = "all"
    BEST = "best"

    __slots__ = ("mode", "objective")

    def __init__(self, mode, objective=None):
        if mode not in (self.FIRST, self.ALL, self.BEST):
            raise ValueError("unknown search mode %r" % (mode,))
        if (objective is not None) != (mode == self.BEST):
            raise ValueError("objective must be given exactly for best mode")
        self.mode = mode
        self.objective = objective

    def __repr__(self):
        return "SearchMode(%s, objective=%r)" % (self.mode, self.objective)


class SearchStats:
    __slots__ = ("nodes", "failures", "solutions", "max_depth",
                 "propagations", "peak_payload_bytes")

    def __init__(self):
        self.nodes = 0
        self.failures = 0
        self.solutions = 0
        self.max_depth = 0
        self.propagations = 0
        self.peak_payload_bytes = 0

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "failures": self.failures,
            "solutions": self.solutions,
            "max_depth": self.max_depth,
            "propagations": self.propagations,
            "peak_payload_bytes": self.peak_payload_bytes,
        }

    def __repr__(self):
        return "SearchStats(%r)" % (self.as_dict(),)


def branch(s):
    """Choice on the lowest-indexed unfixed variable, or None if all
    variables are fixed."""
    if s.status == FAILED:
        raise ValueError("cannot branch on a failed state")
    for var, d in enumerate(s.domains):
        if len(d) != 2 or d[0] != d[1]:
            return Choice(var, d[0])
    return None


def _apply_alternative(s, var, pivot, alt, log):
    """Apply one alternative's branch constraint (no bookkeeping)."""
    d = s.domains[var]
    if alt == FIRST:
        nd = K.dom_tighten(d, pivot, pivot)
    else:
        nd = K.dom_remove(d, pivot)
    if nd is not d:
        apply_change(s, var, nd, log)


def commit(s, choice, alt, log):
    """Commit an alternative of a choice and advance its state.

    Committing second on a domain without another value flags the state;
    the failure surfaces as inconsistency at the next propagate.
    """
    if alt == FIRST:
        if choice.committed != NONE_COMMITTED:
            raise ValueError("first alternative already committed")
        choice.committed = FIRST
    else:
        if choice.committed != FIRST:
            raise ValueError("second alternative needs committed == first")
        choice.committed = BOTH
    _apply_alternative(s, choice.var, choice.pivot, alt, log)


def replay_alternative(s, choice, log=None):
    """Re-apply the already-taken alternative of a choice (used by
    top-down recomputation); does not advance choice.committed."""
    alt = FIRST if choice.committed == FIRST else SECOND
    _apply_alternative(s, choice.var, choice.pivot, alt, log)


def inject_bound(s, objective, incumbent, log):
    """Constrain the objective to improve on the incumbent.

    Realized as a logged bounds tightening of the objective variable,
    which for a unit upper bound is equivalent to posting obj <=
    incumbent - 1 while keeping the propagator set identical across
    strategies.
    """
    d = s.domains[objective]
    nd = K.dom_tighten(d, d[0], incumbent - 1)
    if nd is not d:
        apply_change(s, objective, nd, log)


def expose_open_choice(stack):
    """Pop closed chunks until an open choice tops the stack.

    Returns the exposed chunk, or None when the stack is exhausted.
    """
    while True:
        top = stack.top()
        if top is None:
            return None
        if top.choice.is_open():
            return top
        stack.pop()
