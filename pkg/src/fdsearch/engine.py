"""Depth-first search parameterized by a restoration strategy.

One loop iteration per node: propagate, then either emit a solution,
restore after a failure, or branch and descend. The chunk for a new
choice is recorded at the fix point BEFORE the first alternative is
committed, so every stored snapshot is the exact state to which the
engine later applies the second alternative. A fresh change log starts
just before each commit and just after each restore; the log consumed by
a record therefore covers everything between two consecutive fix points.

Best-solution search backtracks on every solution and re-imposes the
current bound right after each restore (bounds live in no chunk),
followed by a quiet settling propagation. That settling step is where
all strategies converge to the identical store, so it is also the
handoff point lockstep verification compares.
"""

from .branching import FIRST, SECOND, SearchStats, branch, commit, inject_bound
from .domain import state_bytes, state_clone
from .propagation import (ChangeLog, FIX_POINT, INCONSISTENCY,
                          SOLVED_OUTCOME, propagate)
from .restoration import PathStack


class Observer:
    """Instrumentation hooks; all optional."""

    def on_node(self, outcome, state, stack):
        """After each counted propagate."""

    def on_restore(self, state, stack):
        """After a restore, once the bound has been refreshed."""

    def on_record(self, state, stack):
        """After a chunk has been pushed."""

    def on_solution(self, values):
        """On each emitted solution."""


class StopSearch(Exception):
    """Raised by observers to abandon a run (used by lockstep checks)."""


def dfs(root, strategy, mode, observer=None):
    """Explore root exhaustively per mode; returns (solutions, stats).

    root is a prepared State (propagators posted); it is frozen and
    mutated by the search. solutions holds every emitted solution as a
    value tuple; in best mode that is each improving incumbent, last one
    optimal.
    """
    s = root
    s.freeze()
    strategy.prepare(s)
    stats = SearchStats()
    solutions = []
    stack = None
    incumbent = None
    objective = mode.objective
    log = ChangeLog(strategy.trail_log)

    def note_mem(current):
        used = state_bytes(current)
        if stack is not None:
            used += state_bytes(stack.root) + stack.payload_total
        if used > stats.peak_payload_bytes:
            stats.peak_payload_bytes = used

    while True:
        result = propagate(s, log)
        stats.nodes += 1
        stats.propagations += result.executions
        note_mem(s)
        if observer is not None:
            observer.on_node(result.outcome, s, stack)

        if result.outcome == FIX_POINT:
            if stack is None:
                stack = PathStack(state_clone(s))
                log = ChangeLog(strategy.trail_log)
            choice = branch(s)
            chunk = strategy.record(s, choice, log, stack)
            stack.push(chunk)
            if len(stack) > stats.max_depth:
                stats.max_depth = len(stack)
            if observer is not None:
                observer.on_record(s, stack)
            log = ChangeLog(strategy.trail_log)
            commit(s, choice, FIRST, log)
            s.depth = len(stack)
            note_mem(s)
            continue

        if result.outcome == SOLVED_OUTCOME:
            values = s.solution_values()
            solutions.append(values)
            stats.solutions += 1
            if observer is not None:
                observer.on_solution(values)
            if mode.mode == mode.FIRST:
                return solutions, stats
            if mode.mode == mode.BEST:
                incumbent = values[objective]
        else:
            stats.failures += 1

        # backtrack (after a failure or an emitted solution)
        if stack is None:
            return solutions, stats
        s2 = strategy.restore(s, stack, log, stats)
        if s2 is None:
            return solutions, stats
        s = s2
        s.depth = len(stack) - 1
        log = ChangeLog(strategy.trail_log)
        if incumbent is not None:
            inject_bound(s, objective, incumbent, log)
            settle = propagate(s, log)
            stats.propagations += settle.executions
        if observer is not None:
            observer.on_restore(s, stack)
        top = stack.top()
        commit(s, top.choice, SECOND, log)
        s.depth = len(stack)
        note_mem(s)
