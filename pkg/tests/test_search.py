"""Branching, commits, the open-choice walk and the DFS engine."""

import pytest

from fdsearch.branching import (BOTH, Choice, FIRST, NONE_COMMITTED, SECOND,
                                SearchMode, branch, commit,
                                expose_open_choice, inject_bound)
from fdsearch.domain import State, as_pairs, from_pairs, state_clone
from fdsearch.engine import dfs
from fdsearch.models import build_queens, build_state
from fdsearch.propagation import ChangeLog, post_linear_leq, propagate
from fdsearch.restoration import Chunk, PathStack, parse_strategy


def strategy(name, **kw):
    return parse_strategy(name, **kw).build()


class TestBranch:
    def test_first_unfixed_min_value(self):
        s = State([(3, 3), (2, 5), (1, 9)])
        choice = branch(s)
        assert (choice.var, choice.pivot) == (1, 2)
        assert choice.committed == NONE_COMMITTED

    def test_all_fixed_gives_no_choice(self):
        s = State([(3, 3), (2, 2)])
        assert branch(s) is None

    def test_queens8_root_choice(self):
        s = build_state(build_queens(8))
        s.freeze()
        propagate(s, None)
        choice = branch(s)
        assert (choice.var, choice.pivot) == (0, 0)

    def test_failed_state_rejected(self):
        s = State([(1, 2)])
        s.status = "failed"
        with pytest.raises(ValueError):
            branch(s)


class TestCommit:
    def test_first_tightens_to_pivot(self):
        s = State([(2, 5)])
        choice = Choice(0, 2)
        commit(s, choice, FIRST, None)
        assert as_pairs(s.domains[0]) == [(2, 2)]
        assert choice.committed == FIRST

    def test_second_removes_pivot(self):
        s = State([(2, 5)])
        choice = Choice(0, 2)
        choice.committed = FIRST
        commit(s, choice, SECOND, None)
        assert as_pairs(s.domains[0]) == [(3, 5)]
        assert choice.committed == BOTH
        assert not choice.is_open()

    def test_second_on_last_value_flags_failure(self):
        s = State([(2, 2)])
        s.freeze()
        choice = Choice(0, 2)
        choice.committed = FIRST
        commit(s, choice, SECOND, None)
        assert s.wipeout
        assert propagate(s, None).outcome == "inconsistency"

    def test_commit_is_logged(self):
        s = State([(2, 5)])
        log = ChangeLog(full=True)
        commit(s, Choice(0, 2), FIRST, log)
        assert log.entries() == [(0, [2, 5])]

    def test_monotone_protocol_enforced(self):
        s = State([(2, 5)])
        choice = Choice(0, 2)
        with pytest.raises(ValueError):
            commit(s, choice, SECOND, None)
        commit(s, choice, FIRST, None)
        with pytest.raises(ValueError):
            commit(s, choice, FIRST, None)


class TestExposeOpenChoice:
    def _stack(self, committed_states):
        stack = PathStack(root=None)
        for i, committed in enumerate(committed_states):
            choice = Choice(0, 1)
            choice.committed = committed
            stack.push(Chunk(choice, i + 1))
        return stack

    def test_open_top_unchanged(self):
        stack = self._stack([BOTH, FIRST])
        top = expose_open_choice(stack)
        assert top is stack.chunks[-1]
        assert len(stack) == 2

    def test_pops_closed_until_open(self):
        stack = self._stack([FIRST, BOTH, BOTH])
        top = expose_open_choice(stack)
        assert len(stack) == 1
        assert top.choice.committed == FIRST

    def test_all_closed_exhausts(self):
        stack = self._stack([BOTH, BOTH, BOTH])
        assert expose_open_choice(stack) is None
        assert len(stack) == 0


class TestInjectBound:
    def test_tightens_objective(self):
        s = State([(0, 100)])
        inject_bound(s, 0, 25, None)
        assert as_pairs(s.domains[0]) == [(0, 24)]

    def test_bound_below_minimum_fails(self):
        s = State([(10, 100)])
        s.freeze()
        inject_bound(s, 0, 10, None)
        assert s.wipeout
        assert propagate(s, None).outcome == "inconsistency"

    def test_bound_is_logged(self):
        s = State([(0, 100)])
        log = ChangeLog(full=True)
        inject_bound(s, 0, 25, log)
        assert log.entries() == [(0, [0, 100])]


class TestSearchMode:
    def test_objective_only_for_best(self):
        with pytest.raises(ValueError):
            SearchMode("all", objective=3)
        with pytest.raises(ValueError):
            SearchMode("best")
        assert SearchMode("best", objective=0).objective == 0

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            SearchMode("every")


class TestDfs:
    def test_unsatisfiable_returns_non_solvable(self):
        s = State([(1, 9), (1, 9)])
        post_linear_leq(s, (1, -1), (0, 1), -1)   # x < y
        post_linear_leq(s, (-1, 1), (0, 1), -1)   # y < x
        sols, stats = dfs(s, strategy("copy"), SearchMode("all"))
        assert sols == []
        assert stats.failures >= 1
        assert stats.solutions == 0

    def test_first_solution_stops(self):
        s = build_state(build_queens(6))
        sols, stats = dfs(s, strategy("copy"), SearchMode("first"))
        assert len(sols) == 1
        assert stats.solutions == 1

    def test_stats_invariants(self):
        from fdsearch.engine import Observer

        class CountNodes(Observer):
            def __init__(self):
                self.outcomes = {"fix_point": 0, "inconsistency": 0,
                                 "solved": 0}

            def on_node(self, outcome, state, stack):
                self.outcomes[outcome] += 1

        counter = CountNodes()
        s = build_state(build_queens(6))
        _, stats = dfs(s, strategy("trail"), SearchMode("all"),
                       observer=counter)
        assert stats.failures <= stats.nodes
        assert stats.max_depth <= stats.nodes
        # node counting convention: one node per propagate outcome
        assert stats.nodes == sum(counter.outcomes.values())
        assert stats.failures == counter.outcomes["inconsistency"]
        assert stats.solutions == counter.outcomes["solved"]

    def test_solutions_emitted_in_lexicographic_order(self):
        s = build_state(build_queens(6))
        sols, _ = dfs(s, strategy("copy"), SearchMode("all"))
        assert sols == sorted(sols)

    def test_solved_root(self):
        s = State([(4, 4), (7, 7)])
        sols, stats = dfs(s, strategy("copy"), SearchMode("all"))
        assert sols == [(4, 7)]
        assert stats.nodes == 1
