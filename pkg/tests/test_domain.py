"""Domain kernels, the store and state lifecycle."""

import pytest
from hypothesis import given, settings, strategies as st

from fdsearch import kernel as K
from fdsearch.domain import (ByteModel, CHOICE_BYTES, State, as_pairs,
                             check_normal_form, domain_bytes, domain_new,
                             domain_overwrite, domain_remove, domain_size,
                             domain_tighten, from_pairs, state_bytes,
                             state_clone)
from fdsearch.propagation import ChangeLog, post_neq_offset, propagate


def values_of(d):
    return set(K.dom_values(d))


def make_domain(values):
    """Normalized range list from a non-empty set of ints."""
    vs = sorted(values)
    flat = [vs[0]]
    for prev, cur in zip(vs, vs[1:]):
        if cur != prev + 1:
            flat.append(prev)
            flat.append(cur)
    flat.append(vs[-1])
    return flat


domain_values_st = st.sets(st.integers(min_value=-50, max_value=50),
                           min_size=1, max_size=40)


class TestConstruction:
    def test_new(self, backend):
        d = domain_new(1, 8)
        assert as_pairs(d) == [(1, 8)]
        assert domain_size(d) == 8

    def test_singleton(self, backend):
        d = domain_new(5, 5)
        assert K.dom_is_fixed(d)
        assert K.dom_val(d) == 5

    def test_queens_100_row_domain(self, backend):
        assert domain_size(domain_new(0, 99)) == 100

    def test_inverted_bounds_rejected(self, backend):
        with pytest.raises(ValueError):
            domain_new(3, 2)


class TestRemove:
    def test_split(self, backend):
        assert as_pairs(domain_remove(from_pairs([(1, 8)]), 4)) == \
            [(1, 3), (5, 8)]

    def test_absent_value_returns_same_object(self, backend):
        d = from_pairs([(1, 3), (5, 8)])
        assert domain_remove(d, 9) is d
        assert domain_remove(d, 4) is d

    def test_last_value_signals_empty(self, backend):
        assert domain_remove(from_pairs([(5, 5)]), 5) is None

    def test_edge_trims(self, backend):
        d = from_pairs([(1, 3), (5, 8)])
        assert as_pairs(domain_remove(d, 1)) == [(2, 3), (5, 8)]
        assert as_pairs(domain_remove(d, 8)) == [(1, 3), (5, 7)]
        assert as_pairs(domain_remove(d, 5)) == [(1, 3), (6, 8)]

    def test_drops_singleton_range(self, backend):
        d = from_pairs([(1, 1), (5, 8)])
        assert as_pairs(domain_remove(d, 1)) == [(5, 8)]

    @settings(max_examples=300, deadline=None)
    @given(domain_values_st, st.integers(min_value=-55, max_value=55))
    def test_membership_semantics(self, values, v):
        d = make_domain(values)
        nd = K.dom_remove(d, v)
        if nd is None:
            assert values == {v}
        else:
            check_normal_form(nd)
            assert values_of(nd) == values - {v}


class TestTighten:
    def test_intersection(self, backend):
        d = from_pairs([(1, 3), (5, 8)])
        assert as_pairs(domain_tighten(d, 2, 6)) == [(2, 3), (5, 6)]

    def test_identity_returns_same_object(self, backend):
        d = from_pairs([(1, 8)])
        assert domain_tighten(d, 1, 8) is d
        assert domain_tighten(d, 0, 20) is d

    def test_disjoint_signals_empty(self, backend):
        assert domain_tighten(from_pairs([(1, 3)]), 5, 9) is None

    def test_gap_signals_empty(self, backend):
        assert domain_tighten(from_pairs([(1, 3), (7, 9)]), 4, 6) is None

    @settings(max_examples=300, deadline=None)
    @given(domain_values_st, st.integers(-55, 55), st.integers(-55, 55))
    def test_set_semantics(self, values, a, b):
        lo, hi = min(a, b), max(a, b)
        d = make_domain(values)
        nd = K.dom_tighten(d, lo, hi)
        expected = {v for v in values if lo <= v <= hi}
        if nd is None:
            assert expected == set()
        else:
            check_normal_form(nd)
            assert values_of(nd) == expected


class TestOverwrite:
    def test_trim(self, backend):
        t = from_pairs([(1, 3), (5, 8)])
        domain_overwrite(t, from_pairs([(2, 2)]))
        assert as_pairs(t) == [(2, 2)]

    def test_extend(self, backend):
        t = from_pairs([(1, 8)])
        domain_overwrite(t, from_pairs([(1, 2), (4, 5), (7, 8)]))
        assert as_pairs(t) == [(1, 2), (4, 5), (7, 8)]

    def test_reuses_chain_object(self, backend):
        t = from_pairs([(1, 3), (5, 8)])
        before = id(t)
        domain_overwrite(t, from_pairs([(0, 10)]))
        assert id(t) == before
        assert as_pairs(t) == [(0, 10)]

    def test_identity_case(self, backend):
        t = from_pairs([(1, 3)])
        domain_overwrite(t, from_pairs([(1, 3)]))
        assert as_pairs(t) == [(1, 3)]

    @settings(max_examples=300, deadline=None)
    @given(domain_values_st, domain_values_st)
    def test_value_equality(self, target_values, snap_values):
        t = make_domain(target_values)
        snap = make_domain(snap_values)
        K.dom_overwrite(t, snap)
        assert t == snap
        assert t is not snap


class TestNormalFormInvariant:
    @settings(max_examples=500, deadline=None)
    @given(domain_values_st,
           st.lists(st.integers(min_value=-55, max_value=55), max_size=12))
    def test_random_mutation_chain(self, values, ops):
        d = make_domain(values)
        expected = set(values)
        for v in ops:
            nd = K.dom_remove(d, v)
            expected.discard(v)
            if nd is None:
                assert not expected
                return
            check_normal_form(nd)
            assert values_of(nd) == expected
            d = nd


class TestStateLifecycle:
    def small_state(self):
        s = State([(0, 7)] * 3)
        post_neq_offset(s, 0, 1)
        s.freeze()
        return s

    def test_clone_independence(self, backend):
        s = self.small_state()
        c = state_clone(s)
        s.domains[0] = K.dom_remove(s.domains[0], 3)
        assert as_pairs(c.domains[0]) == [(0, 7)]
        c.domains[1] = K.dom_remove(c.domains[1], 5)
        assert as_pairs(s.domains[1]) == [(0, 7)]

    def test_clone_propagates_identically(self, backend):
        s = State([(0, 7)] * 3)
        post_neq_offset(s, 0, 1)
        post_neq_offset(s, 1, 2)
        s.freeze()
        propagate(s, None)
        c = state_clone(s)
        for st_ in (s, c):
            st_.domains[0] = K.dom_tighten(st_.domains[0], 4, 4)
            st_.wake(0)
            propagate(st_, None)
        assert s.domains == c.domains

    def test_clone_of_fix_point_repropagates_to_no_change(self, backend):
        s = self.small_state()
        propagate(s, None)
        c = state_clone(s)
        c.queue = list(range(len(c.props)))
        for pid in c.queue:
            c.queued[pid] = 1
        log = ChangeLog()
        result = propagate(c, log)
        assert result.outcome == "fix_point"
        assert not log.changed

    def test_clone_rejects_failed_and_solved(self, backend):
        s = self.small_state()
        s.status = "failed"
        with pytest.raises(ValueError):
            state_clone(s)
        s.status = "solved"
        with pytest.raises(ValueError):
            state_clone(s)


class TestByteAccounting:
    def test_determinism(self, backend):
        a = State([(1, 8), (2, 9)])
        b = State([(1, 8), (2, 9)])
        assert state_bytes(a) == state_bytes(b)

    def test_tracks_range_total(self, backend):
        s = State([(1, 8), (2, 9)])
        base = state_bytes(s)
        model = ByteModel()
        s.domains[0] = K.dom_remove(s.domains[0], 4)   # splits: +1 range
        assert state_bytes(s) == base + model.per_range
        s.domains[1] = K.dom_tighten(s.domains[1], 2, 5)  # still 1 range
        assert state_bytes(s) == base + model.per_range

    def test_formula(self):
        s = State([(0, 9)] * 4)
        post_neq_offset(s, 0, 1)
        post_neq_offset(s, 2, 3)
        m = ByteModel()
        assert state_bytes(s) == 4 * (m.var_header + m.per_range) \
            + 2 * m.per_propagator

    def test_empty_problem_is_zero(self):
        assert state_bytes(State([])) == 0

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("BENCH_BYTE_MODEL", "10,2,5")
        m = ByteModel.from_env()
        assert (m.var_header, m.per_range, m.per_propagator) == (10, 2, 5)

    def test_domain_bytes(self):
        m = ByteModel()
        assert domain_bytes([1, 3, 5, 8], m) == m.var_header + 2 * m.per_range

    def test_choice_constant_exists(self):
        assert CHOICE_BYTES > 0
