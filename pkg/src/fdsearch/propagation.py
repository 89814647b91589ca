"""Propagators and the fix-point engine.

The engine drains a FIFO queue of propagator ids; a propagator is
re-queued whenever a subscribed variable changes. Every domain mutation
on the search path goes through apply_change so it is recorded in the
active ChangeLog, which is what the restoration strategies consume:
trailing needs pre-images, recollection only needs the set of changed
variables.
"""

from . import kernel as K
from .domain import ACTIVE, FAILED, SOLVED

SOLVED_OUTCOME = "solved"
INCONSISTENCY = "inconsistency"
FIX_POINT = "fix_point"


class ChangeLog:
    """First-change record of one propagation span.

    A span runs from just before a commit (or a restore) to the next fix
    point. Each variable appears at most once; the stored pre-image is
    the domain immediately before the variable's first change in the
    span. Pre-images are only materialized in full mode (trailing);
    other strategies need just the changed set.
    """

    __slots__ = ("changed", "full")

    def __init__(self, full=False):
        self.changed = {}
        self.full = full

    def __len__(self):
        return len(self.changed)

    @property
    def changed_set(self):
        return set(self.changed)

    def entries(self):
        """(var, pre_image) pairs in first-change order."""
        return list(self.changed.items())


def log_note_change(log, var, pre_image):
    """Record var's pre-change domain; later changes of var are ignored."""
    if var not in log.changed:
        log.changed[var] = pre_image if log.full else None


def apply_change(s, var, new_dom, log):
    """Install a changed domain, log it and wake subscribers.

    new_dom is None for a wipeout: the store is left untouched and the
    state is flagged so the next propagate reports INCONSISTENCY. Only
    applied mutations are logged, so undoing a log restores exactly.
    """
    if new_dom is None:
        s.wipeout = True
        return False
    if log is not None:
        log_note_change(log, var, s.domains[var])
    s.domains[var] = new_dom
    s.wake(var)
    return True


class Propagator:
    """Base: a filtering step over subscribed variables.

    Subclasses are immutable after construction (no hidden mutable
    state), which is what lets clones share them and lets recollection
    restore domains alone. table_entry() packs the propagator for the
    kernel drain loop; run() is the equivalent single sweep for direct
    use and both apply the same kernel filter.
    """

    __slots__ = ("pid", "varids")

    def table_entry(self):
        raise NotImplementedError

    def _filter(self, domains):
        raise NotImplementedError

    def run(self, s, log):
        """One filtering sweep; False on inconsistency."""
        changes = self._filter(s.domains)
        if changes is None:
            s.wipeout = True
            return False
        for var, nd in changes:
            if not apply_change(s, var, nd, log):
                return False
        return True


class NeqOffset(Propagator):
    """x + cx != y + cy at value consistency (prunes only off fixed sides)."""

    __slots__ = ("x", "y", "cx", "cy")

    def __init__(self, x, y, cx, cy):
        if x == y:
            raise ValueError("disequality needs distinct variables")
        self.x = x
        self.y = y
        self.cx = cx
        self.cy = cy
        self.varids = (x, y)

    def table_entry(self):
        return (K.KIND_NEQ, self.x, self.y, self.cx, self.cy)

    def _filter(self, domains):
        return K.neq_filter(domains, self.x, self.y, self.cx, self.cy)


class AllDiff(Propagator):
    """alldifferent at value consistency: fixed values are removed from
    the other variables, chased transitively."""

    __slots__ = ()

    def __init__(self, varids):
        if len(varids) < 2:
            raise ValueError("alldifferent needs at least two variables")
        if len(set(varids)) != len(varids):
            raise ValueError("alldifferent variables must be distinct")
        self.varids = tuple(varids)

    def table_entry(self):
        return (K.KIND_ALLDIFF, self.varids)

    def _filter(self, domains):
        return K.alldiff_filter(domains, self.varids)


class _Linear(Propagator):
    __slots__ = ("coeffs", "c")

    def __init__(self, coeffs, varids, c):
        if len(coeffs) != len(varids) or not varids:
            raise ValueError("coefficient/variable length mismatch")
        if any(a == 0 for a in coeffs):
            raise ValueError("zero coefficient")
        self.coeffs = tuple(coeffs)
        self.varids = tuple(varids)
        self.c = c


class LinearEq(_Linear):
    """sum(coeffs * vars) == c at bounds consistency."""

    __slots__ = ()

    def table_entry(self):
        return (K.KIND_LINEAR_EQ, self.coeffs, self.varids, self.c)

    def _filter(self, domains):
        return K.linear_eq_filter(domains, self.coeffs, self.varids, self.c)


class LinearLeq(_Linear):
    """sum(coeffs * vars) <= c at bounds consistency."""

    __slots__ = ()

    def table_entry(self):
        return (K.KIND_LINEAR_LEQ, self.coeffs, self.varids, self.c)

    def _filter(self, domains):
        return K.linear_leq_filter(domains, self.coeffs, self.varids, self.c)


def post_neq_offset(s, x, y, cx=0, cy=0):
    return s.post(NeqOffset(x, y, cx, cy))


def post_alldiff(s, varids):
    return s.post(AllDiff(varids))


def post_linear_eq(s, coeffs, varids, c):
    return s.post(LinearEq(coeffs, varids, c))


def post_linear_leq(s, coeffs, varids, c):
    return s.post(LinearLeq(coeffs, varids, c))


class PropagationResult:
    __slots__ = ("outcome", "executions")

    def __init__(self, outcome, executions):
        self.outcome = outcome
        self.executions = executions

    def __repr__(self):
        return "PropagationResult(%s, %d)" % (self.outcome, self.executions)


def propagate(s, log):
    """Run scheduled propagators to a fix point.

    Outcomes: solved (all fixed, queue drained), inconsistency (a domain
    wiped out; the queue is cleared so the state object can be repaired
    by trailing), or fix_point. The scheduling loop itself lives in the
    kernel backends (propagate_drain).
    """
    if s.status == FAILED or s.wipeout:
        s.wipeout = False
        s.status = FAILED
        s.clear_queue()
        return PropagationResult(INCONSISTENCY, 0)
    code, executions = K.propagate_drain(s, log)
    if code == K.OUTCOME_INCONSISTENT:
        s.wipeout = False
        s.status = FAILED
        s.clear_queue()
        return PropagationResult(INCONSISTENCY, executions)
    if code == K.OUTCOME_SOLVED:
        s.status = SOLVED
        return PropagationResult(SOLVED_OUTCOME, executions)
    s.status = ACTIVE
    return PropagationResult(FIX_POINT, executions)
