"""Variable domains, the store, and whole-state lifecycle.

Variables are dense non-negative ints (0 .. nvars-1). A domain is a
normalized flat range list (see fdsearch._kernel_py); the store is a
plain list indexed by variable. A State bundles the store with its
propagators, their subscriptions and a scheduling queue.

States are confined to one execution context at a time; independent
clones may be used concurrently. Nothing here locks.
"""

import os

from . import kernel as K

ACTIVE = "active"
SOLVED = "solved"
FAILED = "failed"


class ByteModel:
    """Logical memory accounting: fixed costs per variable header, per
    range and per propagator. Deliberately not allocator introspection,
    so byte assertions are platform-independent.

    BENCH_BYTE_MODEL="<var>,<range>,<prop>" overrides the defaults.
    """

    __slots__ = ("var_header", "per_range", "per_propagator")

    def __init__(self, var_header=16, per_range=8, per_propagator=32):
        self.var_header = var_header
        self.per_range = per_range
        self.per_propagator = per_propagator

    @classmethod
    def from_env(cls):
        raw = os.environ.get("BENCH_BYTE_MODEL")
        if not raw:
            return cls()
        parts = [int(p) for p in raw.split(",")]
        if len(parts) != 3:
            raise ValueError(
                "BENCH_BYTE_MODEL must be three comma-separated ints "
                "(var header, per range, per propagator)")
        return cls(*parts)


BYTE_MODEL = ByteModel.from_env()

# Fixed per-chunk overhead for the recorded choice (not part of the
# env-tunable triple).
CHOICE_BYTES = 24


def domain_new(lo, hi):
    """Fresh domain [lo, hi]; raises ValueError when lo > hi."""
    return K.dom_new(lo, hi)


def domain_remove(d, v):
    """d minus {v}; returns None (the empty signal) when v was the last
    value, the unchanged object when v is absent."""
    return K.dom_remove(d, v)


def domain_tighten(d, lo, hi):
    """d intersected with [lo, hi]; None when the intersection is empty."""
    return K.dom_tighten(d, lo, hi)


def domain_overwrite(target, snapshot):
    """Make target value-equal to snapshot in place, trimming or
    extending the existing range chain."""
    K.dom_overwrite(target, snapshot)


def domain_size(d):
    return K.dom_size(d)


def domain_is_fixed(d):
    return K.dom_is_fixed(d)


def domain_values(d):
    return K.dom_values(d)


def domain_bytes(d, model=None):
    m = model or BYTE_MODEL
    return m.var_header + m.per_range * (len(d) >> 1)


def as_pairs(d):
    """Range list as [(lo, hi), ...] for display and tests."""
    return [(d[i], d[i + 1]) for i in range(0, len(d), 2)]


def from_pairs(pairs):
    """Inverse of as_pairs; validates normal form."""
    flat = []
    for lo, hi in pairs:
        flat.append(lo)
        flat.append(hi)
    check_normal_form(flat)
    return flat


def check_normal_form(d):
    """Raise ValueError unless d is a valid normalized range list."""
    if len(d) == 0 or len(d) % 2 != 0:
        raise ValueError("bad range list length: %r" % (d,))
    for i in range(0, len(d), 2):
        if d[i] > d[i + 1]:
            raise ValueError("inverted range in %r" % (d,))
        if i + 2 < len(d) and d[i + 1] + 1 >= d[i + 2]:
            raise ValueError("unsorted/adjacent ranges in %r" % (d,))
    return True


class State:
    """A store plus its propagators.

    Propagators are stateless beyond their subscriptions and are shared
    between clones; the propagator set is frozen once search starts
    (entailed propagators are never removed either, so all restoration
    strategies see identical sets). Only the domains, the scheduling
    queue and the status are per-state.
    """

    __slots__ = ("domains", "props", "subs", "prog", "queue", "qhead",
                 "queued", "status", "depth", "wipeout", "frozen")

    def __init__(self, bounds):
        self.domains = [K.dom_new(lo, hi) for lo, hi in bounds]
        self.props = []
        self.subs = [[] for _ in bounds]
        self.prog = ()
        self.queue = []
        self.qhead = 0
        self.queued = bytearray()
        self.status = ACTIVE
        self.depth = 0
        self.wipeout = False
        self.frozen = False

    @property
    def nvars(self):
        return len(self.domains)

    def post(self, prop):
        """Attach a propagator and subscribe it to its variables."""
        if self.frozen:
            raise RuntimeError("cannot post propagators once search started")
        pid = len(self.props)
        prop.pid = pid
        self.props.append(prop)
        for v in prop.varids:
            self.subs[v].append(pid)
        return pid

    def freeze(self):
        """Seal the propagator set, build the kernel dispatch table and
        schedule every propagator once."""
        if not self.frozen:
            self.props = tuple(self.props)
            self.subs = tuple(tuple(s) for s in self.subs)
            self.prog = tuple(p.table_entry() for p in self.props)
            self.frozen = True
            self.queued = bytearray(len(self.props))
            self.queue = list(range(len(self.props)))
            self.qhead = 0
            for pid in range(len(self.props)):
                self.queued[pid] = 1

    def wake(self, var):
        """Schedule subscribers of var (FIFO, deduplicated by pid)."""
        queued = self.queued
        queue = self.queue
        for pid in self.subs[var]:
            if not queued[pid]:
                queued[pid] = 1
                queue.append(pid)

    def clear_queue(self):
        del self.queue[:]
        self.qhead = 0
        for i in range(len(self.queued)):
            self.queued[i] = 0

    def all_fixed(self):
        for d in self.domains:
            if len(d) != 2 or d[0] != d[1]:
                return False
        return True

    def solution_values(self):
        return tuple(K.dom_val(d) for d in self.domains)


def state_clone(s):
    """Deep, independent copy of an active state.

    Domains are copied; propagators and subscriptions are shared
    (immutable once frozen). The clone starts with an empty queue, which
    is only valid at a fix point - the places search clones states.
    """
    if s.status != ACTIVE:
        raise ValueError("cannot clone a %s state" % s.status)
    c = State.__new__(State)
    c.domains = K.store_clone(s.domains)
    c.props = s.props
    c.subs = s.subs
    c.prog = s.prog
    c.queue = []
    c.qhead = 0
    c.queued = bytearray(len(s.props))
    c.status = ACTIVE
    c.depth = s.depth
    c.wipeout = False
    c.frozen = s.frozen
    return c


def state_bytes(s, model=None):
    """Deterministic logical size of a state's payload."""
    m = model or BYTE_MODEL
    total = m.per_propagator * len(s.props)
    header = m.var_header
    per_range = m.per_range
    for d in s.domains:
        total += header + per_range * (len(d) >> 1)
    return total
