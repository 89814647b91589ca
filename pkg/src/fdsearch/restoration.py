"""Record/Restore strategy pairs over a path stack.

The search engine records one chunk per branching and asks the active
strategy to restore after failures and emitted solutions. Four families:

  copy       - full state clone in every chunk; restore clones it back.
  trail      - pre-image undo entries per chunk; restore rolls back
               bottom-up on the live state object.
  recomp     - choices only, plus a clone every d steps; restore replays
               the taken alternatives from the nearest clone in a batch
               and re-propagates once. Adaptive places an extra clone at
               the midpoint of each replayed span.
  recollect  - snapshots of exactly the domains changed since the
               previous fix point; restore overlays them top-down onto
               the nearest clone, with no re-propagation. Fixed and
               adaptive clone placement mirror recomputation; the
               overlay order is chunk-centered or variable-centered.

Every chunk snapshot is taken at a fix point before its choice is
committed, so a restored state is always the exact fix point whose open
alternative the engine commits next.
"""

from . import kernel as K
from .branching import expose_open_choice, replay_alternative
from .domain import (ACTIVE, BYTE_MODEL, CHOICE_BYTES, domain_bytes,
                     state_bytes, state_clone)
from .propagation import FIX_POINT, propagate


class Chunk:
    """Per-path-node record: the choice plus strategy-specific payload.

    stored is an optional full state clone (always for copy, every d-th
    chunk for fixed/adaptive variants). trail holds (var, pre_image)
    undo entries; record maps var -> domain snapshot at this chunk's fix
    point. depth is 1-based from the root.
    """

    __slots__ = ("choice", "depth", "stored", "trail", "record",
                 "payload_bytes")

    def __init__(self, choice, depth):
        self.choice = choice
        self.depth = depth
        self.stored = None
        self.trail = None
        self.record = None
        self.payload_bytes = CHOICE_BYTES


def payload_bytes(chunk, model=None):
    """Logical bytes a chunk's payload occupies."""
    m = model or BYTE_MODEL
    total = CHOICE_BYTES
    if chunk.stored is not None:
        total += state_bytes(chunk.stored, m)
    if chunk.trail is not None:
        for _var, pre in chunk.trail:
            total += domain_bytes(pre, m)
    if chunk.record is not None:
        for snap in chunk.record.values():
            total += domain_bytes(snap, m)
    return total


class PathStack:
    """Root copy plus the chunk stack describing the current path."""

    __slots__ = ("root", "chunks", "payload_total")

    def __init__(self, root):
        self.root = root
        self.chunks = []
        self.payload_total = 0

    def __len__(self):
        return len(self.chunks)

    def top(self):
        return self.chunks[-1] if self.chunks else None

    def push(self, chunk):
        self.chunks.append(chunk)
        self.payload_total += chunk.payload_bytes

    def pop(self):
        chunk = self.chunks.pop()
        self.payload_total -= chunk.payload_bytes
        return chunk

    def store_into(self, index, state):
        """Install a state copy into an existing chunk (adaptive
        variants) and account for the growth."""
        chunk = self.chunks[index]
        if chunk.stored is None:
            state.depth = index
            chunk.stored = state
            grow = state_bytes(state)
            chunk.payload_bytes += grow
            self.payload_total += grow

    def base_index(self, top_index):
        """Index of the deepest chunk at or above top_index holding a
        state copy; -1 selects the root."""
        for i in range(top_index, -1, -1):
            if self.chunks[i].stored is not None:
                return i
        return -1

    def base_state(self, index):
        return self.root if index < 0 else self.chunks[index].stored


class Strategy:
    """Record/Restore pair. Instances are single-search objects."""

    name = None
    trail_log = False

    def prepare(self, state):
        """Hook called once before search starts."""

    def record(self, s, choice, log, stack):
        raise NotImplementedError

    def restore(self, s, stack, log, stats):
        raise NotImplementedError


class CopyStrategy(Strategy):
    name = "copy"

    def record(self, s, choice, log, stack):
        chunk = Chunk(choice, len(stack) + 1)
        chunk.stored = state_clone(s)
        chunk.payload_bytes = payload_bytes(chunk)
        return chunk

    def restore(self, s, stack, log, stats):
        top = expose_open_choice(stack)
        if top is None:
            return None
        # A clone keeps the stored copy valid for this chunk's remaining
        # lifetime. (With binary choices, handing the copy over on the
        # second commit would also be sound.)
        return state_clone(top.stored)


class TrailStrategy(Strategy):
    name = "trail"
    trail_log = True

    def record(self, s, choice, log, stack):
        if not log.full:
            raise ValueError("trailing requires a full pre-image log")
        chunk = Chunk(choice, len(stack) + 1)
        chunk.trail = log.entries()
        chunk.payload_bytes = payload_bytes(chunk)
        return chunk

    @staticmethod
    def _undo(s, entries):
        domains = s.domains
        for var, pre in reversed(entries):
            domains[var] = pre

    def restore(self, s, stack, log, stats):
        self._undo(s, log.entries())
        s.wipeout = False
        s.status = ACTIVE
        while True:
            top = stack.top()
            if top is None:
                return None
            if top.choice.is_open():
                s.depth = top.depth - 1
                return s
            self._undo(s, top.trail)
            stack.pop()


class RecompStrategy(Strategy):
    """Full (d=None), fixed, or adaptive recomputation."""

    def __init__(self, d=None, adaptive=False):
        self.d = d
        self.adaptive = adaptive
        self.name = _variant_name("recomp", d, adaptive)

    def record(self, s, choice, log, stack):
        depth = len(stack) + 1
        chunk = Chunk(choice, depth)
        if self.d is not None and depth % self.d == 0:
            chunk.stored = state_clone(s)
        chunk.payload_bytes = payload_bytes(chunk)
        return chunk

    def _replay(self, stack, base_index, target_index, stats):
        """Reconstruct the fix point of chunk index target_index: clone
        the copy at base_index (or the root), re-commit the taken
        alternatives of the chunks leading there in one batch, and
        propagate once.

        The copy in chunk i precedes its own choice, so the replayed
        choices are chunks [base_index .. target_index-1] (all of them
        when starting from the root)."""
        work = state_clone(stack.base_state(base_index))
        chunks = stack.chunks
        for i in range(max(base_index, 0), target_index):
            replay_alternative(work, chunks[i].choice)
        result = propagate(work, None)
        stats.propagations += result.executions
        if result.outcome != FIX_POINT:
            raise RuntimeError(
                "recomputation replay of a consistent path did not "
                "reach a fix point (%s)" % result.outcome)
        work.depth = target_index
        return work

    def restore(self, s, stack, log, stats):
        top = expose_open_choice(stack)
        if top is None:
            return None
        target = len(stack) - 1
        base = stack.base_index(target)
        if base == target:
            return state_clone(stack.chunks[base].stored)
        if self.adaptive:
            base_depth = stack.chunks[base].depth if base >= 0 else 0
            mid_depth = (base_depth + top.depth) // 2
            if base_depth < mid_depth < top.depth:
                mid = mid_depth - 1  # chunk index holding that depth
                stack.store_into(mid, self._replay(stack, base, mid, stats))
                base = mid
        return self._replay(stack, base, target, stats)


class RecollectStrategy(Strategy):
    """Recollection: overlay memoized changed-domain snapshots.

    flavor selects the restore scan order: "chunk" walks the stack once
    top-down, "variable" scans per variable for the first chunk that
    recorded it. Both produce identical states.
    """

    def __init__(self, d=None, adaptive=False, flavor="chunk"):
        if flavor not in ("chunk", "variable"):
            raise ValueError("unknown recollection flavor %r" % (flavor,))
        self.d = d
        self.adaptive = adaptive
        self.flavor = flavor
        self.name = _variant_name("recollect", d, adaptive)
        self._generation = 0
        self._var_gen = []
        self.chunk_accesses = 0

    def prepare(self, state):
        self._var_gen = [0] * state.nvars

    def record(self, s, choice, log, stack):
        depth = len(stack) + 1
        chunk = Chunk(choice, depth)
        domains = s.domains
        chunk.record = {var: domains[var] for var in sorted(log.changed)}
        if self.d is not None and depth % self.d == 0:
            chunk.stored = state_clone(s)
        chunk.payload_bytes = payload_bytes(chunk)
        return chunk

    def _overlay(self, stack, base_index, target_index):
        """Reconstruct the fix point of chunk index target_index
        starting from the copy at base_index (or the root).

        The record in chunk i holds the domains that changed on the way
        INTO its fix point, so the overlaid records are chunks
        [base_index+1 .. target_index], scanned from the top so the
        first snapshot seen per variable wins."""
        work = state_clone(stack.base_state(base_index))
        chunks = stack.chunks
        domains = work.domains
        if self.flavor == "chunk":
            self._generation += 1
            gen = self._generation
            var_gen = self._var_gen
            for i in range(target_index, base_index, -1):
                for var, snap in chunks[i].record.items():
                    if var_gen[var] != gen:
                        var_gen[var] = gen
                        K.dom_overwrite(domains[var], snap)
        else:
            for var in range(len(domains)):
                for i in range(target_index, base_index, -1):
                    record = chunks[i].record
                    self.chunk_accesses += 1
                    if var in record:
                        K.dom_overwrite(domains[var], record[var])
                        break
        work.depth = target_index
        return work

    def restore(self, s, stack, log, stats):
        top = expose_open_choice(stack)
        if top is None:
            return None
        target = len(stack) - 1
        base = stack.base_index(target)
        if base == target:
            return state_clone(stack.chunks[base].stored)
        if self.adaptive:
            base_depth = stack.chunks[base].depth if base >= 0 else 0
            mid_depth = (base_depth + top.depth) // 2
            if base_depth < mid_depth < top.depth:
                mid = mid_depth - 1
                stack.store_into(mid, self._overlay(stack, base, mid))
                base = mid
        return self._overlay(stack, base, target)


def _variant_name(family, d, adaptive):
    if adaptive:
        suffix = "-adaptive"
    elif d is not None:
        suffix = "-fixed"
    else:
        suffix = ""
    if d is not None:
        return "%s%s:%d" % (family, suffix, d)
    return family + suffix


class StrategyConfig:
    """Parsed strategy selector: family, copy distance, flavor."""

    __slots__ = ("family", "d", "adaptive", "flavor")

    def __init__(self, family, d=None, adaptive=False, flavor="chunk"):
        self.family = family
        self.d = d
        self.adaptive = adaptive
        self.flavor = flavor

    @property
    def name(self):
        if self.family in ("copy", "trail"):
            return self.family
        return _variant_name(self.family, self.d, self.adaptive)

    def build(self):
        if self.family == "copy":
            return CopyStrategy()
        if self.family == "trail":
            return TrailStrategy()
        if self.family == "recomp":
            return RecompStrategy(self.d, self.adaptive)
        if self.family == "recollect":
            return RecollectStrategy(self.d, self.adaptive, self.flavor)
        raise ValueError("unknown strategy family %r" % (self.family,))


STRATEGY_NAMES = (
    "copy", "trail",
    "recomp", "recomp-fixed:d", "recomp-adaptive:d",
    "recollect", "recollect-fixed:d", "recollect-adaptive:d",
)


def parse_strategy(text, d=None, flavor="chunk"):
    """Parse a CLI strategy name like "recollect-fixed:8".

    An explicit :d suffix wins over the d argument. Plain "recomp" and
    "recollect" run from the root only (d unset), matching full
    recomputation/recollection.
    """
    name = text.strip()
    if ":" in name:
        name, _, dtext = name.partition(":")
        try:
            d = int(dtext)
        except ValueError:
            raise ValueError("bad copy distance in strategy %r" % (text,))
    if d is not None and d < 1:
        raise ValueError("copy distance must be >= 1")
    if name == "copy":
        return StrategyConfig("copy")
    if name == "trail":
        return StrategyConfig("trail")
    for family in ("recomp", "recollect"):
        if name == family:
            return StrategyConfig(family, d=d, flavor=flavor)
        if name == family + "-fixed":
            if d is None:
                raise ValueError("%s needs a copy distance" % name)
            return StrategyConfig(family, d=d, flavor=flavor)
        if name == family + "-adaptive":
            return StrategyConfig(family, d=d, adaptive=True, flavor=flavor)
    raise ValueError(
        "unknown strategy %r (expected one of: %s)"
        % (text, ", ".join(STRATEGY_NAMES)))
