"""Benchmark harness: timed runs, strategy/distance sweeps, lockstep
equivalence verification and CSV emission.

Lockstep verification is the primary regression tool: it runs two
strategies over the same model and compares store fingerprints at every
node and at every restore handoff. On the first mismatch the reference
run is replayed to that event to produce a domain-level diff.
"""

import csv
import io
import statistics
import sys
import time

from .branching import SearchMode
from .domain import FAILED
from .engine import Observer, StopSearch, dfs
from .models import build_state, parse_model
from .restoration import parse_strategy

CSV_HEADER = ("model,params,strategy,flavor,d,mode,repeats,time_ms_mean,"
              "time_cv,nodes,failures,depth,propagations,solutions,"
              "peak_bytes,verified")

DEFAULT_NODE_BUDGET = 10 ** 5
DEFAULT_DISTANCES = (1, 3, 5, 10, 20, 40, 80, 160, 320)
TIME_CV_WARN = 0.02


class UsageError(ValueError):
    """Bad model/strategy/mode selection; CLI exit code 1."""


def resolve_mode(spec, mode_text):
    if mode_text in (None, "default"):
        return spec.default_mode()
    if mode_text in ("first", "all"):
        return SearchMode(mode_text)
    if mode_text == "best":
        if spec.objective is None:
            raise UsageError("model %s has no objective" % spec.label())
        return SearchMode("best", spec.objective)
    raise UsageError("unknown mode %r (first|all|best|default)" % mode_text)


class RunConfig:
    __slots__ = ("model", "strategy", "mode", "repeats", "verify",
                 "node_budget")

    def __init__(self, model, strategy, mode=None, repeats=1, verify=False,
                 node_budget=DEFAULT_NODE_BUDGET):
        if repeats < 1:
            raise UsageError("repeats must be >= 1")
        self.model = model          # ProblemSpec
        self.strategy = strategy    # StrategyConfig
        self.mode = mode            # SearchMode or None for model default
        self.repeats = repeats
        self.verify = verify
        self.node_budget = node_budget


class RunResult:
    __slots__ = ("config", "mode", "time_ms_mean", "time_cv", "time_warn",
                 "stats", "solutions", "verified")

    def __init__(self, config, mode, time_ms_mean, time_cv, stats,
                 solutions, verified):
        self.config = config
        self.mode = mode
        self.time_ms_mean = time_ms_mean
        self.time_cv = time_cv
        self.time_warn = time_cv > TIME_CV_WARN
        self.stats = stats
        self.solutions = solutions
        self.verified = verified

    def csv_row(self):
        cfg = self.config
        strat = cfg.strategy
        return [
            cfg.model.name,
            ",".join(map(str, cfg.model.parameters)),
            strat.name.partition(":")[0],
            strat.flavor if strat.family == "recollect" else "",
            "" if strat.d is None else str(strat.d),
            self.mode.mode,
            str(cfg.repeats),
            "%.3f" % self.time_ms_mean,
            "%.4f" % self.time_cv,
            str(self.stats.nodes),
            str(self.stats.failures),
            str(self.stats.max_depth),
            str(self.stats.propagations),
            str(self.stats.solutions),
            str(self.stats.peak_payload_bytes),
            "true" if self.verified else "false",
        ]


def run(config):
    """Execute a configuration `repeats` times; wall-clock statistics
    over the runs, search stats from the last (they are deterministic).

    Timing covers root propagation through search completion; state
    construction is excluded.
    """
    spec = config.model
    mode = config.mode or spec.default_mode()
    times = []
    stats = None
    solutions = None
    for _ in range(config.repeats):
        root = build_state(spec)
        strategy = config.strategy.build()
        t0 = time.perf_counter()
        solutions, stats = dfs(root, strategy, mode)
        times.append(time.perf_counter() - t0)
    mean = statistics.fmean(times)
    if len(times) > 1 and mean > 0:
        cv = statistics.pstdev(times) / mean
    else:
        cv = 0.0
    verified = False
    if config.verify:
        report = verify_lockstep(spec, config.strategy, parse_strategy("copy"),
                                 mode=mode, node_budget=config.node_budget)
        if not report.clean:
            raise VerificationError(report)
        verified = True
    return RunResult(config, mode, mean * 1000.0, cv, stats, solutions,
                     verified)


class VerificationError(RuntimeError):
    def __init__(self, report):
        super().__init__(report.describe())
        self.report = report


def sweep(models, strategies, distances=DEFAULT_DISTANCES, mode=None,
          repeats=1, out=None):
    """Cross product of models x strategies x distances, one CSV row per
    cell. Strategies that ignore the distance (copy, trail, plain
    recomp/recollect) still produce one row per distance with d echoed.
    Cell failures become rows with empty stat fields; the sweep
    continues. Cells run sequentially so timings do not interfere.
    """
    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    rows = 0
    for mtext in models:
        for stext in strategies:
            for d in distances:
                rows += 1
                try:
                    spec = parse_model(mtext)
                    strat = parse_strategy(stext, d=int(d))
                    cfg = RunConfig(spec, strat,
                                    mode=resolve_mode(spec, mode),
                                    repeats=repeats)
                    writer.writerow(run(cfg).csv_row())
                except Exception as exc:  # record and continue
                    writer.writerow([mtext, "", stext, "", str(d),
                                     mode or "default", str(repeats),
                                     "", "", "", "", "", "", "", "",
                                     "error"])
                    print("sweep cell failed (%s, %s, d=%s): %s"
                          % (mtext, stext, d, exc), file=sys.stderr)
    return rows


class _TraceRecorder(Observer):
    """Fingerprints every node and restore handoff of a run.

    Stores are only fingerprinted while consistent: a failed state holds
    whatever partial pruning preceded the wipeout, which legitimately
    depends on where propagation entered, so failed events are compared
    by outcome and position alone.
    """

    def __init__(self, node_budget):
        self.events = []
        self.solutions = []
        self.node_budget = node_budget

    @staticmethod
    def fingerprint(state):
        if state.status == FAILED or state.wipeout:
            return "failed"
        return hash(tuple(tuple(d) for d in state.domains))

    def on_node(self, outcome, state, stack):
        depth = len(stack) if stack is not None else 0
        self.events.append(("node", outcome, depth, self.fingerprint(state)))
        if len(self.events) > self.node_budget:
            raise StopSearch("node budget exceeded")

    def on_restore(self, state, stack):
        self.events.append(("restore", None, len(stack),
                            self.fingerprint(state)))

    def on_solution(self, values):
        self.solutions.append(values)


class _TraceComparer(_TraceRecorder):
    """Compares a run against a recorded trace, halting on divergence."""

    def __init__(self, reference, node_budget):
        super().__init__(node_budget)
        self.reference = reference
        self.divergence = None   # (event_index, own_event, own_store)
        self._own_index = 0

    def _check(self, event, state):
        i = self._own_index
        self._own_index += 1
        ref = self.reference[i] if i < len(self.reference) else None
        if ref != event:
            self.divergence = (i, event, [list(d) for d in state.domains])
            raise StopSearch("trace divergence")

    def on_node(self, outcome, state, stack):
        depth = len(stack) if stack is not None else 0
        self._check(("node", outcome, depth, self.fingerprint(state)), state)

    def on_restore(self, state, stack):
        self._check(("restore", None, len(stack), self.fingerprint(state)),
                    state)

    def on_solution(self, values):
        self.solutions.append(values)


class _CaptureAt(Observer):
    """Replays a run and captures the store at one event index."""

    def __init__(self, index):
        self.index = index
        self._i = 0
        self.store = None

    def _hit(self, state):
        if self._i == self.index:
            self.store = [list(d) for d in state.domains]
            raise StopSearch("captured")
        self._i += 1

    def on_node(self, outcome, state, stack):
        self._hit(state)

    def on_restore(self, state, stack):
        self._hit(state)


class LockstepReport:
    __slots__ = ("model", "strategy_a", "strategy_b", "clean", "events",
                 "divergence")

    def __init__(self, model, strategy_a, strategy_b, clean, events,
                 divergence=None):
        self.model = model
        self.strategy_a = strategy_a
        self.strategy_b = strategy_b
        self.clean = clean
        self.events = events
        self.divergence = divergence

    def describe(self):
        head = "lockstep %s: %s vs %s" % (self.model, self.strategy_a,
                                          self.strategy_b)
        if self.clean:
            return "%s: clean (%d events)" % (head, self.events)
        kind, index, depth, var, dom_a, dom_b = self.divergence
        return ("%s: DIVERGENCE at event %d (%s, stack depth %d), var %s: "
                "%r vs %r" % (head, index, kind, depth, var, dom_a, dom_b))


def verify_lockstep(spec, strategy_a, strategy_b, mode=None,
                    node_budget=DEFAULT_NODE_BUDGET):
    """Run both strategies over the identical tree; compare stores at
    every node and restore handoff. Restore stores are compared after
    the bound refresh, the point where every strategy must agree.
    """
    mode = mode or spec.default_mode()
    recorder = _TraceRecorder(node_budget)
    try:
        dfs(build_state(spec), strategy_a.build(), mode, observer=recorder)
    except StopSearch:
        raise UsageError(
            "model %s exceeds the lockstep node budget (%d)"
            % (spec.label(), node_budget))
    comparer = _TraceComparer(recorder.events, node_budget)
    diverged = False
    try:
        dfs(build_state(spec), strategy_b.build(), mode, observer=comparer)
    except StopSearch:
        if comparer.divergence is None:
            raise UsageError(
                "model %s exceeds the lockstep node budget (%d)"
                % (spec.label(), node_budget))
        diverged = True
    if not diverged and comparer._own_index != len(recorder.events):
        comparer.divergence = (comparer._own_index, ("missing",), None)
        diverged = True
    if not diverged and comparer.solutions != recorder.solutions:
        comparer.divergence = (len(recorder.events), ("solutions",), None)
        diverged = True
    if not diverged:
        return LockstepReport(spec.label(), strategy_a.name, strategy_b.name,
                              True, len(recorder.events))
    index, own_event, own_store = comparer.divergence
    capture = _CaptureAt(index)
    try:
        dfs(build_state(spec), strategy_a.build(), mode, observer=capture)
    except StopSearch:
        pass
    ref_store = capture.store
    kind = own_event[0]
    depth = own_event[2] if len(own_event) > 2 else -1
    var, dom_a, dom_b = None, None, None
    if ref_store is not None and own_store is not None:
        for v, (da, db) in enumerate(zip(ref_store, own_store)):
            if da != db:
                var, dom_a, dom_b = v, da, db
                break
    return LockstepReport(spec.label(), strategy_a.name, strategy_b.name,
                          False, index,
                          divergence=(kind, index, depth, var, dom_a, dom_b))


def run_to_csv(result, out=None):
    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    writer.writerow(result.csv_row())


def format_csv(results):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in results:
        writer.writerow(r.csv_row())
    return buf.getvalue()
