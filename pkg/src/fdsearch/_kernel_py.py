"""Pure-Python domain kernels.

A domain is a flat list of ints [lo0, hi0, lo1, hi1, ...] describing an
ordered set of closed integer intervals in normal form: lo <= hi within
each range, and ranges[i].hi + 1 < ranges[i+1].lo (sorted, disjoint,
non-adjacent).

Mutation discipline: every function here either returns a NEW list (or the
unchanged input object when the operation is a no-op, so callers can test
`result is d`), or mutates in place only when its name says so
(dom_overwrite). Callers treat a range list as frozen once it has been
replaced as a store slot or captured in a snapshot.

fdsearch._kernel_cy is the compiled twin of this module; both must stay
behaviorally identical (see tests/test_backends.py).
"""

BACKEND_NAME = "python"


def dom_new(lo, hi):
    """Single-range domain [lo, hi]."""
    if lo > hi:
        raise ValueError("empty bounds: lo=%d > hi=%d" % (lo, hi))
    return [lo, hi]


def dom_size(d):
    n = len(d)
    total = 0
    i = 0
    while i < n:
        total += d[i + 1] - d[i] + 1
        i += 2
    return total


def dom_is_fixed(d):
    return len(d) == 2 and d[0] == d[1]


def dom_min(d):
    return d[0]


def dom_max(d):
    return d[-1]


def dom_val(d):
    """Value of a fixed domain."""
    if len(d) != 2 or d[0] != d[1]:
        raise ValueError("domain not fixed: %r" % (d,))
    return d[0]


def dom_contains(d, v):
    n = len(d)
    i = 0
    while i < n:
        if v < d[i]:
            return False
        if v <= d[i + 1]:
            return True
        i += 2
    return False


def dom_values(d):
    out = []
    i = 0
    n = len(d)
    while i < n:
        out.extend(range(d[i], d[i + 1] + 1))
        i += 2
    return out


def dom_equal(a, b):
    return a == b


def dom_remove(d, v):
    """Remove v. Returns the same object if v is absent, None if the
    result would be empty, else a new normalized list."""
    n = len(d)
    i = 0
    while i < n and d[i + 1] < v:
        i += 2
    if i >= n or v < d[i]:
        return d
    lo = d[i]
    hi = d[i + 1]
    if lo == hi:
        if n == 2:
            return None
        return d[:i] + d[i + 2:]
    if v == lo:
        out = d[:i]
        out.append(v + 1)
        out.append(hi)
        out.extend(d[i + 2:])
        return out
    if v == hi:
        out = d[:i]
        out.append(lo)
        out.append(v - 1)
        out.extend(d[i + 2:])
        return out
    out = d[:i]
    out.append(lo)
    out.append(v - 1)
    out.append(v + 1)
    out.append(hi)
    out.extend(d[i + 2:])
    return out


def dom_tighten(d, lo, hi):
    """Intersect with [lo, hi]. Same object if unchanged, None if empty."""
    if lo > hi:
        return None
    n = len(d)
    if lo <= d[0] and hi >= d[n - 1]:
        return d
    out = []
    i = 0
    while i < n:
        rlo = d[i]
        rhi = d[i + 1]
        if rlo > hi:
            break
        if rhi >= lo:
            a = rlo if rlo > lo else lo
            b = rhi if rhi < hi else hi
            if a <= b:
                out.append(a)
                out.append(b)
        i += 2
    if not out:
        return None
    if out == d:
        return d
    return out


def dom_overwrite(target, snapshot):
    """Make target value-equal to snapshot, reusing the existing list
    object (trimmed or extended as needed)."""
    target[:] = snapshot


def store_clone(domains):
    """Fresh outer list with fresh per-variable range lists."""
    return [list(d) for d in domains]


def store_equal(a, b):
    return a == b


def store_ranges_total(domains):
    total = 0
    for d in domains:
        total += len(d)
    return total >> 1


def linear_eq_filter(domains, coeffs, varids, c):
    """One bounds-consistency sweep of sum(coeffs[i] * x[i]) == c.

    Returns None on inconsistency, else a list of (varid, new_domain)
    changes (possibly empty). Reads pending changes from its own sweep.
    """
    k = len(varids)
    mins = [0] * k
    maxs = [0] * k
    doms = [None] * k
    smin = 0
    smax = 0
    for i in range(k):
        d = domains[varids[i]]
        doms[i] = d
        a = coeffs[i]
        lo = d[0]
        hi = d[len(d) - 1]
        if a > 0:
            mins[i] = a * lo
            maxs[i] = a * hi
        else:
            mins[i] = a * hi
            maxs[i] = a * lo
        smin += mins[i]
        smax += maxs[i]
    if c < smin or c > smax:
        return None
    changes = []
    for i in range(k):
        a = coeffs[i]
        d = doms[i]
        rest_min = smin - mins[i]
        rest_max = smax - maxs[i]
        # a * x must lie in [c - rest_max, c - rest_min]
        num_lo = c - rest_max
        num_hi = c - rest_min
        if a > 0:
            new_lo = -((-num_lo) // a)   # ceil division
            new_hi = num_hi // a
        else:
            new_lo = -((-num_hi) // a)
            new_hi = num_lo // a
        if new_lo <= d[0] and new_hi >= d[len(d) - 1]:
            continue
        nd = dom_tighten(d, new_lo, new_hi)
        if nd is None:
            return None
        if nd is not d:
            changes.append((varids[i], nd))
            # refresh sums with the tightened bounds
            lo = nd[0]
            hi = nd[len(nd) - 1]
            if a > 0:
                nmin = a * lo
                nmax = a * hi
            else:
                nmin = a * hi
                nmax = a * lo
            smin += nmin - mins[i]
            smax += nmax - maxs[i]
            mins[i] = nmin
            maxs[i] = nmax
            doms[i] = nd
    return changes


def linear_leq_filter(domains, coeffs, varids, c):
    """One bounds-consistency sweep of sum(coeffs[i] * x[i]) <= c.

    Same return contract as linear_eq_filter.
    """
    k = len(varids)
    mins = [0] * k
    smin = 0
    doms = [None] * k
    for i in range(k):
        d = domains[varids[i]]
        doms[i] = d
        a = coeffs[i]
        if a > 0:
            mins[i] = a * d[0]
        else:
            mins[i] = a * d[len(d) - 1]
        smin += mins[i]
    if smin > c:
        return None
    changes = []
    for i in range(k):
        a = coeffs[i]
        d = doms[i]
        slack = c - (smin - mins[i])
        # a * x <= slack
        if a > 0:
            new_hi = slack // a
            if new_hi >= d[len(d) - 1]:
                continue
            nd = dom_tighten(d, d[0], new_hi)
        else:
            new_lo = -((-slack) // a)  # ceil(slack / a) for a < 0
            if new_lo <= d[0]:
                continue
            nd = dom_tighten(d, new_lo, d[len(d) - 1])
        if nd is None:
            return None
        if nd is not d:
            changes.append((varids[i], nd))
            if a > 0:
                nmin = a * nd[0]
            else:
                nmin = a * nd[len(nd) - 1]
            smin += nmin - mins[i]
            mins[i] = nmin
            doms[i] = nd
    return changes


def neq_filter(domains, x, y, cx, cy):
    """One value-consistency sweep of x + cx != y + cy.

    Same return contract as linear_eq_filter: None on inconsistency,
    else applied change pairs.
    """
    dx = domains[x]
    dy = domains[y]
    if len(dx) == 2 and dx[0] == dx[1]:
        nd = dom_remove(dy, dx[0] + cx - cy)
        if nd is None:
            return None
        if nd is not dy:
            return ((y, nd),)
    elif len(dy) == 2 and dy[0] == dy[1]:
        nd = dom_remove(dx, dy[0] + cy - cx)
        if nd is None:
            return None
        if nd is not dx:
            return ((x, nd),)
    return ()


def alldiff_filter(domains, varids):
    """One value-consistency sweep of alldifferent(varids).

    Fixed values are removed from all other variables, chasing newly
    fixed variables within the sweep. Returns None on inconsistency
    (duplicate fixed values or a wiped domain), else change pairs.
    """
    current = {}
    fixed_vals = {}
    worklist = []
    for v in varids:
        d = domains[v]
        current[v] = d
        if len(d) == 2 and d[0] == d[1]:
            val = d[0]
            if val in fixed_vals:
                return None
            fixed_vals[val] = v
            worklist.append(v)
    changes = {}
    wi = 0
    while wi < len(worklist):
        v = worklist[wi]
        wi += 1
        val = current[v][0]
        for u in varids:
            if u == v:
                continue
            du = current[u]
            nd = dom_remove(du, val)
            if nd is None:
                return None
            if nd is not du:
                current[u] = nd
                changes[u] = nd
                if len(nd) == 2 and nd[0] == nd[1]:
                    nval = nd[0]
                    if nval in fixed_vals:
                        return None
                    fixed_vals[nval] = u
                    worklist.append(u)
    return list(changes.items())


# Propagator kinds for the table-driven drain loop. The compiled twin
# hardcodes the same values.
KIND_NEQ = 0
KIND_ALLDIFF = 1
KIND_LINEAR_EQ = 2
KIND_LINEAR_LEQ = 3

OUTCOME_FIX_POINT = 0
OUTCOME_INCONSISTENT = 1
OUTCOME_SOLVED = 2


def propagate_drain(s, log):
    """Drain the state's propagator queue to a fix point.

    The scheduling contract lives here: FIFO by propagator id,
    deduplicated, re-queued on any subscribed domain change; every
    applied mutation is logged (first change per variable, pre-image
    only when the log is in full mode). Returns (outcome, executions);
    on OUTCOME_INCONSISTENT the store keeps the changes applied so far
    and the caller resets the queue.
    """
    domains = s.domains
    queue = s.queue
    queued = s.queued
    progs = s.prog
    subs = s.subs
    full = log is not None and log.full
    changed = log.changed if log is not None else None
    executions = 0
    qhead = s.qhead
    while qhead < len(queue):
        pid = queue[qhead]
        qhead += 1
        queued[pid] = 0
        executions += 1
        entry = progs[pid]
        kind = entry[0]
        if kind == KIND_NEQ:
            changes = neq_filter(domains, entry[1], entry[2], entry[3],
                                 entry[4])
        elif kind == KIND_LINEAR_EQ:
            changes = linear_eq_filter(domains, entry[1], entry[2], entry[3])
        elif kind == KIND_LINEAR_LEQ:
            changes = linear_leq_filter(domains, entry[1], entry[2], entry[3])
        else:
            changes = alldiff_filter(domains, entry[1])
        if changes is None:
            s.qhead = qhead
            return OUTCOME_INCONSISTENT, executions
        for var, nd in changes:
            if changed is not None and var not in changed:
                changed[var] = domains[var] if full else None
            domains[var] = nd
            for spid in subs[var]:
                if not queued[spid]:
                    queued[spid] = 1
                    queue.append(spid)
    del queue[:]
    s.qhead = 0
    for d in domains:
        if len(d) != 2 or d[0] != d[1]:
            return OUTCOME_FIX_POINT, executions
    return OUTCOME_SOLVED, executions
