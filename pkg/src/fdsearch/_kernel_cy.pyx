# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=False
"""Compiled twin of fdsearch._kernel_py.

Behavior must match the pure backend exactly, including the
same-object-return conventions and iteration orders; the test suite
drives both with identical inputs. Domain values are assumed to fit in
a C long (fine for the benchmark scale; the pure backend has no such
limit).
"""

BACKEND_NAME = "c"


def dom_new(long lo, long hi):
    if lo > hi:
        raise ValueError("empty bounds: lo=%d > hi=%d" % (lo, hi))
    return [lo, hi]


def dom_size(list d):
    cdef Py_ssize_t n = len(d)
    cdef Py_ssize_t i = 0
    cdef long total = 0
    while i < n:
        total += <long>d[i + 1] - <long>d[i] + 1
        i += 2
    return total


def dom_is_fixed(list d):
    return len(d) == 2 and <long>d[0] == <long>d[1]


def dom_min(list d):
    return d[0]


def dom_max(list d):
    return d[len(d) - 1]


def dom_val(list d):
    if len(d) != 2 or <long>d[0] != <long>d[1]:
        raise ValueError("domain not fixed: %r" % (d,))
    return d[0]


def dom_contains(list d, long v):
    cdef Py_ssize_t n = len(d)
    cdef Py_ssize_t i = 0
    while i < n:
        if v < <long>d[i]:
            return False
        if v <= <long>d[i + 1]:
            return True
        i += 2
    return False


def dom_values(list d):
    cdef Py_ssize_t n = len(d)
    cdef Py_ssize_t i = 0
    cdef long v
    out = []
    while i < n:
        v = <long>d[i]
        while v <= <long>d[i + 1]:
            out.append(v)
            v += 1
        i += 2
    return out


def dom_equal(list a, list b):
    return a == b


def dom_remove(list d, long v):
    cdef Py_ssize_t n = len(d)
    cdef Py_ssize_t i = 0
    cdef long lo, hi
    while i < n and <long>d[i + 1] < v:
        i += 2
    if i >= n or v < <long>d[i]:
        return d
    lo = <long>d[i]
    hi = <long>d[i + 1]
    if lo == hi:
        if n == 2:
            return None
        return d[:i] + d[i + 2:]
    cdef list out = d[:i]
    if v == lo:
        out.append(v + 1)
        out.append(hi)
    elif v == hi:
        out.append(lo)
        out.append(v - 1)
    else:
        out.append(lo)
        out.append(v - 1)
        out.append(v + 1)
        out.append(hi)
    out.extend(d[i + 2:])
    return out


def dom_tighten(list d, long lo, long hi):
    if lo > hi:
        return None
    cdef Py_ssize_t n = len(d)
    if lo <= <long>d[0] and hi >= <long>d[n - 1]:
        return d
    cdef list out = []
    cdef Py_ssize_t i = 0
    cdef long rlo, rhi, a, b
    while i < n:
        rlo = <long>d[i]
        rhi = <long>d[i + 1]
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


def dom_overwrite(list target, list snapshot):
    target[:] = snapshot


def store_clone(list domains):
    cdef Py_ssize_t n = len(domains)
    cdef Py_ssize_t i
    cdef list out = [None] * n
    for i in range(n):
        out[i] = list(<list>domains[i])
    return out


def store_equal(list a, list b):
    return a == b


def store_ranges_total(list domains):
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t i
    for i in range(len(domains)):
        total += len(<list>domains[i])
    return total >> 1


# cdivision is off, so // on C longs keeps Python floor semantics.

cdef inline long _ceil_div(long p, long q):
    return -((-p) // q)


cdef inline long _floor_div(long p, long q):
    return p // q


def linear_eq_filter(list domains, coeffs, varids, long c):
    cdef Py_ssize_t k = len(varids)
    cdef Py_ssize_t i
    cdef long a, lo, hi, smin = 0, smax = 0
    cdef long rest_min, rest_max, num_lo, num_hi, new_lo, new_hi
    cdef long nmin, nmax
    cdef list d, nd
    cdef list mins = [0] * k
    cdef list maxs = [0] * k
    cdef list doms = [None] * k
    for i in range(k):
        d = <list>domains[<Py_ssize_t>varids[i]]
        doms[i] = d
        a = <long>coeffs[i]
        lo = <long>d[0]
        hi = <long>d[len(d) - 1]
        if a > 0:
            nmin = a * lo
            nmax = a * hi
        else:
            nmin = a * hi
            nmax = a * lo
        mins[i] = nmin
        maxs[i] = nmax
        smin += nmin
        smax += nmax
    if c < smin or c > smax:
        return None
    cdef list changes = []
    for i in range(k):
        a = <long>coeffs[i]
        d = <list>doms[i]
        rest_min = smin - <long>mins[i]
        rest_max = smax - <long>maxs[i]
        num_lo = c - rest_max
        num_hi = c - rest_min
        if a > 0:
            new_lo = _ceil_div(num_lo, a)
            new_hi = _floor_div(num_hi, a)
        else:
            new_lo = _ceil_div(num_hi, a)
            new_hi = _floor_div(num_lo, a)
        if new_lo <= <long>d[0] and new_hi >= <long>d[len(d) - 1]:
            continue
        res = dom_tighten(d, new_lo, new_hi)
        if res is None:
            return None
        if res is not d:
            nd = <list>res
            changes.append((varids[i], nd))
            lo = <long>nd[0]
            hi = <long>nd[len(nd) - 1]
            if a > 0:
                nmin = a * lo
                nmax = a * hi
            else:
                nmin = a * hi
                nmax = a * lo
            smin += nmin - <long>mins[i]
            smax += nmax - <long>maxs[i]
            mins[i] = nmin
            maxs[i] = nmax
            doms[i] = nd
    return changes


def linear_leq_filter(list domains, coeffs, varids, long c):
    cdef Py_ssize_t k = len(varids)
    cdef Py_ssize_t i
    cdef long a, smin = 0, slack, new_lo, new_hi, nmin
    cdef list d, nd
    cdef list mins = [0] * k
    cdef list doms = [None] * k
    for i in range(k):
        d = <list>domains[<Py_ssize_t>varids[i]]
        doms[i] = d
        a = <long>coeffs[i]
        if a > 0:
            nmin = a * <long>d[0]
        else:
            nmin = a * <long>d[len(d) - 1]
        mins[i] = nmin
        smin += nmin
    if smin > c:
        return None
    cdef list changes = []
    for i in range(k):
        a = <long>coeffs[i]
        d = <list>doms[i]
        slack = c - (smin - <long>mins[i])
        if a > 0:
            new_hi = _floor_div(slack, a)
            if new_hi >= <long>d[len(d) - 1]:
                continue
            res = dom_tighten(d, <long>d[0], new_hi)
        else:
            new_lo = _ceil_div(slack, a)
            if new_lo <= <long>d[0]:
                continue
            res = dom_tighten(d, new_lo, <long>d[len(d) - 1])
        if res is None:
            return None
        if res is not d:
            nd = <list>res
            changes.append((varids[i], nd))
            if a > 0:
                nmin = a * <long>nd[0]
            else:
                nmin = a * <long>nd[len(nd) - 1]
            smin += nmin - <long>mins[i]
            mins[i] = nmin
            doms[i] = nd
    return changes


def neq_filter(list domains, Py_ssize_t x, Py_ssize_t y, long cx, long cy):
    cdef list dx = <list>domains[x]
    cdef list dy = <list>domains[y]
    if len(dx) == 2 and <long>dx[0] == <long>dx[1]:
        nd = dom_remove(dy, <long>dx[0] + cx - cy)
        if nd is None:
            return None
        if nd is not dy:
            return ((y, nd),)
    elif len(dy) == 2 and <long>dy[0] == <long>dy[1]:
        nd = dom_remove(dx, <long>dy[0] + cy - cx)
        if nd is None:
            return None
        if nd is not dx:
            return ((x, nd),)
    return ()


def alldiff_filter(list domains, varids):
    cdef dict current = {}
    cdef dict fixed_vals = {}
    cdef list worklist = []
    cdef list d, du
    cdef Py_ssize_t wi = 0
    cdef long val, nval
    for v in varids:
        d = <list>domains[<Py_ssize_t>v]
        current[v] = d
        if len(d) == 2 and <long>d[0] == <long>d[1]:
            val = <long>d[0]
            if val in fixed_vals:
                return None
            fixed_vals[val] = v
            worklist.append(v)
    cdef dict changes = {}
    while wi < len(worklist):
        v = worklist[wi]
        wi += 1
        val = <long>(<list>current[v])[0]
        for u in varids:
            if u == v:
                continue
            du = <list>current[u]
            res = dom_remove(du, val)
            if res is None:
                return None
            if res is not du:
                nd = <list>res
                current[u] = nd
                changes[u] = nd
                if len(nd) == 2 and <long>nd[0] == <long>nd[1]:
                    nval = <long>nd[0]
                    if nval in fixed_vals:
                        return None
                    fixed_vals[nval] = u
                    worklist.append(u)
    return list(changes.items())


# Propagator kinds and drain outcomes; values mirror _kernel_py.
KIND_NEQ = 0
KIND_ALLDIFF = 1
KIND_LINEAR_EQ = 2
KIND_LINEAR_LEQ = 3

OUTCOME_FIX_POINT = 0
OUTCOME_INCONSISTENT = 1
OUTCOME_SOLVED = 2


def propagate_drain(s, log):
    """Compiled twin of _kernel_py.propagate_drain (same contract)."""
    cdef list domains = <list>s.domains
    cdef list queue = <list>s.queue
    cdef unsigned char[:] queued = s.queued
    cdef tuple progs = <tuple>s.prog
    cdef tuple subs = <tuple>s.subs
    cdef bint full = log is not None and log.full
    cdef dict changed = <dict>log.changed if log is not None else None
    cdef long executions = 0
    cdef Py_ssize_t qhead = s.qhead
    cdef Py_ssize_t pid, spid, kind
    cdef tuple entry
    cdef list d
    while qhead < len(queue):
        pid = <Py_ssize_t>queue[qhead]
        qhead += 1
        queued[pid] = 0
        executions += 1
        entry = <tuple>progs[pid]
        kind = <Py_ssize_t>entry[0]
        if kind == 0:    # KIND_NEQ
            changes = neq_filter(domains, <Py_ssize_t>entry[1],
                                 <Py_ssize_t>entry[2], <long>entry[3],
                                 <long>entry[4])
        elif kind == 2:  # KIND_LINEAR_EQ
            changes = linear_eq_filter(domains, entry[1], entry[2],
                                       <long>entry[3])
        elif kind == 3:  # KIND_LINEAR_LEQ
            changes = linear_leq_filter(domains, entry[1], entry[2],
                                        <long>entry[3])
        else:            # KIND_ALLDIFF
            changes = alldiff_filter(domains, entry[1])
        if changes is None:
            s.qhead = qhead
            return OUTCOME_INCONSISTENT, executions
        for var, nd in changes:
            if changed is not None and var not in changed:
                changed[var] = domains[<Py_ssize_t>var] if full else None
            domains[<Py_ssize_t>var] = nd
            for spid_obj in <tuple>subs[<Py_ssize_t>var]:
                spid = <Py_ssize_t>spid_obj
                if not queued[spid]:
                    queued[spid] = 1
                    queue.append(spid_obj)
    del queue[:]
    s.qhead = 0
    for i in range(len(domains)):
        d = <list>domains[i]
        if len(d) != 2 or <long>d[0] != <long>d[1]:
            return OUTCOME_FIX_POINT, executions
    return OUTCOME_SOLVED, executions
