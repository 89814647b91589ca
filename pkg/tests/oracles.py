"""Brute-force reference enumerators, independent of the solver.

These work directly on value tuples: no domains, no propagation, no
search machinery. Expected values in the test suite are computed (and
frozen) from these.
"""

import itertools


def queens_solutions(n):
    """All n-queens solutions by exhaustive permutation check (row
    distinctness is part of the constraint set, re-checked here)."""
    out = []
    for perm in itertools.permutations(range(n)):
        if len({perm[i] + i for i in range(n)}) != n:
            continue
        if len({perm[i] - i for i in range(n)}) != n:
            continue
        if len(set(perm)) != n:
            continue
        out.append(perm)
    return out


def queens_solutions_exhaustive(n):
    """Full n^n assignment scan for small n (cross-checks the
    permutation enumerator)."""
    out = []
    for cand in itertools.product(range(n), repeat=n):
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if cand[i] == cand[j] or abs(cand[i] - cand[j]) == j - i:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(cand)
    return out


def golomb_optimum(m):
    """Smallest last mark of an m-mark ruler with distinct pairwise
    differences, by growing the candidate length and enumerating mark
    subsets."""
    if m == 1:
        return 0
    length = m - 1
    while True:
        for marks in itertools.combinations(range(1, length + 1), m - 1):
            if marks[-1] != length:
                continue
            full = (0,) + marks
            diffs = set()
            ok = True
            for i in range(m):
                for j in range(i + 1, m):
                    d = full[j] - full[i]
                    if d in diffs:
                        ok = False
                        break
                    diffs.add(d)
                if not ok:
                    break
            if ok:
                return length
        length += 1


def langford_solutions(k, n):
    """All Langford sequences L(k, n) as position tuples (occurrence
    j of value v sits at tuple index (v-1)*k + j), by brute force over
    the first-occurrence positions."""
    size = k * n
    out = []

    def place(v, used, acc):
        if v > n:
            out.append(tuple(acc))
            return
        for start in range(size - (k - 1) * (v + 1)):
            slots = [start + j * (v + 1) for j in range(k)]
            if any(s in used for s in slots):
                continue
            place(v + 1, used | set(slots), acc + slots)
    place(1, frozenset(), [])
    return out


def magic_square_solutions(n, symmetry_break=True):
    """All n x n magic squares over permutations of 1..n^2 (n=3 only in
    practice), optionally filtered by the first-cell symmetry breaks."""
    cells = n * n
    magic = n * (cells + 1) // 2
    out = []
    for perm in itertools.permutations(range(1, cells + 1)):
        rows = [perm[r * n:(r + 1) * n] for r in range(n)]
        if any(sum(row) != magic for row in rows):
            continue
        if any(sum(rows[r][c] for r in range(n)) != magic for c in range(n)):
            continue
        if sum(rows[i][i] for i in range(n)) != magic:
            continue
        if sum(rows[i][n - 1 - i] for i in range(n)) != magic:
            continue
        if symmetry_break:
            if not (perm[0] < perm[n - 1] and perm[0] < perm[n * (n - 1)]):
                continue
        out.append(perm)
    return out
