"""Benchmark problem builders.

Each builder returns a ProblemSpec: variable bounds, an ordered list of
constraint posts, an optional minimization objective and a default
search mode. Construction is deterministic - equal parameters give an
identical problem with identical variable numbering - so search trees
are reproducible across strategies and runs.

check_solution re-evaluates every constraint directly on a raw value
tuple, with no solver machinery, and is the independent validity check
used by the tests and the CLI.
"""

from .branching import SearchMode
from .domain import State
from .propagation import (post_alldiff, post_linear_eq, post_linear_leq,
                          post_neq_offset)


class ProblemSpec:
    __slots__ = ("name", "parameters", "bounds", "posts", "objective",
                 "mode_default")

    def __init__(self, name, parameters, bounds, posts, objective=None,
                 mode_default="first"):
        self.name = name
        self.parameters = tuple(parameters)
        self.bounds = tuple(bounds)
        self.posts = tuple(posts)
        self.objective = objective
        self.mode_default = mode_default

    @property
    def nvars(self):
        return len(self.bounds)

    def label(self):
        if self.parameters:
            return "%s:%s" % (self.name, ",".join(map(str, self.parameters)))
        return self.name

    def default_mode(self):
        if self.mode_default == "best":
            return SearchMode("best", self.objective)
        return SearchMode(self.mode_default)


def build_state(spec):
    """Instantiate a fresh State for a problem."""
    s = State(spec.bounds)
    for post in spec.posts:
        kind = post[0]
        if kind == "neq_offset":
            _, x, y, cx, cy = post
            post_neq_offset(s, x, y, cx, cy)
        elif kind == "alldiff":
            post_alldiff(s, post[1])
        elif kind == "linear_eq":
            _, coeffs, varids, c = post
            post_linear_eq(s, coeffs, varids, c)
        elif kind == "linear_leq":
            _, coeffs, varids, c = post
            post_linear_leq(s, coeffs, varids, c)
        else:
            raise ValueError("unknown post kind %r" % (kind,))
    return s


def check_solution(spec, values):
    """Re-evaluate bounds and all constraints on a raw value tuple."""
    if len(values) != len(spec.bounds):
        return False
    for v, (lo, hi) in zip(values, spec.bounds):
        if v < lo or v > hi:
            return False
    for post in spec.posts:
        kind = post[0]
        if kind == "neq_offset":
            _, x, y, cx, cy = post
            if values[x] + cx == values[y] + cy:
                return False
        elif kind == "alldiff":
            vals = [values[v] for v in post[1]]
            if len(set(vals)) != len(vals):
                return False
        elif kind == "linear_eq":
            _, coeffs, varids, c = post
            if sum(a * values[v] for a, v in zip(coeffs, varids)) != c:
                return False
        elif kind == "linear_leq":
            _, coeffs, varids, c = post
            if sum(a * values[v] for a, v in zip(coeffs, varids)) > c:
                return False
    return True


def build_queens(n, variant="diseq"):
    """n-queens: variable i is the row of the queen in column i.

    diseq: 3*n*(n-1)/2 pairwise disequalities (rows, both diagonals).
    global ("queens-s"): three alldifferent constraints over the rows
    and the two diagonal projections, linked via 2n auxiliary offset
    variables (our alldifferent has no offset form).
    """
    if n < 4:
        raise ValueError("queens needs n >= 4")
    if variant == "diseq":
        bounds = [(0, n - 1)] * n
        posts = []
        for i in range(n):
            for j in range(i + 1, n):
                posts.append(("neq_offset", i, j, 0, 0))
                posts.append(("neq_offset", i, j, i, j))
                posts.append(("neq_offset", i, j, -i, -j))
        return ProblemSpec("queens", (n,), bounds, posts)
    if variant == "global":
        bounds = [(0, n - 1)] * n
        bounds += [(i, n - 1 + i) for i in range(n)]        # row + i
        bounds += [(-i, n - 1 - i) for i in range(n)]       # row - i
        posts = []
        for i in range(n):
            posts.append(("linear_eq", (1, -1), (i, n + i), -i))
            posts.append(("linear_eq", (1, -1), (i, 2 * n + i), i))
        posts.append(("alldiff", tuple(range(n))))
        posts.append(("alldiff", tuple(range(n, 2 * n))))
        posts.append(("alldiff", tuple(range(2 * n, 3 * n))))
        return ProblemSpec("queens-s", (n,), bounds, posts)
    raise ValueError("unknown queens variant %r" % (variant,))


def build_magic_square(n):
    """n x n magic square over 1..n^2 with the first-cell symmetry
    breaks x[0,0] < x[0,n-1] and x[0,0] < x[n-1,0]."""
    if n < 3:
        raise ValueError("magic square needs n >= 3")
    magic = n * (n * n + 1) // 2
    bounds = [(1, n * n)] * (n * n)
    ones = (1,) * n
    posts = [("alldiff", tuple(range(n * n)))]
    for r in range(n):
        posts.append(("linear_eq", ones, tuple(r * n + c for c in range(n)),
                      magic))
    for c in range(n):
        posts.append(("linear_eq", ones, tuple(r * n + c for r in range(n)),
                      magic))
    posts.append(("linear_eq", ones, tuple(i * n + i for i in range(n)),
                  magic))
    posts.append(("linear_eq", ones,
                  tuple(i * n + (n - 1 - i) for i in range(n)), magic))
    posts.append(("linear_leq", (1, -1), (0, n - 1), -1))
    posts.append(("linear_leq", (1, -1), (0, n * (n - 1)), -1))
    return ProblemSpec("magic-square", (n,), bounds, posts)


# The classic alpha crypto-arithmetic puzzle: letters a..z take distinct
# values 1..26 such that the letters of each word sum to its value.
ALPHA_WORDS = (
    ("ballet", 45), ("cello", 43), ("concert", 74), ("flute", 30),
    ("fugue", 50), ("glee", 66), ("jazz", 58), ("lyre", 47),
    ("oboe", 53), ("opera", 65), ("polka", 59), ("quartet", 50),
    ("saxophone", 134), ("scale", 51), ("solo", 37), ("song", 61),
    ("soprano", 82), ("theme", 72), ("violin", 100), ("waltz", 34),
)


def build_alpha():
    bounds = [(1, 26)] * 26
    posts = [("alldiff", tuple(range(26)))]
    for word, total in ALPHA_WORDS:
        counts = {}
        for ch in word:
            v = ord(ch) - ord("a")
            counts[v] = counts.get(v, 0) + 1
        varids = tuple(sorted(counts))
        coeffs = tuple(counts[v] for v in varids)
        posts.append(("linear_eq", coeffs, varids, total))
    return ProblemSpec("alpha", (), bounds, posts, mode_default="all")


def build_langford(k=3, n=9):
    """Langford pairing L(k, n): k occurrences of each value 1..n in a
    row of k*n positions, consecutive occurrences of v spaced v+1 apart.
    Variable (v-1)*k + j is the position of occurrence j of value v.
    No reversal symmetry break."""
    if k < 2 or n < 2:
        raise ValueError("langford needs k >= 2 and n >= 2")
    size = k * n
    bounds = [(0, size - 1)] * size
    posts = []
    for v in range(1, n + 1):
        base = (v - 1) * k
        for j in range(k - 1):
            posts.append(("linear_eq", (1, -1), (base + j + 1, base + j),
                          v + 1))
    posts.append(("alldiff", tuple(range(size))))
    return ProblemSpec("langford", (k, n), bounds, posts, mode_default="all")


def build_golomb(m):
    """Golomb ruler with m marks: minimize the last mark subject to all
    pairwise mark differences being distinct. Marks live in [0, m^2]
    (a safe upper bound at benchmark sizes); difference variables are
    linked explicitly and alldifferent constrains them."""
    if m < 2:
        raise ValueError("golomb needs m >= 2")
    ub = m * m
    ndiff = m * (m - 1) // 2
    bounds = [(0, ub)] * m + [(1, ub)] * ndiff
    posts = [("linear_eq", (1,), (0,), 0)]
    for i in range(m - 1):
        posts.append(("linear_leq", (1, -1), (i, i + 1), -1))
    diff_id = {}
    idx = m
    for i in range(m):
        for j in range(i + 1, m):
            diff_id[(i, j)] = idx
            posts.append(("linear_eq", (1, -1, -1), (j, i, idx), 0))
            idx += 1
    if ndiff >= 2:
        posts.append(("alldiff", tuple(range(m, m + ndiff))))
    if m >= 3:
        posts.append(("linear_leq", (1, -1),
                      (diff_id[(0, 1)], diff_id[(m - 2, m - 1)]), -1))
    return ProblemSpec("golomb", (m,), bounds, posts, objective=m - 1,
                       mode_default="best")


REGISTRY = {
    "queens": lambda params: build_queens(_one(params, "queens")),
    "queens-s": lambda params: build_queens(_one(params, "queens-s"),
                                            variant="global"),
    "magic-square": lambda params: build_magic_square(_one(params,
                                                           "magic-square")),
    "alpha": lambda params: _noargs(params, "alpha") or build_alpha(),
    "langford": lambda params: build_langford(*_exactly(params, 2,
                                                        "langford")),
    "golomb": lambda params: build_golomb(_one(params, "golomb")),
}


def _one(params, name):
    if len(params) != 1:
        raise ValueError("%s takes exactly one parameter" % name)
    return params[0]


def _exactly(params, k, name):
    if len(params) != k:
        raise ValueError("%s takes exactly %d parameters" % (name, k))
    return params


def _noargs(params, name):
    if params:
        raise ValueError("%s takes no parameters" % name)
    return None


def parse_model(text):
    """Parse "name:p1,p2" into a ProblemSpec via the registry."""
    name, _, ptext = text.strip().partition(":")
    params = []
    if ptext:
        try:
            params = [int(p) for p in ptext.split(",")]
        except ValueError:
            raise ValueError("bad model parameters in %r" % (text,))
    try:
        builder = REGISTRY[name]
    except KeyError:
        raise ValueError(
            "unknown model %r (available: %s)"
            % (name, ", ".join(sorted(REGISTRY)))) from None
    return builder(params)
