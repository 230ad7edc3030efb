"""Exhaustive enumeration of representations into SL(2, F_p) for small p.

This is the brute-force oracle for the polynomial ideals built in
:mod:`apolytools.repvar`: a homomorphism is a tuple of generator images
satisfying every relator, and the F_p-points of the representation ideal
must be exactly these tuples.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BudgetExceeded

MAX_TUPLES = 5_000_000
MAX_POINTS = 10**8


@lru_cache(maxsize=None)
def SL2(p):
    """All elements of SL(2, F_p) as tuples ``(a, b, c, d)`` in lexicographic order."""
    return tuple(
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p == 1
    )


def mat_mul(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def mat_inv(x, p):
    a, b, c, d = x
    return (d, -b % p, -c % p, a)


IDENTITY = (1, 0, 0, 1)


def evaluate_word(w, matrices, p):
    out = IDENTITY
    for x in w:
        m = matrices[abs(x) - 1]
        out = mat_mul(out, m if x > 0 else mat_inv(m, p), p)
    return out


class _Table:
    """Multiplication and inversion tables of SL(2, F_p) by element index."""

    def __init__(self, p):
        self.p = p
        self.elements = SL2(p)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.inv = [self.index[mat_inv(m, p)] for m in self.elements]
        self.mul = [[self.index[mat_mul(x, y, p)] for y in self.elements] for x in self.elements]
        self.identity = self.index[IDENTITY]

    def word(self, w, assignment):
        mul = self.mul
        out = self.identity
        for x in w:
            k = assignment[abs(x) - 1]
            out = mul[out][k if x > 0 else self.inv[k]]
        return out


@lru_cache(maxsize=8)
def _table(p):
    return _Table(p)


@dataclass(frozen=True)
class FiniteRepresentation:
    p: int
    matrices: tuple

    def to_dict(self):
        return {"p": self.p, "matrices": [list(m) for m in self.matrices]}


def common_eigenlines(M, L, p):
    """Eigenvalue pairs ``(m, l)`` on lines of F_p^2 fixed by both matrices."""
    pairs = []
    for v in [(1, t) for t in range(p)] + [(0, 1)]:
        ev = []
        for X in (M, L):
            a, b, c, d = X
            w = ((a * v[0] + b * v[1]) % p, (c * v[0] + d * v[1]) % p)
            # w must be a multiple of v
            if (w[0] * v[1] - w[1] * v[0]) % p:
                break
            ev.append(w[0] * pow(v[0], -1, p) % p if v[0] else w[1] * pow(v[1], -1, p) % p)
        else:
            pairs.append(tuple(ev))
    return sorted(set(pairs))


@dataclass
class EnumerationReport:
    group: object
    p: int
    count: int
    representations: list
    capped: bool
    peripheral: list = field(default_factory=list)
    _all: list = field(default=None, repr=False)

    def iter_all(self):
        return iter(self._all)

    def eigenvalue_pairs(self, cusp=0):
        """All ``(m, l)`` found on upper-triangularizable peripheral images."""
        out = set()
        for data in self.peripheral:
            out.update(data[cusp])
        return sorted(out)

    def to_dict(self):
        return {
            "p": self.p,
            "count": self.count,
            "capped": self.capped,
            "representations": [r.to_dict() for r in self.representations],
            "eigenvalue_pairs": [
                [list(pair) for pair in self.eigenvalue_pairs(i)] for i in range(len(self.group.cusps))
            ],
        }


def enumerate_homs(G, p, cap=None, budget=MAX_TUPLES):
    """All homomorphisms ``G -> SL(2, F_p)``, in lexicographic order of element indices.

    ``cap`` truncates the listed representations, never the count.
    """
    if p not in (2, 3, 5, 7):
        raise BudgetExceeded(f"enumeration supports p in (2, 3, 5, 7), got {p}")
    budget = budget or MAX_TUPLES
    size = p * (p * p - 1)
    total = size**G.ngens
    if total > budget:
        raise BudgetExceeded(
            f"{G.ngens} generators over SL(2,F_{p}) is {total} tuples (cap {budget})",
            {"tuples": total, "cap": budget},
        )
    T = _table(p)
    n = G.ngens
    # each relator is checked as soon as its largest generator is assigned
    by_level = [[] for _ in range(n)]
    for r in G.relators:
        if r:
            by_level[max(abs(x) for x in r) - 1].append(r)
    found = []
    assignment = [0] * n

    def rec(level):
        for k in range(size):
            assignment[level] = k
            if all(T.word(r, assignment) == T.identity for r in by_level[level]):
                if level + 1 == n:
                    found.append(tuple(assignment))
                else:
                    rec(level + 1)

    rec(0)
    reps = [FiniteRepresentation(p, tuple(T.elements[k] for k in a)) for a in found]
    peripheral = []
    for rep in reps:
        data = []
        for c in G.cusps:
            M = evaluate_word(c.meridian, rep.matrices, p)
            L = evaluate_word(c.longitude, rep.matrices, p)
            data.append(common_eigenlines(M, L, p))
        peripheral.append(data)
    listed = reps if cap is None else reps[:cap]
    return EnumerationReport(G, p, len(reps), listed, cap is not None and len(reps) > cap, peripheral, reps)


def ideal_points_exhaustive(ideal, p=None, budget=MAX_POINTS):
    """All F_p-points of ``ideal`` (Laurent variables range over F_p^*).

    Backtracks over the ring's variables and tests each generator as soon
    as all of its variables are assigned.
    """
    ring = ideal.ring
    if p is None:
        p = ring.domain.p
    n = ring.nvars
    if p**n > budget:
        raise BudgetExceeded(f"search space {p}^{n} exceeds cap {budget}", {"cap": budget})
    gens = [g.set_domain(ring.domain) if g.ring.domain != ring.domain else g for g in ideal.generators]
    if any(g.is_constant() for g in gens):
        return []
    by_level = [[] for _ in range(max(n, 1))]
    for g in gens:
        used = [ring.index(v) for v in g.variables()]
        by_level[max(used) if used else 0].append(g)
    values = [range(1, p) if name in ring.laurent else range(p) for name in ring.names]
    point = [0] * n
    out = []

    def rec(level):
        for x in values[level]:
            point[level] = x
            if all(g.evaluate(point) % p == 0 for g in by_level[level]):
                if level + 1 == n:
                    out.append(tuple(point))
                else:
                    rec(level + 1)

    if n == 0:
        return [()]
    rec(0)
    return out


@dataclass
class CrossCheck:
    passed: bool
    p: int
    count_enumerated: int
    count_points: int
    only_enumerated: list
    only_points: list

    def to_dict(self):
        return {
            "passed": self.passed,
            "p": self.p,
            "homomorphisms": self.count_enumerated,
            "variety_points": self.count_points,
            "only_enumerated": [list(x) for x in self.only_enumerated[:10]],
            "only_points": [list(x) for x in self.only_points[:10]],
        }


def cross_check(G, p):
    """Compare enumerated homomorphisms with F_p-points of the representation ideal."""
    from .algebra import GF
    from .repvar import rep_ideal

    report = enumerate_homs(G, p)
    homs = {tuple(x for m in r.matrices for x in m) for r in report.iter_all()}
    pts = set(ideal_points_exhaustive(rep_ideal(G, GF(p)), p))
    a = sorted(homs - pts)
    b = sorted(pts - homs)
    return CrossCheck(not a and not b, p, len(homs), len(pts), a, b)
