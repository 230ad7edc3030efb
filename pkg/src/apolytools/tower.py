"""A-polynomials by iterated resultants, independent of Groebner bases.

The representation system is rewritten to keep degrees low:

* a relator ``r = s t`` becomes ``M(s) = M(t^-1)``;
* the peripheral eigenvector condition ``M(w) e1 = x e1`` for ``w = s t``
  becomes ``M(t) e1 = x M(s^-1) e1``, after stripping trailing meridian
  powers from the longitude.

The flag stabilizer (upper-triangular matrices) acts on the solutions
without changing ``(m, l)``. Away from ``m = +-1`` it can be used to make
the meridian diagonal and then to set a lower-left entry ``c_k`` to 1;
the cases ``c_k = 0`` and ``m = +-1`` are separate branches.

Matrix entries are then eliminated one at a time. Pivots with a non-unit
leading coefficient split into ``lc = 0`` and ``lc != 0`` branches, and a
vanishing resultant splits on the common factor. Each branch yields a
polynomial vanishing on the closure of its ``(m, l)``-image (possibly with
extra factors); the answer is the lcm over branches.
"""

import time
from dataclasses import dataclass, field

from .algebra import Poly, PolyRing, PrimeField, QQ, ZZ
from .algebra.gcd import (
    _bareiss_det,
    exact_divide,
    poly_gcd,
    primitive_integer,
    squarefree_part,
    sylvester_matrix,
)
from .errors import ApolyError, BudgetExceeded
from .presentations import Word
from .repvar import RepRing, word_matrix


@dataclass
class TowerBudget:
    max_branches: int = 20000
    timeout_sec: float = 600.0


@dataclass
class TowerResult:
    polynomial: Poly
    branches: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def _halves(w):
    h = len(w) // 2
    return Word(w[:h]), Word(w[h:])


def _apply_e1(X):
    return X[0][0], X[1][0]


def _strip_trailing(word, mu):
    """Write ``word = rest * mu^k`` with ``k`` as large in absolute value as possible."""
    w = list(word)
    k = 0
    if not mu:
        return Word(w), 0
    for target, step in ((list(mu), 1), (list(Word(mu).inverse()), -1)):
        n = len(target)
        while len(w) >= n and w[-n:] == target:
            w = w[:-n]
            k += step
        if k:
            break
    return Word(w), k


def peripheral_system(G, domain, diagonal_meridian=False):
    """Low-degree polynomial system for upper-triangular peripheral images.

    Returns ``(rep_ring, polys)``. With ``diagonal_meridian`` the meridian
    image is forced to equal ``diag(m, 1/m)``.
    """
    if len(G.cusps) != 1:
        raise ApolyError("the resultant tower handles one-cusp presentations")
    R = RepRing(G, domain, eigen=True)
    m, l = R.cusp_vars(0)
    polys = []
    for k in range(G.ngens):
        a, b, c, d = (R.var(n) for n in R.vars.names(k))
        polys.append(a * d - b * c - 1)
    for r in G.relators:
        s, t = _halves(r)
        S, T = word_matrix(s, R), word_matrix(t.inverse(), R)
        polys.extend(S[i][j] - T[i][j] for i in range(2) for j in range(2))
    cusp = G.cusps[0]
    mu = cusp.meridian
    s, t = _halves(mu)
    T, S = word_matrix(t, R), word_matrix(s.inverse(), R)
    if diagonal_meridian:
        # M(t) = M(s)^-1 diag(m, 1/m), second column scaled by m
        polys += [T[0][0] - S[0][0] * m, T[0][1] * m - S[0][1], T[1][0] - S[1][0] * m, T[1][1] * m - S[1][1]]
    else:
        lhs, rhs = _apply_e1(T), _apply_e1(S)
        polys += [lhs[i] - m * rhs[i] for i in range(2)]
    lam, k = _strip_trailing(cusp.longitude, mu)
    s, t = _halves(lam)
    lhs, rhs = _apply_e1(word_matrix(t, R)), _apply_e1(word_matrix(s.inverse(), R))
    for i in range(2):
        if k >= 0:
            polys.append(lhs[i] * m**k - l * rhs[i])
        else:
            polys.append(lhs[i] - l * m ** (-k) * rhs[i])
    return R, [p for p in polys if p]


class _Tower:
    def __init__(self, ring, keep, budget):
        self.ring = ring
        self.unit = [ring.index(v) for v in keep]
        self.drop = [i for i in range(ring.nvars) if i not in self.unit]
        self.budget = budget
        self.t0 = time.monotonic()
        self.branches = 0
        self.resultants = 0

    # -- housekeeping ---------------------------------------------------

    def tick(self):
        self.branches += 1
        if self.branches > self.budget.max_branches:
            raise BudgetExceeded(
                f"resultant tower exceeded {self.budget.max_branches} branches",
                {"branches": self.branches, "resultants": self.resultants},
            )
        if time.monotonic() - self.t0 > self.budget.timeout_sec:
            raise BudgetExceeded(
                f"resultant tower exceeded {self.budget.timeout_sec}s",
                {"branches": self.branches, "resultants": self.resultants},
            )

    def is_unit(self, c):
        """Nonzero constant times a monomial in the invertible variables."""
        if len(c) != 1:
            return False
        (e,) = c.terms
        return all(x == 0 or i in self.unit for i, x in enumerate(e))

    def clean(self, f):
        """Drop unit monomials and content; radical for polynomials in m, l only."""
        if f.is_constant():
            return f
        shift = [0] * f.ring.nvars
        for i in self.unit:
            shift[i] = min(e[i] for e in f.terms)
        if any(shift):
            f = Poly._new(f.ring, {tuple(a - b for a, b in zip(e, shift)): c for e, c in f.terms.items()})
        if f.is_constant():
            return f
        if all(f.degree(i) == 0 for i in self.drop):
            return squarefree_part(f).set_domain(f.ring.domain)
        if isinstance(f.ring.domain, PrimeField):
            return f.scale(pow(f.leading_lex()[1], -1, f.ring.domain.p))
        g = primitive_integer(f)
        if g.leading_lex()[1] < 0:
            g = -g
        return g.set_domain(f.ring.domain)

    def saturate(self, f, nonzero):
        """Remove factors of ``f`` shared with polynomials known to be nonzero."""
        if f.is_constant():
            return f
        fv = set(f.variables())
        for q in nonzero:
            if q.is_constant() or not fv & set(q.variables()):
                continue
            while True:
                h = poly_gcd(f, q)
                if h.is_constant():
                    break
                f = exact_divide(f, h.set_domain(f.ring.domain))
        return f

    @staticmethod
    def dedup(polys):
        seen = set()
        out = []
        for p in polys:
            key = frozenset(p.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(p)
        return out

    @staticmethod
    def lead(f, i):
        d = f.degree(i)
        return Poly._new(f.ring, {e[:i] + (0,) + e[i + 1:]: c for e, c in f.terms.items() if e[i] == d})

    def linear_subs(self, polys):
        """Solve ``x = -rest/u`` for generators linear in ``x`` with unit coefficient ``u``."""
        changed = True
        while changed:
            changed = False
            for f in sorted(polys, key=len):
                for i in self.drop:
                    if f.degree(i) != 1:
                        continue
                    u = Poly._new(f.ring, {e[:i] + (0,) + e[i + 1:]: c for e, c in f.terms.items() if e[i] == 1})
                    if not self.is_unit(u):
                        continue
                    rest = Poly._new(f.ring, {e: c for e, c in f.terms.items() if e[i] == 0})
                    out = []
                    for g in polys:
                        if g is f:
                            continue
                        d = g.degree(i)
                        if d <= 0:
                            out.append(g)
                            continue
                        parts = {}
                        for e, c in g.terms.items():
                            parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
                        acc = g.ring.zero()
                        for k, t in parts.items():
                            acc = acc + Poly._new(g.ring, t) * (-rest) ** k * u ** (d - k)
                        if acc:
                            out.append(self.clean(acc))
                    polys = out
                    changed = True
                    break
                if changed:
                    break
        return polys

    # -- elimination ----------------------------------------------------

    def run(self, polys, nonzero=()):
        self.tick()
        polys = [p for p in polys if p]
        polys = self.dedup([self.saturate(self.clean(p), nonzero) for p in polys])
        polys = self.dedup([self.saturate(p, nonzero) for p in self.linear_subs(polys)])
        if any(p.is_constant() for p in polys):
            return self.ring.one()
        present = [i for i in self.drop if any(p.degree(i) > 0 for p in polys)]
        if not present:
            if not polys:
                return self.ring.zero()
            g = polys[0]
            for p in polys[1:]:
                g = poly_gcd(g, p)
            return self.clean(g.set_domain(self.ring.domain))
        best = None
        for i in present:
            top = max(p.degree(i) for p in polys)
            for f in polys:
                d = f.degree(i)
                if d > 0:
                    key = (d * top, 0 if self.is_unit(self.lead(f, i)) else 1, len(f), i)
                    if best is None or key < best[0]:
                        best = (key, i, f)
        _, i, f = best
        lc = self.lead(f, i)
        if not self.is_unit(lc):
            d = f.degree(i)
            red = Poly._new(f.ring, {e: c for e, c in f.terms.items() if e[i] < d})
            others = [p for p in polys if p is not f]
            zero_branch = self.run([lc, red] + others, nonzero)
            if zero_branch.is_constant() and zero_branch:
                return self.eliminate(f, i, polys, nonzero + (self.clean(lc),))
            return _lcm(zero_branch, self.eliminate(f, i, polys, nonzero + (self.clean(lc),)))
        return self.eliminate(f, i, polys, nonzero)

    def eliminate(self, f, i, polys, nonzero):
        var = self.ring.names[i]
        new = []
        for g in polys:
            if g is f:
                continue
            if g.degree(i) == 0:
                new.append(g)
                continue
            self.resultants += 1
            r = _bareiss_det(sylvester_matrix(f, g, var))
            if r:
                new.append(r)
                continue
            h = poly_gcd(f, g).set_domain(self.ring.domain)
            rest = [p for p in polys if p is not f and p is not g]
            b1 = self.run([h] + rest, nonzero)
            b2 = self.run([exact_divide(f, h), exact_divide(g, h)] + rest, nonzero)
            return _lcm(b1, b2)
        return self.run(new, nonzero)


def _lcm(a, b):
    if not a or not b:
        return a.ring.zero()
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    return exact_divide(a * b, poly_gcd(a, b).set_domain(a.ring.domain))


def _gauge_variable(tower, polys):
    """First lower-left entry ``c_k`` still present after linear substitution."""
    for name in tower.ring.names:
        if name.startswith("c") and name[1:].isdigit():
            i = tower.ring.index(name)
            if any(p.degree(i) > 0 for p in polys):
                return name
    return None


def _branch_results(R, polys, budget, fixed=None):
    """Run the tower on the ``c_k = 1`` and ``c_k = 0`` gauge branches."""
    tower = _Tower(R.ring, R.eigen, budget)
    base = tower.linear_subs([tower.clean(p) for p in polys if p])
    if fixed:
        base = [p.subs(fixed[0], fixed[1]) for p in base]
    ck = _gauge_variable(tower, base)
    out = []
    if ck is None:
        out.append(("no gauge", tower.run(base)))
    else:
        i = tower.ring.index(ck)
        for val in (1, 0):
            out.append((f"{ck}={val}", tower.run([p.subs(i, val) for p in base])))
    return out, tower


def resultant_tower(G, domain, budget=None):
    """Codimension-one part of the eigenvalue image, by resultants.

    Returns a :class:`TowerResult` whose polynomial lives in ``domain[m, l]``
    (QQ for ZZ input) and is zero when there is no codimension-one
    constraint.
    """
    budget = budget or TowerBudget()
    if domain == ZZ:
        domain = QQ
    t0 = time.monotonic()
    R, polys = peripheral_system(G, domain, diagonal_meridian=True)
    target = PolyRing(domain, ("m", "l"), laurent=("m", "l"))
    pieces = []
    results, tower = _branch_results(R, polys, budget)
    stats = {"branches": 0, "resultants": 0}
    for label, f in results:
        pieces.append((f"m^2!=1, {label}", f))
    stats["branches"] += tower.branches
    stats["resultants"] += tower.resultants
    R0, plain = peripheral_system(G, domain, diagonal_meridian=False)
    signs = (1,) if isinstance(domain, PrimeField) and domain.p == 2 else (1, -1)
    for s in signs:
        results, tower = _branch_results(R0, plain, budget, fixed=(R0.ring.index("m"), s))
        stats["branches"] += tower.branches
        stats["resultants"] += tower.resultants
        line = target.gen("m") - s
        for label, f in results:
            # a nonzero eliminant cuts the line m = s down to finitely many points
            pieces.append((f"m={s}, {label}", line if not f else target.one()))
    total = target.one()
    for _, f in pieces:
        total = _lcm(total, f.convert(target) if f.ring != target else f)
    stats["elapsed_sec"] = round(time.monotonic() - t0, 3)
    return TowerResult(total, [(label, f.convert(target)) for label, f in pieces], stats)
