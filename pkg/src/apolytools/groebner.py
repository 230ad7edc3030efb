"""Monomial orders, Buchberger's algorithm and the ideal operations built on it.

Bases are computed over QQ or GF(p). Over QQ the working polynomials are
kept as primitive integer polynomials (fraction-free reduction) and only
the final reduced basis is made monic.

Every computation runs under a :class:`Budget`; exceeding it raises
:class:`~apolytools.errors.BudgetExceeded` instead of returning a partial
basis.
"""

import heapq
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd

from .algebra import QQ, ZZ, Poly, PolyRing, PrimeField
from .algebra.gcd import primitive_integer
from .errors import BudgetExceeded, DomainError

log = logging.getLogger(__name__)


# -- budgets -------------------------------------------------------------


@dataclass
class Budget:
    max_basis: int = 2000
    timeout_sec: float = 600.0

    def start(self):
        return _Clock(self)


class _Clock:
    def __init__(self, budget):
        self.budget = budget
        self.t0 = time.monotonic()
        self.stats = {"pairs": 0, "zero_reductions": 0, "basis_size": 0}

    def elapsed(self):
        return time.monotonic() - self.t0

    def check(self, size=None):
        if size is not None:
            self.stats["basis_size"] = size
            if size > self.budget.max_basis:
                self.fail(f"basis size {size} exceeds cap {self.budget.max_basis}")
        if self.elapsed() > self.budget.timeout_sec:
            self.fail(f"Groebner computation exceeded {self.budget.timeout_sec}s")

    def fail(self, what):
        stats = dict(self.stats, elapsed_sec=round(self.elapsed(), 3))
        raise BudgetExceeded(what, stats)


DEFAULT_BUDGET = Budget()


# -- monomial orders -----------------------------------------------------


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is one of ``lex``, ``grevlex``, ``block`` or ``weight``.

    ``block`` puts the ``front`` variables first (grevlex inside each block)
    and eliminates them. ``weight`` compares ``weights`` first (larger
    pairing is larger) and breaks ties with grevlex; the weights must make
    it a well-ordering on the monomials it is used with.
    """

    kind: str = "grevlex"
    front: tuple = ()
    weights: tuple = ()

    def key_function(self, ring):
        n = ring.nvars
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return _grevlex_key
        if self.kind == "block":
            front = [ring.index(v) for v in self.front]
            back = [i for i in range(n) if i not in front]

            def key(e):
                a = [e[i] for i in front]
                b = [e[i] for i in back]
                return _grevlex_key(a) + _grevlex_key(b)

            return key
        if self.kind == "weight":
            w = _integer_weights(self.weights)
            if len(w) != n:
                raise ValueError(f"weight vector length {len(w)} != {n} variables")

            def key(e):
                return (sum(a * b for a, b in zip(w, e)),) + _grevlex_key(e)

            return key
        raise ValueError(f"unknown order {self.kind!r}")


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(front):
    return MonomialOrder("block", front=tuple(front))


def weight_order(weights):
    return MonomialOrder("weight", weights=tuple(Fraction(w) for w in weights))


def _integer_weights(ws):
    ws = [Fraction(w) for w in ws]
    den = 1
    for w in ws:
        den = den * w.denominator // igcd(den, w.denominator)
    return [int(w * den) for w in ws]


# -- ideals --------------------------------------------------------------


class PolynomialIdeal:
    """Ideal generated by finitely many polynomials of one ring.

    Zero generators are dropped. Laurent generators are stored as given and
    cleared of monomial denominators whenever a Groebner basis is needed,
    which does not change the ideal in the Laurent ring.
    """

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            if not isinstance(g, Poly):
                g = ring.constant(g)
            if g.ring != ring:
                g = g.convert(ring)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def is_zero(self):
        return not self.generators

    def cleared(self):
        """Generators multiplied by monomials so all exponents are >= 0."""
        out = []
        for g in self.generators:
            shift = g.monomial_content()
            if any(s < 0 for s in shift):
                g = g.mul_monomial(tuple(-min(s, 0) for s in shift))
            out.append(g)
        return out

    def __repr__(self):
        return f"PolynomialIdeal({self.ring}, [{', '.join(map(str, self.generators))}])"


@dataclass
class GroebnerBasis:
    ring: PolyRing
    order: MonomialOrder
    elements: list
    stats: dict = field(default_factory=dict)

    def leading_monomials(self):
        key = self.order.key_function(self.ring)
        return [max(g.terms, key=key) for g in self.elements]

    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


# -- internal polynomial representation ------------------------------------
#
# A working polynomial is (lm, terms) where terms is a dict exps -> int.
# Over GF(p) it is monic; over QQ it is primitive with positive leading
# coefficient.


class _Arith:
    def __init__(self, domain):
        if isinstance(domain, PrimeField):
            self.p = domain.p
        elif domain in (QQ, ZZ):
            self.p = 0
        else:
            raise DomainError(f"Groebner bases need a field, got {domain}")

    def from_poly(self, f):
        if self.p:
            return dict(f.terms)
        return dict(primitive_integer(f).terms)

    def normalize(self, terms, lm):
        """Make monic (GF(p)) or primitive with positive lc (QQ), in place-safe."""
        c = terms[lm]
        if self.p:
            if c == 1:
                return terms
            inv = pow(c, -1, self.p)
            return {e: v * inv % self.p for e, v in terms.items()}
        g = 0
        for v in terms.values():
            g = igcd(g, v)
            if g == 1:
                break
        if c < 0:
            g = -g
        if g == 1:
            return terms
        return {e: v // g for e, v in terms.items()}


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _KeyCache:
    """Memoized sort keys; ``neg`` gives keys for heapq's min-heap."""

    def __init__(self, key):
        self.key = key
        self._neg = {}

    def neg(self, e):
        k = self._neg.get(e)
        if k is None:
            k = self._neg[e] = tuple(-x for x in self.key(e))
        return k


def _reduce(terms, basis, key, ar, clock=None, full=True, cache=None):
    """Reduce ``terms`` by ``basis`` (list of (lm, lc, tail-items)).

    Returns ``(remainder, scale)`` with ``scale * terms == remainder + sum q_i g_i``.
    With ``full=False`` only the leading term is reduced.
    """
    p = ar.p
    work = dict(terms)
    neg = (cache or _KeyCache(key)).neg
    heap = [(neg(e), e) for e in work]
    heapq.heapify(heap)
    rem = {}
    scale = 1
    steps = 0
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if c is None:
            continue
        for lm, lc, tail in basis:
            if _divides(lm, e):
                break
        else:
            if not full:
                rem.update(work)
                return rem, scale
            rem[e] = work.pop(e)
            continue
        del work[e]
        q = tuple(x - y for x, y in zip(e, lm))
        if p:
            for te, tc in tail:
                k = tuple(x + y for x, y in zip(te, q))
                v = work.get(k)
                if v is None:
                    work[k] = -c * tc % p
                    heapq.heappush(heap, (neg(k), k))
                else:
                    v = (v - c * tc) % p
                    if v:
                        work[k] = v
                    else:
                        del work[k]
        else:
            g = igcd(lc, c)
            a = lc // g
            b = c // g
            if a != 1:
                if a == -1:
                    work = {k: -v for k, v in work.items()}
                    rem = {k: -v for k, v in rem.items()}
                else:
                    work = {k: v * a for k, v in work.items()}
                    rem = {k: v * a for k, v in rem.items()}
                scale *= a
            for te, tc in tail:
                k = tuple(x + y for x, y in zip(te, q))
                v = work.get(k)
                if v is None:
                    work[k] = -b * tc
                    heapq.heappush(heap, (neg(k), k))
                else:
                    v -= b * tc
                    if v:
                        work[k] = v
                    else:
                        del work[k]
        steps += 1
        if clock is not None and steps % 2000 == 0:
            clock.check()
    return rem, scale


def _entry(terms, key, ar):
    lm = max(terms, key=key)
    terms = ar.normalize(terms, lm)
    tail = [(e, c) for e, c in terms.items() if e != lm]
    return lm, terms[lm], tail, terms


def _spoly(a, b, ar):
    """S-polynomial of two normalized working polynomials."""
    lma, lca, tla, _ = a
    lmb, lcb, tlb, _ = b
    L = _lcm(lma, lmb)
    qa = tuple(x - y for x, y in zip(L, lma))
    qb = tuple(x - y for x, y in zip(L, lmb))
    out = {}
    p = ar.p
    if p:
        ca, cb = 1, 1
    else:
        g = igcd(lca, lcb)
        ca, cb = lcb // g, lca // g
    for e, c in tla:
        k = tuple(x + y for x, y in zip(e, qa))
        out[k] = out.get(k, 0) + ca * c
    for e, c in tlb:
        k = tuple(x + y for x, y in zip(e, qb))
        out[k] = out.get(k, 0) - cb * c
    if p:
        return {k: v % p for k, v in out.items() if v % p}
    return {k: v for k, v in out.items() if v}


def _update(G, B, ih, f):
    """Gebauer-Moeller installation of the new element ``ih``."""
    mh = f[ih][0]
    C = list(G)
    D = []
    while C:
        ig = C.pop(0)
        mg = f[ig][0]
        L = _lcm(mh, mg)
        coprime = all(x == 0 or y == 0 for x, y in zip(mh, mg))
        if coprime or (
            not any(_divides(_lcm(mh, f[ip][0]), L) for ip in C)
            and not any(_divides(_lcm(mh, f[jp][0]), L) for _, jp in D)
        ):
            D.append((ih, ig))
    E = []
    for ih_, ig in D:
        mg = f[ig][0]
        if not all(x == 0 or y == 0 for x, y in zip(mh, mg)):
            E.append((ih_, ig))
    B_new = []
    for i1, i2 in B:
        m1, m2 = f[i1][0], f[i2][0]
        L12 = _lcm(m1, m2)
        if not _divides(mh, L12) or _lcm(m1, mh) == L12 or _lcm(m2, mh) == L12:
            B_new.append((i1, i2))
    B_new.extend(E)
    G_new = [ig for ig in G if not _divides(mh, f[ig][0])]
    G_new.append(ih)
    return G_new, B_new


def _to_poly(ring, terms, ar):
    if ar.p:
        return Poly._new(ring, dict(terms))
    return Poly._new(ring, {e: Fraction(c) for e, c in terms.items()})


def buchberger(ideal, order=GREVLEX, budget=None):
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Over QQ (or ZZ input, promoted) the elements are monic with rational
    coefficients; over GF(p) they are monic. The result is sorted by
    decreasing leading monomial and is independent of generator order.
    """
    budget = budget or DEFAULT_BUDGET
    clock = budget.start()
    ring = ideal.ring
    dom = ring.domain
    if dom == ZZ:
        ring = ring.with_domain(QQ)
    ar = _Arith(dom)
    raw = order.key_function(ring)
    memo = {}

    def key(e):
        k = memo.get(e)
        if k is None:
            k = memo[e] = raw(e)
        return k

    cache = _KeyCache(key)
    gens = [ar.from_poly(g) for g in ideal.cleared()]
    gens = [g for g in gens if g]
    out_ring = ring
    if not gens:
        return GroebnerBasis(out_ring, order, [], dict(clock.stats))
    # deterministic start: process generators by increasing leading monomial
    entries = sorted((_entry(g, key, ar) for g in gens), key=lambda t: key(t[0]))
    f = []
    G, B = [], []
    for ent in entries:
        if not any(ent[0]):
            return _unit_basis(out_ring, order, clock)
        f.append(ent)
    # inter-reduce generators first so the pair set starts small
    for i in range(len(f)):
        G, B = _update(G, B, i, f)
    while B:
        clock.check(len(f))
        B.sort(key=lambda ij: (key(_lcm(f[ij[0]][0], f[ij[1]][0])), max(ij), min(ij)))
        i, j = B.pop(0)
        clock.stats["pairs"] += 1
        s = _spoly(f[i], f[j], ar)
        if not s:
            clock.stats["zero_reductions"] += 1
            continue
        basis = [(f[k][0], f[k][1], f[k][2]) for k in sorted(G, key=lambda k: key(f[k][0]))]
        r, _ = _reduce(s, basis, key, ar, clock, cache=cache)
        if not r:
            clock.stats["zero_reductions"] += 1
            continue
        ent = _entry(r, key, ar)
        if not any(ent[0]):
            return _unit_basis(out_ring, order, clock)
        f.append(ent)
        G, B = _update(G, B, len(f) - 1, f)
    reduced = _interreduce([f[k] for k in G], key, ar, clock, cache)
    elements = [_to_poly(out_ring, t, ar) for t in reduced]
    elements = [_monic_poly(g, key) for g in elements]
    elements.sort(key=lambda g: key(max(g.terms, key=key)), reverse=True)
    stats = dict(clock.stats, basis_size=len(elements), elapsed_sec=round(clock.elapsed(), 3))
    return GroebnerBasis(out_ring, order, elements, stats)


def _monic_poly(g, key):
    lm = max(g.terms, key=key)
    c = g.terms[lm]
    if c == 1:
        return g
    dom = g.ring.domain
    inv = pow(c, -1, dom.p) if isinstance(dom, PrimeField) else 1 / Fraction(c)
    return g.scale(inv)


def _unit_basis(ring, order, clock):
    return GroebnerBasis(ring, order, [ring.one()], dict(clock.stats, basis_size=1))


def _interreduce(entries, key, ar, clock, cache=None):
    # minimalize: drop elements whose leading monomial is divisible by another's
    entries = sorted(entries, key=lambda t: key(t[0]))
    minimal = []
    for ent in entries:
        if not any(_divides(m[0], ent[0]) for m in minimal):
            minimal.append(ent)
    out = []
    for i, ent in enumerate(minimal):
        others = [(m[0], m[1], m[2]) for j, m in enumerate(minimal) if j != i]
        r, _ = _reduce(ent[3], others, key, ar, clock, cache=cache)
        out.append(ar.normalize(r, max(r, key=key)))
    return out


# -- user-facing operations -------------------------------------------------


def _working_ring(ring):
    return ring.with_domain(QQ) if ring.domain == ZZ else ring


def normal_form(f, G):
    """Remainder of ``f`` on division by the Groebner basis ``G``.

    A Laurent ``f`` is first multiplied by the smallest monomial clearing
    its negative exponents.
    """
    ring = G.ring
    f = f.convert(ring) if f.ring != ring else f
    shift = f.monomial_content()
    if any(s < 0 for s in shift):
        f = f.mul_monomial(tuple(-min(s, 0) for s in shift))
    if not f:
        return f
    ar = _Arith(ring.domain)
    key = G.order.key_function(ring)
    basis = []
    for g in G.elements:
        lm = max(g.terms, key=key)
        t = ar.from_poly(g)
        t = ar.normalize(t, lm)
        basis.append((lm, t[lm], [(e, c) for e, c in t.items() if e != lm]))
    if ar.p:
        r, _ = _reduce(dict(f.terms), basis, key, ar)
        return Poly._new(ring, r)
    # fraction-free: reduce the primitive integer associate, then rescale
    pf = primitive_integer(f)
    cont = Fraction(next(iter(f.terms.values()))) / next(iter(pf.terms.values()))
    r, scale = _reduce(dict(pf.terms), basis, key, ar)
    return Poly._new(ring, {e: Fraction(c) * cont / scale for e, c in r.items()})


def ideal_contains(G, f):
    return not normal_form(f, G)


def is_groebner(G):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    els = G.elements
    ring = G.ring
    ar = _Arith(ring.domain)
    key = G.order.key_function(ring)
    ents = [_entry(ar.from_poly(g), key, ar) for g in els]
    basis = [(e[0], e[1], e[2]) for e in ents]
    for i in range(len(ents)):
        for j in range(i + 1, len(ents)):
            s = _spoly(ents[i], ents[j], ar)
            if s and _reduce(s, basis, key, ar)[0]:
                return False
    return True


def _linear_substitutions(polys, candidates, max_terms=8, units=()):
    """Eliminate variables that occur linearly with an invertible coefficient.

    The coefficient must be a constant, or a monomial in ``units`` when the
    caller knows those variables are invertible (the ideal is saturated by
    them). Each step replaces ``x`` by ``-(rest)/c`` everywhere and clears
    monomial denominators, which leaves the intersection with the subring
    of the other variables unchanged (after that saturation).
    """
    polys = list(polys)
    done = []
    changed = True
    while changed:
        changed = False
        for gi, g in enumerate(polys):
            unit_idx = {g.ring.index(u) for u in units}
            for v in candidates:
                i = g.ring.index(v)
                if g.degree(i) != 1 or len(g) - 1 > max_terms:
                    continue
                lin = {e: c for e, c in g.terms.items() if e[i] == 1}
                if len(lin) != 1:
                    continue
                ((e0, c),) = lin.items()
                if any(x for k, x in enumerate(e0) if k != i and k not in unit_idx):
                    continue
                coeff = Poly._new(g.ring, {e0[:i] + (0,) + e0[i + 1:]: c})
                rest = g - coeff * g.ring.gen(v)
                value = -(rest * coeff.monomial_inverse())
                polys = [_clear(h.subs(i, value)) for k, h in enumerate(polys) if k != gi]
                polys = [h for h in polys if h]
                done.append((v, value))
                candidates = [u for u in candidates if u != v]
                changed = True
                break
            if changed:
                break
    return polys, done


def _clear(f):
    shift = f.monomial_content()
    if any(s < 0 for s in shift):
        f = f.mul_monomial(tuple(-min(s, 0) for s in shift))
    return f


def eliminate(ideal, drop, budget=None, presubstitute=True, units=(), protect=()):
    """``I ∩ k[kept variables]`` via a block-elimination Groebner basis.

    The result lives in the ring of the kept variables (same domain, QQ for
    ZZ input). ``units`` may be named only when the ideal contains a
    generator making them invertible (e.g. ``t*m*l - 1``), whose variable
    must then be listed in ``protect`` so it is never substituted away.
    """
    ring = _working_ring(ideal.ring)
    drop = [ring.names[ring.index(v)] for v in drop]
    keep = [n for n in ring.names if n not in drop]
    gens = [g.convert(ring) for g in ideal.cleared()]
    subs = []
    if presubstitute:
        gens, subs = _linear_substitutions(gens, [v for v in drop if v not in protect], units=units)
    sub_ring = ring.with_names(keep)
    if any(g.is_constant() and g for g in gens):
        return PolynomialIdeal(sub_ring, [1])
    order = block_order(drop)
    G = buchberger(PolynomialIdeal(ring, gens), order, budget)
    idx = [ring.index(v) for v in drop]
    kept = [g for g in G.elements if not any(e[i] for e in g.terms for i in idx)]
    out = PolynomialIdeal(sub_ring, [g.convert(sub_ring) for g in kept])
    out.stats = dict(G.stats, substitutions=[v for v, _ in subs])
    return out


def _fresh_name(ring, base="t"):
    name = base
    k = 0
    while name in ring.names:
        k += 1
        name = f"{base}{k}"
    return name


def saturate_by_variable(ideal, variables, budget=None):
    """``I : (prod variables)^oo`` by adjoining ``t*prod - 1`` and eliminating ``t``."""
    ring = _working_ring(ideal.ring)
    if not variables:
        return PolynomialIdeal(ring, ideal.cleared())
    t = _fresh_name(ring)
    big = PolyRing(ring.domain, (t,) + ring.names, ring.laurent)
    prod = big.one()
    for v in variables:
        prod = prod * big.gen(v)
    gens = [g.convert(big) for g in ideal.cleared()]
    gens.append(big.gen(t) * prod - 1)
    return eliminate(PolynomialIdeal(big, gens), [t], budget, presubstitute=False)


def reduced_basis(ideal, order=GREVLEX, budget=None):
    return buchberger(ideal, order, budget)


def is_unit_ideal(ideal, budget=None):
    if any(g.is_constant() for g in ideal.generators):
        return True
    return buchberger(ideal, GREVLEX, budget).is_unit()


def initial_form(f, weights):
    """Terms of ``f`` maximizing the weight pairing."""
    w = [Fraction(x) for x in weights]
    best = None
    out = {}
    for e, c in f.terms.items():
        v = sum(a * b for a, b in zip(w, e))
        if best is None or v > best:
            best = v
            out = {e: c}
        elif v == best:
            out[e] = c
    return Poly._new(f.ring, out)


def _homogenize(f, h_index, n):
    d = f.degree()
    return {e[:h_index] + (d - sum(e),) + e[h_index:]: c for e, c in f.terms.items()}


def initial_form_ideal(ideal, weights, budget=None):
    """Ideal of ``w``-initial forms (max convention) of all members of ``I``.

    ``I`` is homogenized with a fresh variable ``h`` from a grevlex basis;
    the homogeneous ideal admits a weight order for any ``w`` after shifting
    by a multiple of the all-ones vector. Initial forms of that basis,
    dehomogenized, generate ``in_w(I)``.
    """
    ring = _working_ring(ideal.ring)
    weights = [Fraction(x) for x in weights]
    if len(weights) != ring.nvars:
        raise ValueError(f"weight vector has length {len(weights)}, ring has {ring.nvars} variables")
    if ideal.is_zero():
        return PolynomialIdeal(ring, [])
    G = buchberger(PolynomialIdeal(ring, ideal.cleared()), GREVLEX, budget)
    if G.is_unit():
        return PolynomialIdeal(ring, [1])
    h = _fresh_name(ring, "h")
    hring = PolyRing(ring.domain, ring.names + (h,))
    n = ring.nvars
    hom = [Poly._new(hring, _homogenize(g, n, n)) for g in G.elements]
    shift = -min(weights + [Fraction(0)]) + 1
    wh = [w + shift for w in weights] + [shift]
    Gw = buchberger(PolynomialIdeal(hring, hom), weight_order(wh), budget)
    wfull = weights + [Fraction(0)]
    out = []
    for g in Gw.elements:
        ini = initial_form(g, wfull)
        out.append(Poly._new(ring, _dehomogenize(ini.terms, n)))
    return PolynomialIdeal(ring, out)


def _dehomogenize(terms, h_index):
    out = {}
    for e, c in terms.items():
        k = e[:h_index] + e[h_index + 1:]
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def contains_monomial(ideal, budget=None):
    """True iff the ideal contains a monomial, i.e. ``I : (x_1...x_n)^oo = <1>``."""
    if ideal.is_zero():
        return False
    sat = saturate_by_variable(ideal, list(ideal.ring.names), budget)
    return any(g.is_constant() for g in sat.generators)
