"""A-polynomials of one-cusped presentations, in characteristic 0 and p.

The main route eliminates everything but ``(m, l)`` from the
upper-triangular representation ideal, saturated by ``m l``, and takes the
gcd of what is left: isolated points of the eigenvalue image do not
affect that gcd. The resultant tower of :mod:`apolytools.tower` is an
independent second route and the fallback when the Groebner budget runs
out.
"""

from dataclasses import dataclass, field

from .algebra import (
    GF,
    QQ,
    ZZ,
    Poly,
    PolyRing,
    PrimeField,
    associates,
    canonical,
    divides,
    exact_divide,
    format_poly,
    invert_variables,
    poly_gcd_many,
    reduce_mod_p,
    squarefree_part,
)
from .errors import ApolyError, BadPrimeError, BudgetExceeded, DomainError
from .groebner import Budget, PolynomialIdeal, eliminate
from .newton import newton_slopes

ROUTES = ("groebner", "tower", "auto")


def apoly_ring(domain):
    """``domain[l, m]`` with both variables invertible."""
    return PolyRing(domain, ("l", "m"), laurent=("l", "m"))


@dataclass
class APolynomial:
    """Canonical A-polynomial in ``(l, m)`` with a provenance record.

    The zero polynomial stands for "no codimension-one constraint" (every
    pair, or a two-dimensional family, occurs); ``provenance['note']`` says so.
    """

    polynomial: Poly
    provenance: dict = field(default_factory=dict)
    keep_abelian: bool = True

    @property
    def domain(self):
        return self.polynomial.ring.domain

    def is_zero(self):
        return not self.polynomial

    def text(self):
        if self.is_zero():
            return "0"
        return format_poly(self.polynomial)

    def __str__(self):
        return self.text()

    def to_dict(self):
        return {
            "polynomial": self.text(),
            "domain": repr(self.domain),
            "keep_abelian": self.keep_abelian,
            "provenance": self.provenance,
        }


def _normalize(f, domain):
    """Canonical form over ZZ (char 0) or GF(p), in the ring ``(l, m)``."""
    out_dom = ZZ if domain in (ZZ, QQ) else domain
    ring = apoly_ring(out_dom)
    if not f:
        return ring.zero(), (0, 0)
    g = f.convert(apoly_ring(f.ring.domain))
    g, shift = g.strip_monomial()
    g = canonical(g)
    if g.ring.domain != out_dom:
        g = g.set_domain(out_dom)
    return g, shift


def _groebner_route(G, domain, budget):
    from .repvar import upper_triangular_ideal

    I = upper_triangular_ideal(G, domain)
    R = I.ring
    big = PolyRing(R.domain, ("t",) + R.names, R.laurent)
    gens = [g.convert(big) for g in I.cleared()]
    gens.append(big.gen("t") * big.gen("m") * big.gen("l") - 1)
    drop = ["t"] + [n for n in R.names if n not in ("m", "l")]
    E = eliminate(PolynomialIdeal(big, gens), drop, budget, units=("m", "l"), protect=("t",))
    info = {"route": "groebner", "groebner": E.stats}
    if E.is_zero():
        return E.ring.zero(), info
    g = poly_gcd_many(list(E.generators))
    residue = [exact_divide(e.convert(g.ring), g) for e in E.generators]
    if not any(r.is_constant() for r in residue):
        info["non_principal_residue"] = [format_poly(canonical(r)) for r in residue[:8]]
    return g, info


def _tower_route(G, domain, budget):
    from .tower import TowerBudget, resultant_tower

    tb = TowerBudget(timeout_sec=budget.timeout_sec) if budget else TowerBudget()
    res = resultant_tower(G, domain, tb)
    return res.polynomial, {"route": "tower", "tower": res.stats}


def a_polynomial(G, domain=QQ, keep_abelian=True, budget=None, route="auto"):
    """A-polynomial of a one-cusp presentation.

    ``domain`` is QQ or ZZ (the result is primitive over ZZ) or GF(p).
    ``route`` picks Groebner elimination, the resultant tower, or Groebner
    with the tower as fallback when the budget is exceeded.
    """
    if len(G.cusps) != 1:
        raise ApolyError(f"A-polynomials need exactly one cusp, got {len(G.cusps)}")
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")
    if not (domain in (ZZ, QQ) or isinstance(domain, PrimeField)):
        raise DomainError(f"unsupported domain {domain!r}")
    work = QQ if domain == ZZ else domain
    budget = budget or Budget()
    provenance = {}
    if route == "tower":
        f, info = _tower_route(G, work, budget)
    else:
        try:
            f, info = _groebner_route(G, work, budget)
        except BudgetExceeded as exc:
            if route == "groebner":
                raise
            provenance["groebner_failure"] = {"reason": str(exc), "stats": exc.stats}
            try:
                f, info = _tower_route(G, work, budget)
            except BudgetExceeded as exc2:
                raise BudgetExceeded(
                    f"both elimination routes failed: {exc}; {exc2}",
                    {"groebner": exc.stats, "tower": exc2.stats},
                ) from exc2
    provenance.update(info)
    poly, shift = _normalize(f, domain)
    if any(shift):
        provenance["stripped_monomial"] = format_poly(Poly(apoly_ring(ZZ), {tuple(shift): 1}))
    if not poly:
        provenance["note"] = "A = 0: no codimension-1 constraint"
        return APolynomial(poly, provenance, keep_abelian)
    if not keep_abelian:
        abelian = poly.ring.gen("l") - 1
        k = 0
        while not poly.is_constant() and divides(abelian, poly):
            poly = canonical(exact_divide(poly, abelian))
            k += 1
        provenance["dropped_factors"] = [f"(l - 1)^{k}"] if k else []
    return APolynomial(poly, provenance, keep_abelian)


def is_reduced(f):
    """True iff ``f`` has no repeated factor."""
    f = f.polynomial if isinstance(f, APolynomial) else f
    if not f:
        raise ValueError("is_reduced needs a nonzero polynomial")
    return associates(squarefree_part(f), f)


def same_up_to_symmetry(f, g):
    """Associates, possibly after ``(m, l) -> (1/m, 1/l)`` on one side."""
    f = f.polynomial if isinstance(f, APolynomial) else f
    g = g.polynomial if isinstance(g, APolynomial) else g
    if f.ring != g.ring:
        g = g.convert(f.ring)
    return associates(f, g) or associates(f, invert_variables(g))


def boundary_slopes_from_apoly(f):
    """Edge slopes of the Newton polygon of ``f`` (empty for constants)."""
    f = f.polynomial if isinstance(f, APolynomial) else f
    if not f:
        raise ValueError("the zero polynomial has no Newton polygon")
    return newton_slopes(f, "l", "m")


# -- comparison mod p ----------------------------------------------------------

EQUAL = "equal-up-to-unit"
EXTRA = "extra-factor"
BAD = "bad-prime"


@dataclass
class ModPComparisonReport:
    p: int
    reduced: Poly = None
    native: Poly = None
    verdict: str = BAD
    cofactor: Poly = None
    reason: str = ""

    def to_dict(self):
        d = {"p": self.p, "verdict": self.verdict}
        if self.reduced is not None:
            d["A0_mod_p"] = format_poly(self.reduced)
        if self.native is not None:
            d["Ap"] = format_poly(self.native)
        if self.cofactor is not None:
            d["g"] = format_poly(self.cofactor)
        if self.reason:
            d["reason"] = self.reason
        return d


def compare_mod_p(G, p, A0=None, keep_abelian=True, budget=None, route="auto"):
    """Compare ``A_0 mod p`` with the A-polynomial computed natively over GF(p)."""
    if A0 is None:
        A0 = a_polynomial(G, QQ, keep_abelian, budget, route)
    f0 = A0.polynomial if isinstance(A0, APolynomial) else A0
    if not f0:
        return ModPComparisonReport(p, reason="A_0 is zero")
    try:
        bar = reduce_mod_p(f0, p)
    except BadPrimeError as exc:
        return ModPComparisonReport(p, reason=exc.reason)
    if not bar:
        return ModPComparisonReport(p, reason="p divides every coefficient of A_0")
    bar = canonical(bar)
    Ap = a_polynomial(G, GF(p), keep_abelian, budget, route).polynomial
    if not Ap:
        return ModPComparisonReport(p, bar, Ap, BAD, reason="native A_p is zero")
    if associates(bar, Ap):
        return ModPComparisonReport(p, bar, Ap, EQUAL)
    if not divides(Ap, bar.strip_monomial()[0]):
        return ModPComparisonReport(p, bar, Ap, BAD, reason="A_p does not divide A_0 mod p")
    g = canonical(exact_divide(bar.strip_monomial()[0], Ap))
    # every irreducible factor of g must already divide A_p
    if not divides(squarefree_part(g), squarefree_part(Ap)):
        return ModPComparisonReport(p, bar, Ap, BAD, g, reason="cofactor has a factor not in A_p")
    return ModPComparisonReport(p, bar, Ap, EXTRA, g)


def mod_p_image(A0, p):
    """Canonical ``A_0 mod p`` (raises :class:`BadPrimeError` on a bad prime)."""
    f = A0.polynomial if isinstance(A0, APolynomial) else A0
    bar = reduce_mod_p(f, p)
    if not bar:
        raise BadPrimeError(p, "p divides every coefficient")
    return canonical(bar)


def eigenvalue_ideal(G, domain=QQ, budget=None):
    """Ideal of the eigenvalue variety in ``(m_1, l_1, ..., m_h, l_h)``.

    Eliminates the matrix entries from the trace system of every cusp,
    saturated by the product of all eigenvalue variables. Each cusp is
    triangularized in its own basis, so this is the right ideal for several
    cusps. Traces only see eigenvalues up to inversion, so for one cusp the
    zero set is the A-curve together with its image under ``(m, l) -> (1/m, 1/l)``.
    """
    from .repvar import eigenvalue_system

    work = QQ if domain == ZZ else domain
    I = eigenvalue_system(G, work)
    R = I.ring
    t = "t"
    while t in R.names:
        t += "_"
    big = PolyRing(R.domain, (t,) + R.names, R.laurent)
    prod = big.gen(t)
    for v in R.laurent:
        prod = prod * big.gen(v)
    gens = [g.convert(big) for g in I.cleared()] + [prod - 1]
    drop = [t] + [n for n in R.names if n not in R.laurent]
    return eliminate(PolynomialIdeal(big, gens), drop, budget or Budget(), units=R.laurent, protect=(t,))
