"""Shared strategies and independent oracles for the test suite."""

import sys
from fractions import Fraction
from pathlib import Path

import sympy
from hypothesis import strategies as st

from apolytools.algebra import QQ, Poly, PolyRing

sys.path.insert(0, str(Path(__file__).parent))

LM = ("l", "m")


def ring(domain=QQ, names=LM, laurent=()):
    return PolyRing(domain, names, laurent=laurent)


@st.composite
def polys(draw, R, max_terms=4, max_deg=3, min_deg=0, coeff=5, nonzero=False):
    """Random sparse polynomial over ``R`` with small coefficients."""
    n = R.nvars
    exps = st.tuples(*[st.integers(min_deg, max_deg)] * n)
    terms = draw(st.dictionaries(exps, st.integers(-coeff, coeff), min_size=1 if nonzero else 0, max_size=max_terms))
    f = Poly(R, terms)
    if nonzero and not f:
        f = R.one()
    return f


# -- sympy oracle --------------------------------------------------------------


def to_sympy(f):
    syms = sympy.symbols(f.ring.names)
    expr = 0
    for e, c in f.terms.items():
        t = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, k in zip(syms, e):
            t *= s**k
        expr += t
    return expr, syms


def sympy_poly(f, modulus=None):
    expr, syms = to_sympy(f)
    if modulus:
        return sympy.Poly(expr, *syms, modulus=modulus)
    return sympy.Poly(expr, *syms, domain="QQ")


def from_sympy(P, R):
    """Poly over ``R`` from a sympy Poly in the same variable order."""
    dom = R.domain
    out = {}
    for e, c in P.terms():
        c = int(c) % dom.p if hasattr(dom, "p") else Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
        out[tuple(e)] = c
    return Poly(R, out)


def fp_points(polys, p, laurent=True):
    """All F_p points (nonzero coordinates if ``laurent``) where all polys vanish."""
    import itertools

    R = polys[0].ring
    vals = range(1, p) if laurent else range(p)
    return [pt for pt in itertools.product(vals, repeat=R.nvars) if all(f.evaluate(pt) % p == 0 for f in polys)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
