"""Acceptance suite: one pass/fail line per criterion.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

import io
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from apolytools import catalog
from apolytools.algebra import GF, QQ, ZZ, Poly, PolyRing, exact_divide, parse_poly
from apolytools.apoly import (
    EQUAL,
    EXTRA,
    a_polynomial,
    apoly_ring,
    boundary_slopes_from_apoly,
    compare_mod_p,
    is_reduced,
    mod_p_image,
    same_up_to_symmetry,
)
from apolytools.cli import CommandConfig, run
from apolytools.enumrep import cross_check, enumerate_homs
from apolytools.errors import BudgetExceeded
from apolytools.groebner import GREVLEX, Budget, PolynomialIdeal, buchberger, normal_form
from apolytools.newton import (
    SlopeSet,
    logarithmic_limit_probe,
    newton_polytope,
    polygon_slopes,
    slope_coordinates,
)
from apolytools.repvar import eigenvalue_system

HERE = Path(__file__).parent
RESULTS = {}

ZL = apoly_ring(ZZ)
TREFOIL = parse_poly("(l-1)*(l*m^6+1)", ZL)
FIG8_NONABELIAN = parse_poly("-m^4 + l*(1 - m^2 - 2*m^4 - m^6 + m^8) - l^2*m^4", ZL)
PRIMES = (3, 5, 7, 11)


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@lru_cache(maxsize=None)
def char0(name):
    """(A_0, seconds) on the default route."""
    t = time.perf_counter()
    A = a_polynomial(catalog.load(name))
    return A, time.perf_counter() - t


@lru_cache(maxsize=None)
def comparison(name, p):
    A0, _ = char0(name)
    t = time.perf_counter()
    rep = compare_mod_p(catalog.load(name), p, A0)
    return rep, time.perf_counter() - t


def contained(pairs, f):
    """All ``(m, l)`` pairs are zeros of ``f`` (a polynomial in ``(l, m)``)."""
    return all(f.evaluate((l, m)) == 0 for m, l in pairs)


def probe_slopes(f):
    """Slopes read off the member directions of the principal ideal <f>."""
    ring = PolyRing(f.ring.domain, ("m", "l"), laurent=("m", "l"))
    out = set()
    for r in logarithmic_limit_probe(PolynomialIdeal(ring, [f.convert(ring)])):
        if r.member:
            out.update(slope_coordinates(r.direction, 1).slopes())
    return SlopeSet(out)


# -- criteria -------------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    out = io.StringIO()
    code = run(CommandConfig("apoly", "catalog:unknot"), out, io.StringIO())
    dt = time.perf_counter() - t
    first = out.getvalue().splitlines()[0]
    A = a_polynomial(catalog.load("unknot"))
    ok = code == 0 and first == "A_0 = l - 1" and A.polynomial == parse_poly("l - 1", ZL) and dt < 1
    return record(1, ok, f"unknot: {first!r}, exit {code}, {dt:.2f}s (limit 1s)")


def criterion_2():
    G = catalog.load("trefoil")
    t = time.perf_counter()
    gb = a_polynomial(G, route="groebner").polynomial
    t_gb = time.perf_counter() - t
    t = time.perf_counter()
    tw = a_polynomial(G, route="tower").polynomial
    t_tw = time.perf_counter() - t
    routes = same_up_to_symmetry(gb, TREFOIL) and same_up_to_symmetry(tw, TREFOIL)
    points = {}
    for p in (5, 7):
        pairs = enumerate_homs(G, p).eigenvalue_pairs()
        Ap = a_polynomial(G, GF(p)).polynomial
        points[p] = (len(pairs), contained(pairs, Ap) and contained(pairs, mod_p_image(gb, p)))
    ok = routes and all(v[1] for v in points.values()) and t_gb + t_tw < 30
    pts = ", ".join(f"F_{p}: {n} pairs {'on' if c else 'OFF'} A" for p, (n, c) in points.items())
    return record(
        2, ok, f"trefoil groebner {t_gb:.1f}s + tower {t_tw:.1f}s (limit 30s); both = (l-1)(lm^6+1): {routes}; {pts}"
    )


def criterion_3():
    G = catalog.load("figure-eight")
    A, dt = char0("figure-eight")
    f = A.polynomial
    abelian = parse_poly("l - 1", ZL)
    nonab = exact_divide(f, abelian)
    factor_ok = same_up_to_symmetry(nonab, FIG8_NONABELIAN)
    tower = a_polynomial(G, route="tower").polynomial
    tower_ok = same_up_to_symmetry(tower, f)
    slopes = boundary_slopes_from_apoly(f)
    slope_ok = 4 in slopes or -4 in slopes
    points = {}
    for p in (3, 5):
        pairs = enumerate_homs(G, p).eigenvalue_pairs()
        points[p] = (len(pairs), contained(pairs, mod_p_image(f, p)))
    ok = factor_ok and tower_ok and slope_ok and all(c for _, c in points.values()) and dt < 300
    pts = ", ".join(f"F_{p}: {n} pairs {'on' if c else 'OFF'} A" for p, (n, c) in points.items())
    return record(
        3,
        ok,
        f"figure-eight {dt:.1f}s (limit 300s); nonabelian factor matches: {factor_ok}; tower agrees: {tower_ok}; "
        f"slopes {slopes}; {pts}",
    )


def criterion_4():
    total = 0.0
    rows = []
    ok = True
    for name in ("trefoil", "figure-eight"):
        total += char0(name)[1]
        for p in PRIMES:
            rep, dt = comparison(name, p)
            total += dt
            rows.append(f"{name}/{p}={rep.verdict}")
            if rep.verdict == EXTRA:
                continue
            if rep.verdict != EQUAL and rep.reduced is not None:
                # a prime where A_0 reduces fine but the verdicts disagree is a real failure
                ok = False
    ok = ok and total < 600
    return record(4, ok, f"{'; '.join(rows)}; {total:.0f}s (limit 600s)")


def criterion_5():
    rows = []
    ok = True
    for name in ("trefoil", "figure-eight"):
        A0, _ = char0(name)
        r0 = is_reduced(A0)
        good = [p for p in PRIMES if comparison(name, p)[0].reduced is not None]
        rp = [is_reduced(comparison(name, p)[0].reduced) for p in good]
        ok = ok and r0 and all(rp)
        rows.append(f"{name}: A_0 reduced {r0}, mod p reduced at {good}: {all(rp)}")
    return record(5, ok, "; ".join(rows))


def criterion_6():
    rows = []
    ok = True
    for name in ("unknot", "trefoil", "figure-eight", "torus"):
        for p in (3, 5):
            if name in ("trefoil", "figure-eight"):
                Ap = comparison(name, p)[0].native
            else:
                Ap = a_polynomial(catalog.load(name), GF(p)).polynomial
            if not Ap:
                rows.append(f"{name}/{p}: A_p = 0, no polygon")
                continue
            a, b = polygon_slopes(newton_polytope(Ap)), probe_slopes(Ap)
            ok = ok and a == b
            rows.append(f"{name}/{p}: {a} vs {b}")
    return record(6, ok, "; ".join(rows))


def criterion_7():
    rows = []
    for name in ("trefoil", "figure-eight"):
        s0 = boundary_slopes_from_apoly(char0(name)[0])
        diffs = []
        for p in (3, 5, 7):
            Ap = comparison(name, p)[0].native
            sp = boundary_slopes_from_apoly(Ap) if Ap else None
            if sp != s0:
                diffs.append(f"p={p}: {sp}")
        rows.append(f"{name}: char 0 {s0}; " + (", ".join(diffs) if diffs else "p = 3, 5, 7 agree"))
    # an observation: disagreements are reported, not failed
    return record(7, True, "observation; " + "; ".join(rows))


def criterion_8():
    failed = []
    for name in catalog.names():
        for p in (2, 3):
            if not cross_check(catalog.load(name), p).passed:
                failed.append(f"{name}/{p}")
    counts = (
        enumerate_homs(catalog.load("trefoil"), 2).count,
        enumerate_homs(catalog.load("unknot"), 2).count,
        enumerate_homs(catalog.load("cyclic2"), 3).count,
    )
    ok = not failed and counts == (12, 6, 2)
    return record(8, ok, f"cross_check failures {failed or 'none'}; counts trefoil/2, Z/2, C2/3 = {counts}")


def criterion_9():
    ring = PolyRing(QQ, ("m", "l"), laurent=("m", "l"))
    I = PolynomialIdeal(ring, [parse_poly("l*m^6 + 1", ring)])
    tied = [r.direction for r in logarithmic_limit_probe(I) if r.member]
    slopes = {s for z in tied for s in slope_coordinates(z, 1).slopes()}
    rnd = random.Random(20)
    bad = 0
    for _ in range(1000):
        h = rnd.randint(1, 3)
        v = [rnd.randint(-20, 20) for _ in range(2 * h)]
        if not any(v):
            v[0] = 1
        base = slope_coordinates(v, h)
        c = Fraction(rnd.randint(1, 50), rnd.randint(1, 50))
        flips = [rnd.choice((1, -1)) for _ in range(h)]
        if slope_coordinates([x * c * flips[i // 2] for i, x in enumerate(v)], h) != base:
            bad += 1
    ok = bool(tied) and slopes == {6} and bad == 0
    return record(9, ok, f"tied directions {[z.vector for z in tied]} give slopes {SlopeSet(slopes)}; 1000 random vectors, {bad} failures")


def _inverted(g, cusp, ring):
    """``g`` with ``(m_i, l_i) -> (1/m_i, 1/l_i)`` for one cusp, denominators cleared."""
    idx = [ring.index(f"m{cusp}"), ring.index(f"l{cusp}")]
    terms = {}
    for e, c in g.terms.items():
        e = list(e)
        for i in idx:
            e[i] = -e[i]
        terms[tuple(e)] = c
    shift = [0] * ring.nvars
    for i in idx:
        shift[i] = -min(e[i] for e in terms)
    return Poly(ring, {tuple(a + b for a, b in zip(e, shift)): c for e, c in terms.items()})


def _symmetry(name, timeout):
    G = catalog.load(name)
    I = eigenvalue_system(G, QQ)
    R = I.ring
    gens = I.cleared()
    try:
        GB = buchberger(PolynomialIdeal(R, gens), GREVLEX, Budget(timeout_sec=timeout))
    except BudgetExceeded:
        return None
    return all(not normal_form(_inverted(g, i + 1, R), GB) for g in gens for i in range(len(G.cusps)))


def criterion_10():
    hopf = _symmetry("hopf", 300)
    white = _symmetry("whitehead", 60)
    ok = hopf is True and white is not False
    w = "skipped: Groebner budget of 60s exceeded" if white is None else str(white)
    return record(10, ok, f"2-cusp synthetic (hopf) closed under per-cusp inversion: {hopf}; whitehead: {w}")


PROPERTY_TESTS = [
    "test_algebra.py::test_reduction_is_homomorphism",
    "test_newton.py::test_newton_of_product_is_minkowski_sum",
    "test_newton.py::test_newton_of_product_mod_p",
    "test_groebner.py::test_buchberger_criterion_holds",
    "test_groebner.py::test_elimination_resultant_coherence",
    "test_groebner.py::test_elimination_and_resultant_vanish_on_projected_points",
]


def criterion_11():
    t = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *[str(HERE / x) for x in PROPERTY_TESTS]],
        capture_output=True,
        text=True,
        cwd=HERE.parent,
    )
    dt = time.perf_counter() - t
    tail = res.stdout.strip().splitlines()[-1] if res.stdout.strip() else res.stderr[-200:]
    ok = res.returncode == 0 and dt < 120
    return record(11, ok, f"{len(PROPERTY_TESTS)} property suites (>= 100 cases each): {tail}; {dt:.1f}s (limit 120s)")


CRITERIA = [globals()[f"criterion_{n}"] for n in range(1, 12)]


@pytest.mark.parametrize("n", range(1, 12), ids=lambda n: f"criterion_{n:02d}")
def test_acceptance(n):
    assert CRITERIA[n - 1](), RESULTS.get(n)


if __name__ == "__main__":
    fails = sum(not c() for c in CRITERIA)
    sys.exit(1 if fails else 0)
