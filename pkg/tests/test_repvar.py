import random

import pytest

from apolytools import catalog
from apolytools.algebra import GF, QQ
from apolytools.enumrep import SL2, enumerate_homs, evaluate_word, ideal_points_exhaustive
from apolytools.errors import ApolyError
from apolytools.groebner import GREVLEX, PolynomialIdeal, buchberger, eliminate, normal_form
from apolytools.presentations import Word, parse_presentation
from apolytools.repvar import (
    RepRing,
    determinant_relations,
    eigenvalue_system,
    rep_ideal,
    trace_polynomial,
    upper_triangular_ideal,
    word_matrix,
)


def test_word_matrices():
    G = parse_presentation("generators: a")
    R = RepRing(G, QQ)
    a, b, c, d = (R.var(n) for n in ("a1", "b1", "c1", "d1"))
    assert word_matrix(Word([1]), R) == ((a, b), (c, d))
    assert word_matrix(Word([-1]), R) == ((d, -b), (-c, a))
    M = word_matrix(Word([1, -1]), R)
    G_det = buchberger(PolynomialIdeal(R.ring, determinant_relations(R.ring, 1)), GREVLEX)
    assert normal_form(M[0][0] - 1, G_det) == R.ring.zero()
    assert not M[0][1] and not M[1][0]
    assert word_matrix(Word(), R) == R.identity()


def test_trace_polynomial_examples():
    G = parse_presentation("generators: a b")
    R = RepRing(G, QQ)
    assert trace_polynomial(Word([1]), R) == R.var("a1") + R.var("d1")
    assert trace_polynomial(Word(), R) == R.ring.constant(2)


def _det_basis(R, n):
    return buchberger(PolynomialIdeal(R.ring, determinant_relations(R.ring, n)), GREVLEX)


def test_trace_cyclic_and_conjugation_invariant():
    G = parse_presentation("generators: a b")
    R = RepRing(G, QQ)
    GB = _det_basis(R, 2)
    rnd = random.Random(3)
    for _ in range(15):
        u = Word(rnd.choice([1, -1, 2, -2]) for _ in range(rnd.randint(1, 3)))
        v = Word(rnd.choice([1, -1, 2, -2]) for _ in range(rnd.randint(1, 3)))
        g = Word(rnd.choice([1, -1, 2, -2]) for _ in range(rnd.randint(1, 2)))
        assert not normal_form(trace_polynomial(u * v, R) - trace_polynomial(v * u, R), GB)
        conj = g * u * g.inverse()
        assert not normal_form(trace_polynomial(conj, R) - trace_polynomial(u, R), GB)


def test_rep_ideal_point_counts():
    cyclic = catalog.load("cyclic2")
    assert len(ideal_points_exhaustive(rep_ideal(cyclic, GF(3)), 3)) == 2
    assert len(ideal_points_exhaustive(rep_ideal(catalog.load("unknot"), GF(2)), 2)) == 6
    assert len(ideal_points_exhaustive(rep_ideal(catalog.load("trefoil"), GF(2)), 2)) == 12


def test_rep_ideal_generators():
    I = rep_ideal(catalog.load("unknot"), QQ)
    assert [str(g) for g in I.generators] == ["a1*d1 - b1*c1 - 1"]


def test_upper_triangular_unknot_and_torus():
    def eliminant(name):
        I = upper_triangular_ideal(catalog.load(name), QQ)
        keep = ("m", "l")
        drop = [n for n in I.ring.names if n not in keep]
        from apolytools.groebner import saturate_by_variable

        return eliminate(saturate_by_variable(I, ["m", "l"]), drop)

    E = eliminant("unknot")
    assert [str(g) for g in E.generators] == ["l - 1"]
    assert eliminant("torus").is_zero()


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure-eight", "torus", "hopf", "whitehead"])
def test_trivial_representation_satisfies_ideals(name):
    G = catalog.load(name)
    for I in (upper_triangular_ideal(G, QQ), eigenvalue_system(G, QQ)):
        point = []
        for n in I.ring.names:
            point.append(1 if n[0] in "adml" else 0)
        assert all(g.evaluate(point) == 0 for g in I.generators)


def test_no_cusps_is_an_error():
    with pytest.raises(ApolyError):
        upper_triangular_ideal(catalog.load("cyclic2"), QQ)
    with pytest.raises(ApolyError):
        eigenvalue_system(catalog.load("cyclic2"), QQ)


def test_eigenvalue_system_equal_words():
    G = parse_presentation("generators: a\ncusp: meridian=a longitude=a")
    pts = ideal_points_exhaustive(eigenvalue_system(G, GF(5)), 5)
    assert pts
    names = eigenvalue_system(G, GF(5)).ring.names
    im, il = names.index("m"), names.index("l")
    for pt in pts:
        m, l = pt[im], pt[il]
        assert m == l or (m * l) % 5 == 1


@pytest.mark.parametrize("name,p", [("trefoil", 2), ("trefoil", 3), ("figure-eight", 2), ("figure-eight", 3), ("unknot", 3)])
def test_upper_triangular_generators_vanish_on_enumerated_reps(name, p):
    """Every representation with upper-triangular peripheral images is a point of R_U."""
    G = catalog.load(name)
    I = upper_triangular_ideal(G, GF(p))
    names = I.ring.names
    c = G.cusps[0]
    found = 0
    for rep in enumerate_homs(G, p).iter_all():
        M = evaluate_word(c.meridian, rep.matrices, p)
        L = evaluate_word(c.longitude, rep.matrices, p)
        if M[2] or L[2]:
            continue
        found += 1
        vals = dict(zip([f"{x}{k + 1}" for k in range(G.ngens) for x in "abcd"], [x for m in rep.matrices for x in m]))
        vals["m"], vals["l"] = M[0], L[0]
        point = [vals[n] for n in names]
        assert all(g.evaluate(point) == 0 for g in I.generators)
    assert found > 0


def test_rep_ideal_points_are_homomorphisms():
    G = catalog.load("trefoil")
    pts = set(ideal_points_exhaustive(rep_ideal(G, GF(3)), 3))
    homs = {tuple(x for m in r.matrices for x in m) for r in enumerate_homs(G, 3).iter_all()}
    assert pts == homs
    assert all(tuple(p[:4]) in SL2(3) for p in pts)
