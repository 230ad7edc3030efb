import pytest

from apolytools import catalog
from apolytools.algebra import GF, QQ, ZZ, invert_variables, parse_poly
from apolytools.apoly import (
    BAD,
    EQUAL,
    EXTRA,
    a_polynomial,
    apoly_ring,
    boundary_slopes_from_apoly,
    compare_mod_p,
    eigenvalue_ideal,
    is_reduced,
    mod_p_image,
    same_up_to_symmetry,
)
from apolytools.enumrep import enumerate_homs, ideal_points_exhaustive
from apolytools.errors import ApolyError, BadPrimeError
from apolytools.newton import SlopeSet
from apolytools.presentations import parse_presentation

LMZ = apoly_ring(ZZ)
P = lambda s, R=LMZ: parse_poly(s, R)  # noqa: E731

TREFOIL = "(l-1)*(l*m^6+1)"


@pytest.fixture(scope="module")
def trefoil():
    return a_polynomial(catalog.load("trefoil"))


def test_unknot():
    A = a_polynomial(catalog.load("unknot"))
    assert A.text() == "l - 1"
    assert A.domain == ZZ
    assert A.provenance["route"] == "groebner"


def test_trefoil_canonical(trefoil):
    assert trefoil.polynomial == P(TREFOIL)
    assert trefoil.text() == "l^2*m^6 - l*m^6 + l - 1"


def test_torus_is_zero():
    A = a_polynomial(catalog.load("torus"))
    assert A.is_zero() and A.text() == "0"
    assert "no codimension-1" in A.provenance["note"]


def test_drop_abelian(trefoil):
    A = a_polynomial(catalog.load("trefoil"), keep_abelian=False)
    assert A.polynomial == P("l*m^6 + 1")
    assert A.provenance["dropped_factors"] == ["(l - 1)^1"]
    U = a_polynomial(catalog.load("unknot"), keep_abelian=False)
    assert U.polynomial == LMZ.one()


def test_one_cusp_required():
    with pytest.raises(ApolyError):
        a_polynomial(catalog.load("hopf"))
    with pytest.raises(ApolyError):
        a_polynomial(catalog.load("cyclic2"))


def test_bad_route():
    with pytest.raises(ValueError):
        a_polynomial(catalog.load("unknot"), route="magic")


def test_trefoil_over_gf5():
    A = a_polynomial(catalog.load("trefoil"), GF(5))
    assert A.polynomial == mod_p_image(P(TREFOIL), 5)


def test_monomial_relabel_is_stripped():
    # meridian and longitude equal: every pair has l = m or l = 1/m
    G = parse_presentation("generators: a\ncusp: meridian=a longitude=a")
    A = a_polynomial(G)
    assert A.polynomial == P("l - m")


# -- reducedness and symmetry ------------------------------------------------------------


def test_is_reduced_examples(trefoil):
    assert is_reduced(trefoil)
    assert not is_reduced(P("(l-1)^2*(l*m^6+1)"))
    assert is_reduced(P("l - 1"))
    with pytest.raises(ValueError):
        is_reduced(LMZ.zero())


def test_mod_p_images_reduced(trefoil):
    for p in (3, 5, 7, 11):
        assert is_reduced(mod_p_image(trefoil, p))


def test_inversion_symmetry(trefoil):
    f = trefoil.polynomial
    assert same_up_to_symmetry(f, invert_variables(f))
    assert same_up_to_symmetry(f, -f.mul_monomial((3, -2)))
    assert not same_up_to_symmetry(f, P("(l-1)*(l*m^6-1)"))


# -- slopes ---------------------------------------------------------------------------------


def test_boundary_slope_examples(trefoil):
    assert boundary_slopes_from_apoly(trefoil) == SlopeSet([0, 6])
    assert boundary_slopes_from_apoly(P("5")) == SlopeSet()
    assert boundary_slopes_from_apoly(P("l - 1")) == SlopeSet([0])
    with pytest.raises(ValueError):
        boundary_slopes_from_apoly(LMZ.zero())


# -- comparison mod p -----------------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 7])
def test_compare_trefoil(trefoil, p):
    rep = compare_mod_p(catalog.load("trefoil"), p, trefoil)
    assert rep.verdict == EQUAL
    assert rep.to_dict()["Ap"] == rep.to_dict()["A0_mod_p"]


def test_compare_unknot_mod_2():
    assert compare_mod_p(catalog.load("unknot"), 2).verdict == EQUAL


def test_compare_reports_bad_prime():
    G = catalog.load("unknot")
    assert compare_mod_p(G, 2, P("2*l - 2")).verdict == BAD
    rep = compare_mod_p(G, 3, parse_poly("l/3 - 1", apoly_ring(QQ)))
    assert rep.verdict == BAD and "3" in rep.reason


def test_compare_extra_factor():
    # pretend A_0 carried a squared abelian factor: the cofactor divides A_p
    G = catalog.load("trefoil")
    rep = compare_mod_p(G, 5, P("(l-1)^2*(l*m^6+1)"))
    assert rep.verdict == EXTRA
    assert rep.cofactor == mod_p_image(P("l - 1"), 5)


def test_compare_foreign_factor_is_bad():
    rep = compare_mod_p(catalog.load("trefoil"), 5, P("(l-1)*(l*m^6+1)*(m+2)"))
    assert rep.verdict == BAD


def test_mod_p_image_bad_prime():
    with pytest.raises(BadPrimeError):
        mod_p_image(parse_poly("l/5 + 1", apoly_ring(QQ)), 5)


# -- point containment -------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["unknot", "trefoil"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_upper_triangular_points_lie_on_a_p(name, p):
    G = catalog.load(name)
    Ap = a_polynomial(G, GF(p)).polynomial
    pairs = enumerate_homs(G, p).eigenvalue_pairs()
    assert pairs
    for m, l in pairs:
        assert Ap.evaluate((l, m)) == 0, (m, l)


# -- several cusps -------------------------------------------------------------------------------


def test_hopf_eigenvalue_ideal_points():
    """Every Z^2 pair (A, B) gives (m1, l1, m2, l2) = (a, b, b, a) up to inverting a cusp."""
    E = eigenvalue_ideal(catalog.load("hopf"), GF(5))
    pts = set(ideal_points_exhaustive(E, 5))
    for a in range(1, 5):
        for b in range(1, 5):
            assert (a, b, b, a) in pts
    for m1, l1, m2, l2 in pts:
        assert m2 in (l1, pow(l1, -1, 5)) and l2 in (m1, pow(m1, -1, 5))
