"""Shipped presentations, addressable on the command line as ``catalog:<name>``.

Peripheral words follow the usual knot-theoretic conventions: the meridian
generates H_1 and the longitude is null-homologous. Slope signs depend on
the longitude orientation; ``slope_sign`` records the convention under
which each entry's known slopes are listed.
"""

from dataclasses import dataclass, field

from .presentations import parse_presentation

_SOURCES = {
    "unknot": """\
# complement of the unknot: the infinite cyclic group
generators: a
cusp: meridian=a longitude=
""",
    "trefoil": """\
# torus knot T(2,3): x^2 = y^3, meridian y^-1 x, longitude x^2 mu^-6
generators: x y
relator: xxYYY
cusp: meridian=Yx longitude=xxXyXyXyXyXyXy
""",
    "figure-eight": """\
# two-bridge knot 5/2: w a = b w with w = a^-1 b a b^-1
generators: a b
relator: AbaBabABaB
cusp: meridian=a longitude=BabAAbaB
""",
    "whitehead": """\
# two-bridge link 8/3: a w = w a with w = b a b^-1 a^-1 b^-1 a b
generators: a b
relator: abaBABabABAbabAB
cusp: meridian=a longitude=baBABabA name=a
cusp: meridian=b longitude=abABAbaB name=b
""",
    "torus": """\
# Z^2 = fundamental group of the boundary torus itself (toy example)
generators: a b
relator: abAB
cusp: meridian=a longitude=b
""",
    "hopf": """\
# Hopf link complement: Z^2 with the two cusps swapping roles
generators: a b
relator: abAB
cusp: meridian=a longitude=b name=first
cusp: meridian=b longitude=a name=second
""",
    "cyclic2": """\
# cyclic group of order 2, no peripheral structure
generators: a
relator: aa
""",
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: object
    notes: str
    slopes: frozenset = field(default=frozenset())
    slope_sign: str = ""


_NOTES = {
    "unknot": ("Z; the longitude is trivial, so l = 1 on every representation", {"0"}, ""),
    "trefoil": (
        "A-polynomial (l-1)(l m^6 + 1); Seifert surface slope 0 and cabling annulus slope 6",
        {"0", "6"},
        "positive: longitude x^2 mu^-6 with mu = y^-1 x",
    ),
    "figure-eight": (
        "nonabelian factor -m^4 + l(1 - m^2 - 2m^4 - m^6 + m^8) - l^2 m^4; slopes 0, 4, -4",
        {"0", "4", "-4"},
        "symmetric: the knot is amphichiral",
    ),
    "whitehead": ("two cusps; used for eigenvalue-variety symmetry checks", set(), ""),
    "torus": ("Z^2; every (m, l) occurs, so the A-polynomial is zero", set(), ""),
    "hopf": ("two cusps, m1 and l2 (and l1 and m2) are eigenvalues of one matrix", set(), ""),
    "cyclic2": ("finite group, used for enumeration counts", set(), ""),
}


def names():
    return sorted(_SOURCES)


def source(name):
    try:
        return _SOURCES[name]
    except KeyError:
        raise KeyError(f"no catalog entry {name!r}; available: {', '.join(names())}") from None


def entry(name):
    text = source(name)
    notes, slopes, sign = _NOTES[name]
    return CatalogEntry(name, parse_presentation(text), notes, frozenset(slopes), sign)


def load(name):
    return entry(name).presentation
