"""Finitely presented groups with peripheral (cusp) structure.

File format, one item per line::

    # trefoil as a torus knot group
    generators: x y
    relator: xxYYY
    cusp: meridian=Yx longitude=xxXyXyXyXyXyXy

In words a lowercase letter is a generator and the uppercase letter its
inverse. Generators with longer names are written ``[name]`` and inverted
as ``[name]^-1``. An empty word is the identity.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import PresentationError


class Word(tuple):
    """Sequence of nonzero ints: ``k+1`` is generator ``k``, ``-(k+1)`` its inverse."""

    def __new__(cls, letters=()):
        letters = tuple(int(x) for x in letters)
        if any(x == 0 for x in letters):
            raise ValueError("letter 0 is not allowed")
        return super().__new__(cls, letters)

    def inverse(self):
        return Word(-x for x in reversed(self))

    def __mul__(self, other):
        return Word(tuple(self) + tuple(other))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Word(tuple(self) * n)

    def reduced(self):
        return free_reduce(self)

    def __repr__(self):
        return f"Word({list(self)})"


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(out)


@dataclass(frozen=True)
class Cusp:
    meridian: Word
    longitude: Word
    name: str = ""


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()
    cusps: tuple = ()

    def __post_init__(self):
        if not self.generators:
            raise PresentationError("a presentation needs at least one generator")
        n = len(self.generators)
        words = list(self.relators) + [w for c in self.cusps for w in (c.meridian, c.longitude)]
        for w in words:
            if any(abs(x) > n for x in w):
                raise PresentationError(f"word {list(w)} uses a generator index out of range")

    @property
    def ngens(self):
        return len(self.generators)

    def word(self, text):
        """Parse a word in this presentation's generators."""
        return parse_word(text, self.generators)

    def format_word(self, w):
        return format_word(w, self.generators)


_BRACKET = re.compile(r"\[([A-Za-z_][A-Za-z0-9_]*)\](\^-1)?")


def parse_word(text, generators, line=None, column=1):
    index = {g: i + 1 for i, g in enumerate(generators)}
    out = []
    i = 0
    column += len(text) - len(text.lstrip())
    text = text.strip()
    while i < len(text):
        ch = text[i]
        if ch == "[":
            m = _BRACKET.match(text, i)
            if not m:
                raise PresentationError("malformed bracketed generator", line, column + i)
            name = m.group(1)
            if name not in index:
                raise PresentationError(f"unknown generator {name!r}", line, column + i)
            out.append(-index[name] if m.group(2) else index[name])
            i = m.end()
        elif ch.isalpha():
            low = ch.lower()
            if low not in index:
                raise PresentationError(f"unknown generator {low!r}", line, column + i)
            out.append(index[low] if ch.islower() else -index[low])
            i += 1
        elif ch in " \t":
            i += 1
        elif ch == "1" and len(text) == 1:
            i += 1
        else:
            raise PresentationError(f"unexpected character {ch!r} in word", line, column + i)
    return free_reduce(out)


def format_word(w, generators):
    parts = []
    for x in w:
        g = generators[abs(x) - 1]
        if len(g) == 1 and g.islower():
            parts.append(g if x > 0 else g.upper())
        else:
            parts.append(f"[{g}]" + ("" if x > 0 else "^-1"))
    return "".join(parts)


def _check_generator_name(name, line, col):
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise PresentationError(f"invalid generator name {name!r}", line, col)
    if len(name) == 1 and not name.islower():
        raise PresentationError(f"single-letter generator {name!r} must be lowercase", line, col)


def parse_presentation(text):
    generators = None
    relators = []
    cusps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise PresentationError("expected 'keyword: value'", lineno, 1)
        key, _, value = line.partition(":")
        vcol = len(key) + 2
        key = key.strip()
        if key == "generators":
            if generators is not None:
                raise PresentationError("generators declared twice", lineno, 1)
            names = value.split()
            if not names:
                raise PresentationError("no generators listed", lineno, vcol)
            for name in names:
                _check_generator_name(name, lineno, vcol + value.find(name))
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", lineno, vcol)
            generators = tuple(names)
        elif key == "relator":
            if generators is None:
                raise PresentationError("relator before generators line", lineno, 1)
            relators.append(parse_word(value, generators, lineno, vcol))
        elif key == "cusp":
            if generators is None:
                raise PresentationError("cusp before generators line", lineno, 1)
            fields = {}
            for m in re.finditer(r"(\w+)=(\S*)", value):
                fields[m.group(1)] = (m.group(2), vcol + m.start(2))
            rest = re.sub(r"\w+=\S*", "", value).strip()
            if rest:
                raise PresentationError(f"unexpected text {rest!r} in cusp line", lineno, vcol)
            unknown = set(fields) - {"meridian", "longitude", "name"}
            if unknown or "meridian" not in fields or "longitude" not in fields:
                raise PresentationError("cusp needs meridian= and longitude=", lineno, vcol)
            mer = parse_word(fields["meridian"][0], generators, lineno, fields["meridian"][1])
            lon = parse_word(fields["longitude"][0], generators, lineno, fields["longitude"][1])
            name = fields.get("name", ("",))[0]
            for c in cusps:
                if (name and c.name == name) or (c.meridian, c.longitude) == (mer, lon):
                    raise PresentationError("duplicate cusp label", lineno, 1)
            cusps.append(Cusp(mer, lon, name))
        else:
            raise PresentationError(f"unknown keyword {key!r}", lineno, 1)
    if generators is None:
        raise PresentationError("missing generators line")
    return GroupPresentation(generators, tuple(relators), tuple(cusps))


def format_presentation(G):
    lines = ["generators: " + " ".join(G.generators)]
    for r in G.relators:
        lines.append("relator: " + G.format_word(r))
    for c in G.cusps:
        s = f"cusp: meridian={G.format_word(c.meridian)} longitude={G.format_word(c.longitude)}"
        if c.name:
            s += f" name={c.name}"
        lines.append(s)
    return "\n".join(lines) + "\n"


def abelianization_image(w, G):
    """Exponent-sum vector of ``w`` over the generators of ``G``."""
    v = [0] * G.ngens
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def _rational_kernel(rows, n):
    """Integer basis of {phi : phi . r = 0 for all rows} (primitive vectors)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        iv = [int(x * den) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, x)
        basis.append(tuple(x // g for x in iv))
    return basis


def abelianization_maps(G):
    """Integer vectors spanning Hom(H_1(G), Z) (homomorphisms to Z)."""
    rows = [abelianization_image(r, G) for r in G.relators]
    return _rational_kernel(rows, G.ngens)


@dataclass
class PeripheralReport:
    passed: bool
    prime: int
    checks: list = field(default_factory=list)
    witness: dict = None
    note: str = (
        "necessary-condition battery only: commutation in every enumerated "
        "SL(2,F_p) representation plus homological checks; no word problem is solved"
    )

    def to_dict(self):
        return {
            "passed": self.passed,
            "prime": self.prime,
            "checks": self.checks,
            "witness": self.witness,
            "note": self.note,
        }


def validate_peripheral(G, p=2, budget=None):
    """Check every cusp's meridian and longitude commute in all reps into SL(2,F_p).

    For a single-cusp presentation whose abelianization has rank one (a
    knot group) also checks that the longitude is null-homologous and the
    meridian generates H_1 modulo torsion.
    """
    from .enumrep import enumerate_homs, evaluate_word, mat_mul

    if p not in (2, 3, 5, 7):
        raise ValueError("validation primes are limited to 2, 3, 5, 7")
    checks = []
    witness = None
    report = enumerate_homs(G, p, cap=0, budget=budget)
    ok = True
    if G.cusps:
        bad = None
        for rep in report.iter_all():
            for ci, c in enumerate(G.cusps):
                M = evaluate_word(c.meridian, rep.matrices, p)
                L = evaluate_word(c.longitude, rep.matrices, p)
                if mat_mul(M, L, p) != mat_mul(L, M, p):
                    bad = (ci, rep)
                    break
            if bad:
                break
        checks.append({"check": "meridian-longitude commute", "passed": bad is None, "representations": report.count})
        if bad:
            ok = False
            witness = {"cusp": bad[0], "matrices": [list(m) for m in bad[1].matrices]}
    maps = abelianization_maps(G)
    if len(G.cusps) == 1 and len(maps) == 1:
        (phi,) = maps
        c = G.cusps[0]
        lam = sum(a * b for a, b in zip(phi, abelianization_image(c.longitude, G)))
        mu = sum(a * b for a, b in zip(phi, abelianization_image(c.meridian, G)))
        checks.append({"check": "longitude null-homologous", "passed": lam == 0})
        checks.append({"check": "meridian generates H1 mod torsion", "passed": abs(mu) == 1})
        ok = ok and lam == 0 and abs(mu) == 1
    return PeripheralReport(ok, p, checks, witness)
