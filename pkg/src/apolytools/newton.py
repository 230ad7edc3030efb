"""Newton polytopes, edge slopes, tropical membership and slope coordinates.

Exponent vectors are read in the variable order of the polynomial's ring.
For an A-polynomial in the ring ``(l, m)`` that is ``(l-exp, m-exp)``, and an
edge with primitive direction ``(q, p)`` there has slope ``p/q`` (``inf``
for a vertical edge, ``q = 0``).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import ApolyError, BudgetExceeded

INF = float("inf")


# -- slopes ------------------------------------------------------------------


def make_slope(p, q):
    """Reduced slope ``p/q``; ``q = 0`` gives ``INF``."""
    if q == 0:
        if p == 0:
            raise ValueError("0/0 is not a slope")
        return INF
    return Fraction(p, q)


def format_slope(s):
    if s == INF:
        return "inf"
    return str(s)


def parse_slope(text):
    text = text.strip()
    if text in ("inf", "oo", "∞", "1/0", "-1/0"):
        return INF
    return Fraction(text)


class SlopeSet(frozenset):
    """Deduplicated set of slopes (``Fraction`` values and ``INF``)."""

    def __new__(cls, items=()):
        return super().__new__(cls, (s if s == INF else Fraction(s) for s in items))

    def sorted(self):
        return sorted(self)

    def negated(self):
        return SlopeSet(s if s == INF else -s for s in self)

    def to_list(self):
        return [format_slope(s) for s in self.sorted()]

    def __repr__(self):
        return "{" + ", ".join(self.to_list()) + "}"

    __str__ = __repr__


# -- convex hulls -------------------------------------------------------------


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Vertices counterclockwise from the lexicographically smallest point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def _affine_pivots(points):
    """Coordinates on which the points are affinely independent, and the basis rows."""
    base = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    n = len(base)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


def _integer_vector(v):
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
    iv = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, iv, 0)
    return tuple(x // g for x in iv) if g else tuple(iv)


def _nullspace(rows, n):
    """Integer basis of the vectors orthogonal to every row."""
    pivots, red = _affine_pivots([tuple([0] * n)] + [tuple(r) for r in rows]) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        out.append(_integer_vector(v))
    return out


def _hull_nd(points):
    """Vertices and exact outer facet normals of a full-dimensional point set."""
    from scipy.spatial import ConvexHull

    hull = ConvexHull([list(map(float, p)) for p in points])
    n = len(points[0])
    normals = set()
    verts = set()
    for eq in hull.equations:
        on = [p for p in points if abs(sum(a * float(b) for a, b in zip(eq[:-1], p)) + eq[-1]) < 1e-7]
        diffs = [[a - b for a, b in zip(p, on[0])] for p in on[1:]]
        ns = _nullspace(diffs, n)
        if len(ns) != 1:
            raise ApolyError("hull facet is degenerate")
        v = ns[0]
        vals = [sum(a * b for a, b in zip(v, p)) for p in points]
        top = sum(a * b for a, b in zip(v, on[0]))
        if max(vals) != top:
            v = tuple(-x for x in v)
            vals = [-x for x in vals]
            top = -top
            if max(vals) != top:
                raise ApolyError("floating-point hull failed exact verification")
        normals.add(v)
    tops = {v: max(sum(a * b for a, b in zip(v, q)) for q in points) for v in normals}
    for v in normals:
        verts.update(p for p in points if sum(a * b for a, b in zip(v, p)) == tops[v])
    # a genuine vertex is the unique maximizer of the sum of its facets' normals
    out = []
    for p in sorted(verts):
        active = [v for v in normals if sum(a * b for a, b in zip(v, p)) == tops[v]]
        w = [sum(v[i] for v in active) for i in range(n)]
        vals = [sum(a * b for a, b in zip(w, q)) for q in points]
        if vals.count(max(vals)) == 1 and vals[points.index(p)] == max(vals):
            out.append(p)
    return out, sorted(normals)


@dataclass(frozen=True)
class NewtonPolytope:
    """Convex hull of a finite set of lattice points.

    ``vertices`` are counterclockwise from the lexicographically smallest
    vertex in dimension 2, sorted otherwise.
    """

    dim: int
    vertices: tuple

    @classmethod
    def from_points(cls, points):
        points = [tuple(int(x) for x in p) for p in points]
        if not points:
            raise ValueError("Newton polytope of an empty support")
        n = len(points[0])
        if n > 6:
            raise ValueError("polytopes are supported up to dimension 6")
        uniq = sorted(set(points))
        if n == 2:
            return cls(2, tuple(_hull_2d(uniq)))
        return cls(n, tuple(_vertices_nd(uniq)))

    @property
    def affine_dimension(self):
        return len(_affine_pivots(list(self.vertices))[0])

    def edges(self):
        """Vertex pairs of the edges (2D only); a segment has one edge."""
        if self.dim != 2:
            raise ValueError("edges are listed for polygons only")
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def outer_normals(self):
        """Integer outer normals of the facets of a full-dimensional polytope.

        For a lower-dimensional polytope the directions orthogonal to its
        affine span are returned with both signs: every point ties there.
        """
        pts = list(self.vertices)
        n = self.dim
        k = self.affine_dimension
        if k < n:
            base = pts[0]
            diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
            out = set()
            for v in _nullspace(diffs, n):
                out.add(v)
                out.add(tuple(-x for x in v))
            return sorted(out)
        if n == 2:
            out = []
            for a, b in self.edges():
                d = (b[0] - a[0], b[1] - a[1])
                out.append(_integer_vector((d[1], -d[0])))
            return sorted(set(out))
        return _hull_nd(pts)[1]

    def __contains__(self, point):
        if self.dim != 2:
            raise ValueError("membership is implemented for polygons only")
        v = self.vertices
        if len(v) == 1:
            return tuple(point) == v[0]
        if len(v) == 2:
            a, b = v
            if _cross(a, b, point) != 0:
                return False
            return min(a, b) <= tuple(point) <= max(a, b)
        return all(_cross(v[i], v[(i + 1) % len(v)], point) >= 0 for i in range(len(v)))


def _vertices_nd(points):
    if len(points) == 1:
        return points
    pivots, _ = _affine_pivots(points)
    k = len(pivots)
    if k == 0:
        return points[:1]
    proj = {}
    for p in points:
        proj.setdefault(tuple(p[i] for i in pivots), p)
    keys = sorted(proj)
    if k == 1:
        vs = [keys[0], keys[-1]]
    elif k == 2:
        vs = _hull_2d(keys)
    else:
        vs = _hull_nd(keys)[0]
    return sorted(proj[v] for v in vs)


def newton_polytope(f):
    """Hull of the exponent vectors of ``f`` in its ring's variable order."""
    if not f:
        raise ValueError("Newton polytope of the zero polynomial")
    return NewtonPolytope.from_points(f.terms.keys())


def minkowski_sum(P, Q):
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} and {Q.dim}")
    pts = [tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices]
    return NewtonPolytope.from_points(pts)


def polygon_slopes(P):
    """Slopes of the edges of a Newton polygon in ``(l-exp, m-exp)`` coordinates."""
    if P.dim != 2:
        raise ValueError("polygon_slopes needs a 2-dimensional polytope")
    out = set()
    for a, b in P.edges():
        q, p = b[0] - a[0], b[1] - a[1]
        out.add(make_slope(p, q))
    return SlopeSet(out)


def newton_slopes(f, l_name="l", m_name="m"):
    """Edge slopes of ``Newt(f)`` with ``f`` viewed in the variables ``(l, m)``."""
    if f.is_constant():
        return SlopeSet()
    i, j = f.ring.index(l_name), f.ring.index(m_name)
    if set(f.variables()) - {f.ring.names[i], f.ring.names[j]}:
        raise ValueError("slopes need a polynomial in the two cusp variables only")
    pts = [(e[i], e[j]) for e in f.terms]
    return polygon_slopes(NewtonPolytope.from_points(pts))


# -- tropical membership ------------------------------------------------------


@dataclass(frozen=True)
class TropicalDirection:
    """Rational direction stored as a primitive integer vector.

    ``names`` optionally labels the coordinates; membership tests reorder
    by name when it is given and otherwise use the ring's variable order.
    """

    vector: tuple
    names: tuple = ()

    def __post_init__(self):
        v = _integer_vector([Fraction(x) for x in self.vector])
        if not any(v):
            raise ValueError("a tropical direction must be nonzero")
        object.__setattr__(self, "vector", v)
        if self.names and len(self.names) != len(v):
            raise ValueError("direction and name list differ in length")

    @classmethod
    def parse(cls, text, names=()):
        return cls(tuple(Fraction(x) for x in text.split(",")), tuple(names))

    def in_ring(self, ring):
        if not self.names:
            if len(self.vector) != ring.nvars:
                raise ValueError(f"direction has {len(self.vector)} entries, ring has {ring.nvars} variables")
            return self.vector
        if set(self.names) != set(ring.names):
            raise ValueError(f"direction variables {self.names} do not match ring {ring.names}")
        by = dict(zip(self.names, self.vector))
        return tuple(by[n] for n in ring.names)

    def negated(self):
        return TropicalDirection(tuple(-x for x in self.vector), self.names)

    def __str__(self):
        return "(" + ",".join(map(str, self.vector)) + ")"


def tropical_membership(ideal, xi, budget=None):
    """True iff the initial ideal ``in_xi(I)`` contains no monomial and ``I`` is proper."""
    from .groebner import contains_monomial, initial_form_ideal, is_unit_ideal

    if ideal.is_zero():
        raise ValueError("tropical membership needs a nonzero ideal")
    if not isinstance(xi, TropicalDirection):
        xi = TropicalDirection(tuple(xi))
    w = xi.in_ring(ideal.ring)
    if is_unit_ideal(ideal, budget):
        return False
    ini = initial_form_ideal(ideal, w, budget)
    return not contains_monomial(ini, budget)


def candidate_directions(ideal):
    """Outer facet normals of the generators' Newton polytopes, deduplicated."""
    out = set()
    for g in ideal.generators:
        if len(g) < 2:
            continue
        for v in newton_polytope(g).outer_normals():
            out.add(v)
    return [TropicalDirection(v, ideal.ring.names) for v in sorted(out)]


@dataclass
class ProbeResult:
    direction: TropicalDirection
    member: bool = None
    error: str = ""

    def to_dict(self):
        d = {"direction": list(self.direction.vector), "member": self.member}
        if self.error:
            d["error"] = self.error
        return d


def logarithmic_limit_probe(ideal, candidates=None, budget=None):
    """Membership verdicts at rational candidate directions.

    This samples the logarithmic limit set; it does not compute it. The
    default candidates are the generators' Newton-polytope facet normals.
    Budget failures are recorded per direction.
    """
    if ideal.is_zero():
        raise ValueError("the zero ideal is excluded from probing")
    if candidates is None:
        candidates = candidate_directions(ideal)
    if not candidates:
        raise ValueError("no candidate directions to probe")
    out = []
    for xi in candidates:
        try:
            out.append(ProbeResult(xi, tropical_membership(ideal, xi, budget)))
        except BudgetExceeded as exc:
            out.append(ProbeResult(xi, None, str(exc)))
    return out


# -- slope coordinates ---------------------------------------------------------


@dataclass(frozen=True)
class SlopeCoordinates:
    """``[n_1 p_1, n_1 q_1, ..., n_h p_h, n_h q_h]`` up to scaling and per-cusp sign."""

    entries: tuple

    @property
    def cusps(self):
        return len(self.entries) // 2

    def slopes(self):
        """Per-cusp slope ``p/q``, ``None`` where the pair is zero."""
        out = []
        for i in range(self.cusps):
            a, b = self.entries[2 * i], self.entries[2 * i + 1]
            out.append(None if a == 0 and b == 0 else make_slope(a, b))
        return out

    def to_list(self):
        return list(self.entries)


def slope_coordinates(zeta, h):
    """Rotate each ``(m_i, l_i)`` pair by ``T = [[0,1],[-1,0]]`` and normalize.

    The result is a primitive integer vector whose pairs each have their
    first nonzero entry positive, which realizes the quotient by the
    per-cusp sign action.
    """
    v = zeta.vector if isinstance(zeta, TropicalDirection) else tuple(Fraction(x) for x in zeta)
    if len(v) != 2 * h:
        raise ValueError(f"direction has {len(v)} entries, expected {2 * h}")
    if not any(v):
        raise ValueError("zero direction")
    rot = []
    for i in range(h):
        m, l = v[2 * i], v[2 * i + 1]
        pair = [l, -m]
        first = next((x for x in pair if x), 0)
        if first < 0:
            pair = [-x for x in pair]
        rot.extend(pair)
    return SlopeCoordinates(_integer_vector(rot))


# -- SVG -------------------------------------------------------------------------


def newton_svg(f, l_name="l", m_name="m", scale=40, margin=40):
    """Deterministic SVG of ``Newt(f)``: support dots, hull outline, edge slopes."""
    i, j = f.ring.index(l_name), f.ring.index(m_name)
    pts = sorted({(e[i], e[j]) for e in f.terms})
    P = NewtonPolytope.from_points(pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = (x1 - x0) * scale + 2 * margin
    height = (y1 - y0) * scale + 2 * margin

    def at(p):
        return (margin + (p[0] - x0) * scale, margin + (y1 - p[1]) * scale)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="4" y="14" font-size="12">{l_name}-exponent right, {m_name}-exponent up</text>',
    ]
    if len(P.vertices) > 1:
        ring = list(P.vertices) + ([P.vertices[0]] if len(P.vertices) > 2 else [])
        coords = " ".join("%d,%d" % at(p) for p in ring)
        lines.append(f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="2"/>')
        for a, b in P.edges():
            (ax, ay), (bx, by) = at(a), at(b)
            s = format_slope(make_slope(b[1] - a[1], b[0] - a[0]))
            lines.append(
                f'<text x="{(ax + bx) / 2 + 4:g}" y="{(ay + by) / 2 - 4:g}" font-size="12" fill="blue">{s}</text>'
            )
    for p in pts:
        lines.append('<circle cx="%d" cy="%d" r="4" fill="red"/>' % at(p))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
