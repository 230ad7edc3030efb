"""Defining ideals of SL(2) representation varieties.

Generator ``k`` (1-based) of a presentation is sent to the matrix
``[[a_k, b_k], [c_k, d_k]]``. Inverse letters use the adjugate, which is the
inverse on the locus ``a_k d_k - b_k c_k = 1``, so every ideal stays
polynomial in the matrix entries.
"""

from dataclasses import dataclass

from .algebra import PolyRing
from .errors import ApolyError
from .groebner import PolynomialIdeal


@dataclass(frozen=True)
class MatrixVariables:
    ngens: int

    def names(self, k):
        return (f"a{k + 1}", f"b{k + 1}", f"c{k + 1}", f"d{k + 1}")

    @property
    def all_names(self):
        return tuple(n for k in range(self.ngens) for n in self.names(k))


def eigen_names(h):
    """Eigenvalue variable names ``(m, l)`` for one cusp, ``(m1, l1, ...)`` otherwise."""
    if h == 1:
        return ("m", "l")
    return tuple(n for i in range(1, h + 1) for n in (f"m{i}", f"l{i}"))


class RepRing:
    """Polynomial ring of matrix entries, optionally with eigenvalue variables."""

    def __init__(self, G, domain, eigen=False):
        self.group = G
        self.vars = MatrixVariables(G.ngens)
        self.h = len(G.cusps)
        ev = eigen_names(self.h) if (eigen and self.h) else ()
        self.eigen = ev
        self.ring = PolyRing(domain, self.vars.all_names + ev, laurent=ev)
        self._gens = dict(zip(self.ring.names, self.ring.gens()))

    def var(self, name):
        return self._gens[name]

    def generator_matrix(self, k, inverse=False):
        a, b, c, d = (self._gens[n] for n in self.vars.names(k))
        if inverse:
            return ((d, -b), (-c, a))
        return ((a, b), (c, d))

    def identity(self):
        one, zero = self.ring.one(), self.ring.zero()
        return ((one, zero), (zero, one))

    def cusp_vars(self, i):
        """``(m_i, l_i)`` as polynomials."""
        return self._gens[self.eigen[2 * i]], self._gens[self.eigen[2 * i + 1]]


def mat_mul(X, Y):
    return (
        (X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
        (X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]),
    )


def word_matrix(w, R):
    """Symbolic image of a word; the empty word maps to the identity."""
    M = None
    for x in w:
        A = R.generator_matrix(abs(x) - 1, inverse=x < 0)
        M = A if M is None else mat_mul(M, A)
    return M if M is not None else R.identity()


def trace_polynomial(w, R):
    M = word_matrix(w, R)
    return M[0][0] + M[1][1]


def _rep_generators(R):
    G = R.group
    gens = []
    for k in range(G.ngens):
        a, b, c, d = (R.var(n) for n in R.vars.names(k))
        gens.append(a * d - b * c - 1)
    for r in G.relators:
        M = word_matrix(r, R)
        gens.extend([M[0][0] - 1, M[0][1], M[1][0], M[1][1] - 1])
    return gens


def rep_ideal(G, domain):
    """Ideal of R(G) in the 4n matrix entries: relator entries and determinants."""
    R = RepRing(G, domain)
    return PolynomialIdeal(R.ring, _rep_generators(R))


def upper_triangular_ideal(G, domain):
    """Representations with upper-triangular peripheral images.

    Adds, per cusp, ``lower-left = 0`` for the meridian and longitude images
    and identifies their upper-left entries with ``m_i`` and ``l_i``.
    Invertibility of ``m_i, l_i`` is left to a later saturation.
    """
    if not G.cusps:
        raise ApolyError("presentation has no peripheral structure")
    R = RepRing(G, domain, eigen=True)
    gens = _rep_generators(R)
    for i, c in enumerate(G.cusps):
        m, l = R.cusp_vars(i)
        M = word_matrix(c.meridian, R)
        L = word_matrix(c.longitude, R)
        gens.extend([M[1][0], L[1][0], M[0][0] - m, L[0][0] - l])
    return PolynomialIdeal(R.ring, gens)


def eigenvalue_system(G, domain):
    """Representation ideal plus the trace equations of every cusp.

    ``tr M_i = m_i + 1/m_i``, ``tr L_i = l_i + 1/l_i`` and
    ``tr M_i L_i = m_i l_i + 1/(m_i l_i)``, each multiplied by the monomial
    that clears its denominator (``m_i``, ``l_i`` and ``m_i l_i``).
    """
    if not G.cusps:
        raise ApolyError("presentation has no peripheral structure")
    R = RepRing(G, domain, eigen=True)
    gens = _rep_generators(R)
    for i, c in enumerate(G.cusps):
        m, l = R.cusp_vars(i)
        tm = trace_polynomial(c.meridian, R)
        tl = trace_polynomial(c.longitude, R)
        tml = trace_polynomial(c.meridian * c.longitude, R)
        gens.append(m * tm - m * m - 1)
        gens.append(l * tl - l * l - 1)
        gens.append(m * l * tml - m * m * l * l - 1)
    return PolynomialIdeal(R.ring, gens)


def determinant_relations(ring, ngens):
    """The determinant-one relations as a list (for normal-form checks)."""
    out = []
    V = MatrixVariables(ngens)
    for k in range(ngens):
        a, b, c, d = (ring.gen(n) for n in V.names(k))
        out.append(a * d - b * c - 1)
    return out
