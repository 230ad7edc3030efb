"""Division, gcd, squarefree parts, resultants and reduction mod p.

Multivariate gcd is computed recursively: a polynomial is viewed as
univariate in its first occurring variable over the ring of the remaining
ones, contents are split off recursively and the primitive parts go
through the subresultant remainder sequence.
"""

from fractions import Fraction
from functools import reduce
from math import gcd as igcd

from ..errors import BadPrimeError, DomainError
from .domains import GF, QQ, ZZ, PrimeField
from .poly import Poly, ring_of


def _lcm(a, b):
    return a // igcd(a, b) * b


# -- exact division ----------------------------------------------------


def _coeff_div(dom, a, b):
    if isinstance(dom, PrimeField):
        return a * pow(b, -1, dom.p) % dom.p
    if dom == ZZ:
        q, r = divmod(a, b)
        if r:
            raise ValueError("inexact division")
        return q
    return Fraction(a) / b


def _divide_plain(f, g):
    """Exact quotient of polynomials with nonnegative exponents."""
    ring = f.ring
    dom = ring.domain
    rem = dict(f.terms)
    ge, gc = max(g.terms.items())
    rest = [(e, c) for e, c in g.terms.items() if e != ge]
    quot = {}
    p = dom.p if isinstance(dom, PrimeField) else None
    while rem:
        fe = max(rem)
        fc = rem.pop(fe)
        qe = tuple(a - b for a, b in zip(fe, ge))
        if min(qe) < 0:
            raise ValueError("inexact division")
        qc = _coeff_div(dom, fc, gc)
        quot[qe] = qc
        for e, c in rest:
            k = tuple(a + b for a, b in zip(qe, e))
            v = rem.get(k, 0) - qc * c
            if p:
                v %= p
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly._new(ring, quot)


def exact_divide(f, g):
    """``f / g`` when the quotient is a (Laurent) polynomial; else ``ValueError``."""
    ring_of(f, g)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return f
    f0, sf = f.strip_monomial()
    g0, sg = g.strip_monomial()
    q = _divide_plain(f0, g0)
    shift = tuple(a - b for a, b in zip(sf, sg))
    if any(shift):
        q = q.mul_monomial(shift)
    return q


def divides(g, f):
    try:
        exact_divide(f, g)
    except ValueError:
        return False
    return True


# -- integer content and promotion ------------------------------------


def integer_content(f):
    """gcd of numerators / lcm of denominators (positive), for ZZ or QQ input."""
    nums = 0
    dens = 1
    for c in f.terms.values():
        c = Fraction(c)
        nums = igcd(nums, c.numerator)
        dens = _lcm(dens, c.denominator)
    return Fraction(nums, dens) if nums else Fraction(0)


def primitive_integer(f):
    """Primitive integer associate of ``f`` (ZZ or QQ), as a ZZ polynomial."""
    ring = f.ring.with_domain(ZZ)
    if not f:
        return ring.zero()
    cont = integer_content(f)
    return Poly._new(ring, {e: int(Fraction(c) / cont) for e, c in f.terms.items()})


def _field_of(f):
    dom = f.ring.domain
    if dom.is_field:
        return f
    if dom == ZZ:
        return f.set_domain(QQ)
    raise DomainError(f"unsupported domain {dom}")


# -- recursive gcd ------------------------------------------------------


def _split(f, i):
    """View ``f`` as univariate in variable ``i``: degree -> coefficient."""
    parts = {}
    for e, c in f.terms.items():
        k = e[i]
        parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
    return {k: Poly._new(f.ring, v) for k, v in parts.items()}


def _join(coeffs, i):
    out = {}
    for k, c in enumerate(coeffs):
        for e, v in c.terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = v
    return out


def _main_var(*polys):
    best = None
    for f in polys:
        for e in f.terms:
            for i, x in enumerate(e):
                if x and (best is None or i < best):
                    best = i
                    break
    return best


def _scalar_gcd(dom, a, b):
    if isinstance(dom, PrimeField):
        return 1 if (a or b) else 0
    return igcd(a, b)


def _gcd(f, g):
    """gcd over ZZ or GF(p) of polynomials with nonnegative exponents; unit-ambiguous."""
    ring = f.ring
    dom = ring.domain
    if not f:
        return g
    if not g:
        return f
    i = _main_var(f, g)
    if i is None:
        return ring.constant(_scalar_gcd(dom, f.constant_coeff(), g.constant_coeff()))
    fd = _split(f, i)
    gd = _split(g, i)
    cf = _content(fd.values())
    cg = _content(gd.values())
    c = _gcd(cf, cg)
    A = _dense(fd, cf)
    B = _dense(gd, cg)
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        return c
    G = _subresultant_last(A, B)
    if len(G) == 1:
        return c
    G = _primitive(G)
    return c * Poly._new(ring, _join(G, i))


def _content(coeffs):
    return reduce(_gcd, coeffs)


def _dense(parts, cont):
    n = max(parts) + 1
    zero = cont.ring.zero()
    return [exact_divide(parts[k], cont) if k in parts else zero for k in range(n)]


def _primitive(A):
    cont = _content([a for a in A if a])
    if cont.is_constant() and cont.constant_coeff() in (1,):
        return A
    return [exact_divide(a, cont) if a else a for a in A]


def _prem(A, B):
    """Pseudo-remainder of dense coefficient lists (index = degree)."""
    R = list(A)
    lb = B[-1]
    db = len(B) - 1
    e = len(R) - db
    while len(R) - 1 >= db and any(R):
        lr = R[-1]
        shift = len(R) - 1 - db
        R = [r * lb for r in R]
        for k, b in enumerate(B):
            R[k + shift] = R[k + shift] - lr * b
        R.pop()
        e -= 1
        while R and not R[-1]:
            R.pop()
    if e > 0 and R:
        factor = lb**e
        R = [r * factor for r in R]
    return R


def _subresultant_last(A, B):
    one = A[-1].ring.one()
    g = h = one
    while True:
        d = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            return B
        if len(R) == 1:
            return [one]
        A = B
        denom = g * h**d
        B = [exact_divide(r, denom) if r else r for r in R]
        g = A[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = exact_divide(g**d, h ** (d - 1))


def _to_gcd_domain(f):
    """Map a field polynomial to a ring where ``_gcd`` runs (ZZ for QQ)."""
    dom = f.ring.domain
    if isinstance(dom, PrimeField):
        return f
    if dom in (ZZ, QQ):
        return primitive_integer(f)
    raise DomainError(f"gcd unsupported over {dom}")


def monic(f):
    """Scale so that the lexicographically leading coefficient is 1 (field input)."""
    if not f:
        return f
    f = _field_of(f)
    _, c = f.leading_lex()
    if c == 1:
        return f
    return f.scale(1 / Fraction(c) if f.ring.domain == QQ else pow(c, -1, f.ring.domain.p))


def poly_gcd(f, g):
    """Monic gcd over QQ (ZZ input promoted) or GF(p).

    Laurent inputs are first cleared of monomial denominators; the result is
    a polynomial without monomial factors unless both inputs share one.
    """
    ring_of(f, g)  # raises on mismatched rings
    if not f and not g:
        return _field_of(f)
    f0, sf = f.strip_monomial()
    g0, sg = g.strip_monomial()
    if not f:
        sf = sg
    if not g:
        sg = sf
    shift = tuple(max(0, min(a, b)) for a, b in zip(sf, sg))
    h = _gcd(_to_gcd_domain(f0), _to_gcd_domain(g0))
    out = monic(h.set_domain(QQ) if h.ring.domain == ZZ else h)
    if any(shift):
        out = out.mul_monomial(shift)
    return out


def poly_gcd_many(polys):
    polys = [f for f in polys if f]
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    return reduce(poly_gcd, polys[1:], monic(polys[0]))


# -- squarefree part ------------------------------------------------------


def _pth_root(f):
    p = f.ring.domain.p
    return Poly._new(f.ring, {tuple(x // p for x in e): c for e, c in f.terms.items()})


def _sqf(f):
    """Radical of ``f`` (no monomial factors, nonnegative exponents)."""
    if f.is_constant():
        return monic(f) if f else f
    dom = f.ring.domain
    grads = [f.diff(i) for i in range(f.ring.nvars)]
    u = poly_gcd_many([f] + grads)
    v = exact_divide(f, u)
    if isinstance(dom, PrimeField) and not u.is_constant():
        # factors whose multiplicity is divisible by p survive only in u
        while True:
            w = poly_gcd(u, v)
            if w.is_constant():
                break
            u = exact_divide(u, w)
        if not u.is_constant():
            v = v * _sqf(_pth_root(u))
    return monic(v)


def squarefree_part(f):
    """Product of the distinct irreducible factors of ``f``, monomials stripped.

    Over QQ/ZZ the result is the primitive integer associate with positive
    leading coefficient; over GF(p) it is monic.
    """
    if not f:
        raise ValueError("squarefree part of zero")
    f0, _ = f.strip_monomial()
    dom = f.ring.domain
    g = _sqf(_field_of(f0))
    if dom in (ZZ, QQ):
        g = primitive_integer(g)
        if dom == QQ:
            g = g.set_domain(QQ)
    return g


def is_squarefree(f):
    """True iff ``f`` has no repeated factor (monomial factors ignored)."""
    return associates(squarefree_part(f), f)


# -- normalization ---------------------------------------------------------


def canonical(f):
    """Deterministic representative of ``f`` up to units of the Laurent ring.

    Monomial factors are stripped; over ZZ/QQ the result is the primitive
    integer polynomial with positive lexicographically leading coefficient,
    over GF(p) it is monic.
    """
    if not f:
        return f
    f0, _ = f.strip_monomial()
    dom = f.ring.domain
    if isinstance(dom, PrimeField):
        return monic(f0)
    g = primitive_integer(f0)
    if g.leading_lex()[1] < 0:
        g = -g
    return g


def associates(f, g):
    """Equal up to a nonzero constant and a unit monomial.

    Polynomials from different rings are compared after mapping the one
    with fewer variables into the other's ring by name.
    """
    if not f or not g:
        return not f and not g
    if f.ring != g.ring:
        if f.ring.nvars < g.ring.nvars:
            f, g = g, f
        g = g.convert(f.ring.with_domain(g.ring.domain))
    return canonical(f).terms == canonical(g).terms


def invert_variables(f, names=None):
    """Substitute ``x -> x^-1`` for the given (default: all) variables and clear."""
    idx = [f.ring.index(n) for n in (names or f.ring.names)]
    out = {}
    for e, c in f.terms.items():
        k = list(e)
        for i in idx:
            k[i] = -k[i]
        out[tuple(k)] = c
    shift = tuple(min(col) for col in zip(*out)) if out else ()
    out = {tuple(a - s for a, s in zip(e, shift)): c for e, c in out.items()}
    return Poly._new(f.ring, out)


# -- reduction mod p ---------------------------------------------------------


def reduce_mod_p(f, p):
    """Coefficientwise image in GF(p); denominators divisible by p are rejected."""
    dom = GF(p)
    ring = f.ring.with_domain(dom)
    if isinstance(f.ring.domain, PrimeField):
        raise DomainError("input already has positive characteristic")
    out = {}
    for e, c in f.terms.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadPrimeError(p, f"divides the denominator {c.denominator}")
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            out[e] = v
    return Poly._new(ring, out)


def partial_derivative(f, var):
    return f.diff(var)


# -- resultants ---------------------------------------------------------


def _bareiss_det(M):
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in M]
    one = M[0][0].ring.one()
    sign = 1
    prev = one
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return one.ring.zero()
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = exact_divide(v, prev) if v else v
            row_i[k] = one.ring.zero()
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f, g, var):
    i = f.ring.index(var)
    fd = _split(f, i)
    gd = _split(g, i)
    m = max(fd)
    n = max(gd)
    zero = f.ring.zero()
    fc = [fd.get(k, zero) for k in range(m, -1, -1)]
    gc = [gd.get(k, zero) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + fc + [zero] * (size - r - m - 1))
    for r in range(m):
        rows.append([zero] * r + gc + [zero] * (size - r - n - 1))
    return rows


def resultant(f, g, var):
    """Resultant in ``var`` as a polynomial over the remaining variables.

    Laurent inputs are first multiplied by the smallest monomial clearing
    their negative exponents (this changes the result by a unit only).
    """
    ring = ring_of(f, g)
    i = ring.index(var)
    f0, g0 = _clear_negative(f), _clear_negative(g)
    rest = [n for k, n in enumerate(ring.names) if k != i]
    sub = ring.with_names(rest)
    df, dg = (f0.degree(i) if f0 else -1), (g0.degree(i) if g0 else -1)
    if df <= 0 and dg <= 0:
        raise ValueError(f"both inputs are constant in {ring.names[i]}")
    if df <= 0 or dg <= 0:
        # res(c, g) = c^deg g
        c, d = (f0, dg) if df <= 0 else (g0, df)
        return _drop(c**d, i, sub)
    det = _bareiss_det(sylvester_matrix(f0, g0, i))
    return _drop(det, i, sub)


def _clear_negative(f):
    shift = f.monomial_content()
    if any(x < 0 for x in shift):
        f = f.mul_monomial(tuple(-min(x, 0) for x in shift))
    return f


def _drop(f, i, sub):
    return Poly._new(sub, {e[:i] + e[i + 1:]: c for e, c in f.terms.items()})
