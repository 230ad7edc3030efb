"""Sparse multivariate Laurent polynomials with exact coefficients.

A polynomial is a map from exponent tuples to nonzero coefficients, tied to
a :class:`PolyRing` descriptor that fixes the coefficient domain, the
variable names and which variables may carry negative exponents.
"""

from fractions import Fraction

from ..errors import DomainError, RingMismatchError
from .domains import QQ, ZZ, PrimeField


class PolyRing:
    """Coefficient domain plus an ordered list of variables.

    ``laurent`` lists the names that admit negative exponents.
    """

    __slots__ = ("domain", "names", "laurent", "_index", "_hash")

    def __init__(self, domain, names, laurent=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        laurent = frozenset(laurent)
        unknown = laurent - set(names)
        if unknown:
            raise ValueError(f"Laurent flags on unknown variables {sorted(unknown)}")
        self.domain = domain
        self.names = names
        self.laurent = laurent
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((domain, names, laurent))

    @property
    def nvars(self):
        return len(self.names)

    def index(self, var):
        if isinstance(var, int):
            return var
        if isinstance(var, Poly):
            (exps,) = var.terms
            return exps.index(1)
        try:
            return self._index[var]
        except KeyError:
            raise ValueError(f"{var!r} is not a variable of {self}") from None

    def gens(self):
        n = self.nvars
        one = self.domain.convert(1)
        return tuple(
            Poly._new(self, {tuple(int(i == k) for i in range(n)): one}) for k in range(n)
        )

    def gen(self, name):
        return self.gens()[self.index(name)]

    def zero(self):
        return Poly._new(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.domain.convert(c)
        return Poly._new(self, {(0,) * self.nvars: c} if c else {})

    def __call__(self, value):
        if isinstance(value, Poly):
            return value.convert(self)
        if isinstance(value, str):
            from .text import parse_poly

            return parse_poly(value, self)
        return self.constant(value)

    def with_domain(self, domain):
        return PolyRing(domain, self.names, self.laurent)

    def with_names(self, names, laurent=None):
        """Ring over the same domain with another variable list.

        Laurent flags are inherited by name unless given explicitly.
        """
        names = tuple(names)
        if laurent is None:
            laurent = [n for n in names if n in self.laurent]
        return PolyRing(self.domain, names, laurent)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.domain == other.domain
            and self.names == other.names
            and self.laurent == other.laurent
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        vs = ", ".join(n + ("^±" if n in self.laurent else "") for n in self.names)
        return f"{self.domain.name}[{vs}]"


def _normalizer(domain):
    if isinstance(domain, PrimeField):
        p = domain.p
        return lambda c: c % p
    return None


class Poly:
    """Immutable sparse polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        dom = ring.domain
        clean = {}
        n = ring.nvars
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} has wrong length for {ring}")
            for name, e in zip(ring.names, exps):
                if e < 0 and name not in ring.laurent:
                    raise ValueError(f"negative exponent on non-Laurent variable {name}")
            c = dom.convert(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        norm = _normalizer(dom)
        if norm:
            clean = {k: norm(v) for k, v in clean.items()}
        self.ring = ring
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _new(cls, ring, terms):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- basic queries -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self):
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self, var=None):
        """Total degree, or the degree in one variable (``-1`` for zero)."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var):
        i = self.ring.index(var)
        return min(e[i] for e in self.terms)

    def variables(self):
        """Names of the variables that actually occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.ring.names[i] for i in sorted(used)]

    def sorted_terms(self):
        """Terms in canonical order: descending lexicographic exponents."""
        return sorted(self.terms.items(), reverse=True)

    def leading_lex(self):
        return max(self.terms.items())

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def _finish(self, terms):
        dom = self.ring.domain
        if isinstance(dom, PrimeField):
            p = dom.p
            return Poly._new(self.ring, {k: v % p for k, v in terms.items() if v % p})
        return Poly._new(self.ring, {k: v for k, v in terms.items() if v})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._finish(out)

    __radd__ = __add__

    def __neg__(self):
        return self._finish({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return self._finish(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                out[k] = get(k, 0) + ca * cb
        return self._finish(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and self.is_monomial():
                return self.monomial_inverse() ** (-n)
            raise ValueError("only nonnegative integer powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        c = self.ring.domain.convert(c)
        return self._finish({k: v * c for k, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        """Multiply by ``c * x^exps`` (exponents may be negative)."""
        out = {tuple(x + y for x, y in zip(e, exps)): v * c for e, v in self.terms.items()}
        for e in out:
            for name, x in zip(self.ring.names, e):
                if x < 0 and name not in self.ring.laurent:
                    raise ValueError(f"negative exponent on non-Laurent variable {name}")
        return self._finish(out)

    def monomial_inverse(self):
        if not self.is_monomial():
            raise ValueError("only monomials are units")
        ((e, c),) = self.terms.items()
        return Poly(self.ring, {tuple(-x for x in e): _inverse(self.ring.domain, c)})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(_inverse(self.ring.domain, self.ring.domain.convert(other)))
        return self.exquo(other)

    def exquo(self, other):
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        from .gcd import exact_divide

        return exact_divide(self, self._coerce(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus and substitution -------------------------------------

    def diff(self, var):
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                k = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[k] = c * e[i]
        return self._finish(out)

    def evaluate(self, point):
        """Evaluate at a full point (sequence or name->value mapping)."""
        if isinstance(point, dict):
            point = [point[n] for n in self.ring.names]
        dom = self.ring.domain
        total = 0
        if isinstance(dom, PrimeField):
            p = dom.p
            for e, c in self.terms.items():
                t = c
                for x, k in zip(point, e):
                    if k:
                        t = t * pow(x, k, p) % p
                total += t
            return total % p
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k > 0:
                    t *= x**k
                elif k < 0:
                    t /= Fraction(x) ** (-k)
            total += t
        return total

    def subs(self, var, value):
        """Substitute a polynomial (or scalar) for one variable."""
        i = self.ring.index(var)
        if not isinstance(value, Poly):
            value = self.ring.constant(value)
        groups = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(k, {})[rest] = c
        result = self.ring.zero()
        pos = sorted(k for k in groups if k >= 0)
        neg = sorted((k for k in groups if k < 0), reverse=True)
        if neg:
            inv = value.monomial_inverse()
        powers = {}
        for k in pos + neg:
            base = value if k >= 0 else inv
            kk = abs(k)
            if (k >= 0, kk) not in powers:
                powers[(k >= 0, kk)] = base**kk
            result = result + Poly._new(self.ring, groups[k]) * powers[(k >= 0, kk)]
        return result

    # -- ring changes ---------------------------------------------------

    def convert(self, ring):
        """Map into ``ring`` by variable name; coefficients converted."""
        if ring == self.ring:
            return self
        idx = []
        for n in self.ring.names:
            idx.append(ring.index(n) if n in ring._index else None)
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            k = [0] * n
            for j, x in zip(idx, e):
                if x:
                    if j is None:
                        raise ValueError(f"variable {self.ring.names[e.index(x)]} missing from {ring}")
                    k[j] = x
            out[tuple(k)] = c
        return Poly(ring, out)

    def set_domain(self, domain):
        return self.convert(self.ring.with_domain(domain))

    def monomial_content(self):
        """Componentwise minimum exponent vector."""
        if not self.terms:
            return (0,) * self.ring.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def strip_monomial(self):
        """Return ``(g, shift)`` with ``g = self * x^(-shift)`` and no monomial factor."""
        shift = self.monomial_content()
        if not any(shift):
            return self, shift
        out = {tuple(x - s for x, s in zip(e, shift)): c for e, c in self.terms.items()}
        return Poly._new(self.ring, out), shift

    def __repr__(self):
        from .text import format_poly

        return format_poly(self)

    __str__ = __repr__


def _inverse(domain, c):
    if not c:
        raise ZeroDivisionError("division by zero")
    if isinstance(domain, PrimeField):
        return pow(c, -1, domain.p)
    if domain == QQ:
        return 1 / Fraction(c)
    if domain == ZZ and c in (1, -1):
        return c
    raise DomainError(f"{c} is not invertible in {domain}")


def ring_of(*polys):
    rings = {f.ring for f in polys}
    if len(rings) != 1:
        raise RingMismatchError(f"mixed rings: {rings}")
    return rings.pop()


def poly_arith(f, g, op):
    """``op`` in {'add', 'sub', 'mul'}; the rings must agree."""
    ring_of(f, g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
