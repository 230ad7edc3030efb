"""Coefficient domains: the integers, the rationals and prime fields."""

from fractions import Fraction
from functools import lru_cache

from ..errors import DomainError


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Domain:
    name = "?"
    characteristic = 0
    is_field = False

    def convert(self, c):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Domain) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class IntegerRing(Domain):
    name = "ZZ"

    def convert(self, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise DomainError(f"{c} is not an integer")
            return c.numerator
        if isinstance(c, int):
            return int(c)
        raise DomainError(f"cannot convert {c!r} to ZZ")


class RationalField(Domain):
    name = "QQ"
    is_field = True

    def convert(self, c):
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise DomainError(f"cannot convert {c!r} to QQ")


class PrimeField(Domain):
    is_field = True

    def __init__(self, p):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, c):
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise DomainError(f"denominator of {c} vanishes mod {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        if isinstance(c, int):
            return c % self.p
        raise DomainError(f"cannot convert {c!r} to {self.name}")


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def domain_from_name(name):
    """``'ZZ'``, ``'QQ'``, ``'GF(5)'`` or a bare prime such as ``'5'``."""
    name = name.strip()
    if name.upper() in ("ZZ", "Z"):
        return ZZ
    if name.upper() in ("QQ", "Q"):
        return QQ
    if name.upper().startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    if name.isdigit():
        return GF(int(name))
    raise DomainError(f"unknown domain {name!r}")
