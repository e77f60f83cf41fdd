"""Exact scalar fields: arbitrary-precision rationals and odd prime fields.

Every number in this package is either a :class:`fractions.Fraction` or an
:class:`FpElement`; no floating point appears anywhere.  A *field tag* (the
singleton :data:`QQ` or a :class:`PrimeField` instance) names the field an
element lives in and converts ints / strings into elements:

>>> QQ(3) / QQ(4)
Fraction(3, 4)
>>> F5 = PrimeField(5)
>>> F5(3) + F5(4)
FpElement(2 mod 5)

Prime fields of characteristic 2 are rejected, since quadratic forms cannot
be polarized there.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10**24.

    >>> [p for p in range(2, 30) if is_prime(p)]
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpElement:
    """An element of the prime field with ``modulus`` elements.

    Supports the usual arithmetic operators, mixing freely with ints.
    Division by zero raises ZeroDivisionError, as for Fraction.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixed moduli {self.modulus} and {other.modulus}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.modulus)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.modulus}")
        return FpElement(self.value * pow(o.value, -1, self.modulus),
                         self.modulus)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, exp: int):
        if exp < 0:
            if self.value == 0:
                raise ZeroDivisionError(
                    f"division by zero in F_{self.modulus}")
            return FpElement(pow(self.value, exp, self.modulus), self.modulus)
        return FpElement(pow(self.value, exp, self.modulus), self.modulus)

    def __neg__(self):
        return FpElement(-self.value, self.modulus)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value} mod {self.modulus})"


class Rationals:
    """Field tag for exact rationals; use the singleton :data:`QQ`."""

    characteristic = 0
    name = "Q"

    def __call__(self, v) -> Fraction:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into the rationals")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class PrimeField:
    """Field tag for the prime field of odd order q.

    >>> PrimeField(7)(10)
    FpElement(3 mod 7)
    """

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"modulus {q} is not prime")
        if q == 2:
            raise ValueError("characteristic 2 is not supported")
        self.q = q
        self.characteristic = q
        self.name = f"Fq:{q}"

    def __call__(self, v) -> FpElement:
        if isinstance(v, FpElement):
            if v.modulus != self.q:
                raise ValueError(f"element of F_{v.modulus} is not in F_{self.q}")
            return v
        if isinstance(v, int):
            return FpElement(v, self.q)
        if isinstance(v, str):
            return FpElement(int(v), self.q)
        if isinstance(v, Fraction):
            if v.denominator % self.q == 0:
                raise ZeroDivisionError(
                    f"denominator of {v} vanishes in F_{self.q}")
            return FpElement(v.numerator, self.q) / FpElement(v.denominator, self.q)
        raise TypeError(f"cannot coerce {v!r} into F_{self.q}")

    @property
    def zero(self):
        return FpElement(0, self.q)

    @property
    def one(self):
        return FpElement(1, self.q)

    def format(self, x) -> str:
        return str(x.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("Fq", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


def field_from_name(name: str):
    """Parse a field tag from its report/JSON name, "Q" or "Fq:<q>"."""
    if name == "Q":
        return QQ
    if name.startswith("Fq:"):
        return PrimeField(int(name[3:]))
    raise ValueError(f"unknown field name {name!r}")
