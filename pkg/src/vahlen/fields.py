"""Exact scalar arithmetic over Q and over GF(p) for odd primes p.

Every scalar is an immutable value tied to its field; there is no floating
point anywhere, and fields of characteristic 2 are rejected at construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class FieldMismatch(ValueError):
    """Two scalars from different fields were combined."""


class InfiniteField(ValueError):
    """An enumeration was requested over Q."""


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the two supported exact fields."""

    def element(self, value):
        """Coerce an int, Fraction, or Scalar of this field to a Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar of {value.field} used in {self}")
            return value
        return Scalar(self, self._coerce(value))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def parse(self, text):
        """Parse the text syntax: "n/d" or "n" over Q, a residue over GF(p)."""
        return self.element(Fraction(text.strip()))

    def __ne__(self, other):
        return not self.__eq__(other)


class Rationals(Field):
    """The field Q, backed by arbitrary-precision fractions."""

    modulus = None

    def _coerce(self, value):
        return Fraction(value)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def _neg(self, a):
        return -a

    def is_square(self, x):
        """x in (Q^x)^2: positive with square numerator and denominator."""
        x = self.element(x)
        if x.is_zero():
            raise ValueError("is_square is undefined at 0")
        v = x.value
        if v < 0:
            return False
        n, d = v.numerator, v.denominator
        return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d

    def elements(self):
        raise InfiniteField("Q cannot be enumerated")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(("field", "Q"))

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    """GF(p) for an odd prime p, residues stored reduced in 0..p-1."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.modulus = p

    def _coerce(self, value):
        if isinstance(value, Fraction):
            return self._div(value.numerator % self.modulus,
                             value.denominator % self.modulus)
        return value % self.modulus

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _sub(self, a, b):
        return (a - b) % self.modulus

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _div(self, a, b):
        if b % self.modulus == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        return (a * pow(b, -1, self.modulus)) % self.modulus

    def _neg(self, a):
        return (-a) % self.modulus

    def is_square(self, x):
        """Euler's criterion: x^((p-1)/2) = 1."""
        x = self.element(x)
        if x.is_zero():
            raise ValueError("is_square is undefined at 0")
        return pow(x.value, (self.modulus - 1) // 2, self.modulus) == 1

    def elements(self):
        """All p residues in the fixed order 0, 1, ..., p-1."""
        for v in range(self.modulus):
            yield Scalar(self, v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("field", self.modulus))

    def __repr__(self):
        return f"F{self.modulus}"


Q = Rationals()


def parse_field(text):
    """Parse a field descriptor: "Q", or "Fp" such as "F3"."""
    text = text.strip()
    if text == "Q":
        return Q
    if text.startswith("F") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise ValueError(f"unknown field descriptor {text!r}")


class Scalar:
    """An exact field element: a reduced fraction, or a residue mod p."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field._coerce(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._div(self.value, v))

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._div(v, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def __pow__(self, n):
        out = self.field.one
        base = self
        if n < 0:
            base = base.inverse()
            n = -n
        for _ in range(n):
            out = out * base
        return out

    def inverse(self):
        return Scalar(self.field, self.field._div(self.field._coerce(1), self.value))

    def is_zero(self):
        return self.value == 0

    def is_square(self):
        return self.field.is_square(self)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return self.value == v

    def __ne__(self, other):
        r = self.__eq__(other)
        if r is NotImplemented:
            return r
        return not r

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"{self.value}"
