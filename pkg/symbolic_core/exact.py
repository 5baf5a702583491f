"""
Exact real values of the form ``coeff * sqrt(radicand)``.

Diameter laws and separation constants of the bundled spaces (sqrt(2)/3^n,
sqrt(3)/8, sqrt(7)/9, 1/3, ...) all have this shape. Keeping them exact avoids
float underflow for deep levels and lets reports state constants verbatim.
"""

import math
from fractions import Fraction
from functools import total_ordering


def _split_square(n):
    """Return (s, r) with n == s*s*r and r square-free."""
    outside, radicand = 1, 1
    p = 2
    while p * p * p <= n:
        count = 0
        while n % p == 0:
            n //= p
            count += 1
        outside *= p ** (count // 2)
        if count % 2:
            radicand *= p
        p += 1 if p == 2 else 2
    # what is left has at most two prime factors, none below p
    root = math.isqrt(n)
    if root * root == n:
        return outside * root, radicand
    return outside, radicand * n


@total_ordering
class Surd:
    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand=1):
        coeff = Fraction(coeff)
        radicand = int(radicand)
        if radicand <= 0:
            raise ValueError("radicand must be positive")
        outside, radicand = _split_square(radicand)
        self.coeff = coeff * outside
        self.radicand = radicand

    @classmethod
    def sqrt_of(cls, square):
        """Exact square root of a nonnegative rational."""
        square = Fraction(square)
        if square < 0:
            raise ValueError("cannot take the square root of a negative value")
        if square == 0:
            return cls(0)
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(1, square.denominator), square.numerator * square.denominator)

    @property
    def is_rational(self):
        return self.radicand == 1 or self.coeff == 0

    def signed_square(self):
        value = self.coeff * self.coeff * self.radicand
        return value if self.coeff >= 0 else -value

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def _other_square(self, other):
        if isinstance(other, Surd):
            return other.signed_square()
        if isinstance(other, float):
            if math.isinf(other) or math.isnan(other):
                return None
            other = Fraction(other)
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return other * other if other >= 0 else -(other * other)
        return NotImplemented

    def __eq__(self, other):
        square = self._other_square(other)
        if square is NotImplemented:
            return NotImplemented
        if square is None:
            return False
        return self.signed_square() == square

    def __lt__(self, other):
        square = self._other_square(other)
        if square is NotImplemented:
            return NotImplemented
        if square is None:
            return other > 0
        return self.signed_square() < square

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeff)
        return hash((self.coeff, self.radicand))

    def __mul__(self, other):
        if isinstance(other, Surd):
            return Surd(self.coeff * other.coeff, self.radicand * other.radicand)
        if isinstance(other, (int, Fraction)):
            return Surd(self.coeff * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd(self.coeff / Fraction(other), self.radicand)
        return NotImplemented

    def __neg__(self):
        return Surd(-self.coeff, self.radicand)

    def __repr__(self):
        return f"Surd({self.coeff!s}, {self.radicand})"

    def __str__(self):
        if self.is_rational:
            return str(self.coeff)
        numerator = self.coeff.numerator
        if numerator in (1, -1):
            head = f"{'-' if numerator < 0 else ''}sqrt({self.radicand})"
        else:
            head = f"{numerator}*sqrt({self.radicand})"
        if self.coeff.denominator == 1:
            return head
        return f"{head}/{self.coeff.denominator}"


def exact_str(value):
    """Text form used in reports: exact where possible, repr for floats."""
    if isinstance(value, float):
        return repr(value)
    return str(value)
