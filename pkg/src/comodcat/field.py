"""Exact coefficient fields: the rationals and prime fields F_p."""

from fractions import Fraction


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Coefficient field of characteristic 0 (QQ) or a prime p (GF(p)).

    Scalars are plain Python values: ``Fraction`` for QQ and ``int`` in
    ``range(p)`` for GF(p).  Arithmetic is done with the ordinary operators
    followed by :meth:`norm`.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def __call__(self, value):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return value.numerator * pow(value.denominator, p - 2, p) % p
        if isinstance(value, str):
            return self(Fraction(value))
        return int(value) % p

    def norm(self, x):
        p = self.characteristic
        return x % p if p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(x, p - 2, p) if p else 1 / Fraction(x)

    def format(self, x):
        if self.characteristic:
            return str(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)
GF2 = Field(2)
