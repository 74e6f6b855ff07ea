"""Exact coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values (Fraction for Q, int in [0, p) for
F_p); a field object bundles the operations.  Everything is exact, there is
no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q.  Elements are Fractions, kept in lowest terms by Fraction
    itself after every operation."""

    kind = "rationals"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def coerce(self, a):
        if isinstance(a, Fraction):
            return a
        if isinstance(a, int):
            return Fraction(a)
        if isinstance(a, str):
            return self.from_str(a)
        raise FieldError(f"cannot coerce {a!r} into Q")

    def to_str(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def from_str(self, s: str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {s!r}") from exc

    def random(self, rng, height: int = 3):
        return Fraction(rng.randint(-height, height))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p, elements the ints 0..p-1."""

    kind = "prime-field"

    def __init__(self, p: int):
        if not isinstance(p, int) or not (2 <= p < 2**31) or not is_prime(p):
            raise FieldError(f"not a prime in range: {p!r}")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def coerce(self, a):
        if isinstance(a, int):
            return a % self.p
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return self.div(a.numerator % self.p, a.denominator % self.p)
        if isinstance(a, str):
            return self.from_str(a)
        raise FieldError(f"cannot coerce {a!r} into F_{self.p}")

    def to_str(self, a) -> str:
        return str(a % self.p)

    def from_str(self, s: str):
        try:
            return int(s, 10) % self.p
        except ValueError as exc:
            raise FieldError(f"bad F_{self.p} literal {s!r}") from exc

    def random(self, rng, height: int = 3):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()


def field_to_token(field) -> str:
    """Canonical serialization token: "Q" or "Fp:<p>"."""
    if isinstance(field, RationalField):
        return "Q"
    return f"Fp:{field.p}"


def field_from_token(token: str):
    if token == "Q":
        return QQ
    if token.startswith("Fp:"):
        try:
            p = int(token[3:], 10)
        except ValueError as exc:
            raise FieldError(f"bad field token {token!r}") from exc
        return PrimeField(p)
    raise FieldError(f"bad field token {token!r}")
