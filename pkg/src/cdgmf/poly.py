"""Univariate polynomials over an exact field.

Coefficients are stored lowest degree first in a trimmed tuple, so the zero
polynomial is the empty tuple and the leading coefficient is always nonzero.
"""

from __future__ import annotations


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, *, trusted=False):
        self.field = field
        if trusted:
            self.coeffs = coeffs
        else:
            cs = [field.coerce(c) for c in coeffs]
            while cs and field.is_zero(cs[-1]):
                cs.pop()
            self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field):
        return cls(field, (field.one(),), trusted=True)

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x_power(cls, field, n: int, c=None):
        c = field.one() if c is None else field.coerce(c)
        if field.is_zero(c):
            return cls.zero(field)
        return cls(field, (field.zero(),) * n + (c,), trusted=True)

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = f.add(cs[i], c)
        while cs and f.is_zero(cs[-1]):
            cs.pop()
        return Poly(f, tuple(cs), trusted=True)

    def __neg__(self):
        f = self.field
        return Poly(f, tuple(f.neg(c) for c in self.coeffs), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [f.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if f.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(ca, cb))
        while out and f.is_zero(out[-1]):
            out.pop()
        return Poly(f, tuple(out), trusted=True)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return Poly.zero(f)
        return Poly(f, tuple(f.mul(a, c) for a in self.coeffs), trusted=True)

    def shift_up(self, n: int):
        """Multiply by x^n."""
        if self.is_zero or n == 0:
            return self if n == 0 or self.is_zero else self
        f = self.field
        return Poly(f, (f.zero(),) * n + self.coeffs, trusted=True)

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.leading()))

    def evaluate(self, x):
        f = self.field
        x = f.coerce(x)
        acc = f.zero()
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        f = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if f.is_zero(c):
                continue
            cs = f.to_str(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)

    def to_strings(self):
        return [self.field.to_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, field, strings):
        return cls(field, [field.from_str(s) for s in strings])


def poly_divmod(a: Poly, b: Poly):
    """Exact division with remainder: a = q*b + r, deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    f = a.field
    q = [f.zero()] * max(0, len(a.coeffs) - len(b.coeffs) + 1)
    rem = list(a.coeffs)
    db, lb = b.degree, b.leading()
    lb_inv = f.inv(lb)
    while len(rem) - 1 >= db and rem:
        c = f.mul(rem[-1], lb_inv)
        k = len(rem) - 1 - db
        q[k] = c
        for i, bc in enumerate(b.coeffs):
            rem[k + i] = f.sub(rem[k + i], f.mul(c, bc))
        while rem and f.is_zero(rem[-1]):
            rem.pop()
    return Poly(f, tuple(q)), Poly(f, tuple(rem), trusted=True)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return a.monic()


def poly_divides(a: Poly, b: Poly) -> bool:
    """True when a divides b."""
    if a.is_zero:
        return b.is_zero
    _, r = poly_divmod(b, a)
    return r.is_zero


def poly_arith(a: Poly, b: Poly, op: str):
    """Spec-level arithmetic dispatcher: add, mul, divmod, gcd."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divmod":
        return poly_divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown op {op!r}")
