"""Exact arithmetic in the quadratic extension Q(sigma) with sigma^2 = p*sigma + q.

Rationals are plain ``fractions.Fraction``; ``MetallicScalar`` adjoins the
positive root sigma of x^2 - p x - q for positive integers p, q.  Every
product is reduced with the rewrite sigma^2 -> p*sigma + q, so values stay in
the two-dimensional representation a + b*sigma over Q.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "MetallicScalar"]


class ScalarError(ArithmeticError):
    """Raised on division by zero or incompatible field parameters."""


def _as_fraction(x: Rat) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class MetallicScalar:
    """An element a + b*sigma of Q(sigma_{p,q}).

    Immutable.  Mixing two scalars with different (p, q) is an error unless
    one of them is rational (b == 0), in which case it is coerced.
    """

    __slots__ = ("a", "b", "p", "q")

    def __init__(self, a: Rat, b: Rat, p: int, q: int) -> None:
        if p < 1 or q < 1:
            raise ScalarError(f"metallic parameters must be positive, got p={p} q={q}")
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "q", int(q))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MetallicScalar is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def rational(cls, x: Rat, p: int = 1, q: int = 1) -> "MetallicScalar":
        return cls(_as_fraction(x), Fraction(0), p, q)

    # -- coercion -----------------------------------------------------

    def _align(self, other: ScalarLike):
        """Return (self', other') in a common extension, or None."""
        if isinstance(other, (int, Fraction)):
            other = MetallicScalar(_as_fraction(other), 0, self.p, self.q)
        elif not isinstance(other, MetallicScalar):
            return None
        if (self.p, self.q) == (other.p, other.q):
            return self, other
        if other.b == 0:
            return self, MetallicScalar(other.a, 0, self.p, self.q)
        if self.b == 0:
            return MetallicScalar(self.a, 0, other.p, other.q), other
        raise ScalarError(
            f"incompatible extensions Q(sigma_{{{self.p},{self.q}}}) "
            f"and Q(sigma_{{{other.p},{other.q}}})"
        )

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: ScalarLike):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return MetallicScalar(s.a + o.a, s.b + o.b, s.p, s.q)

    __radd__ = __add__

    def __neg__(self) -> "MetallicScalar":
        return MetallicScalar(-self.a, -self.b, self.p, self.q)

    def __sub__(self, other: ScalarLike):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return MetallicScalar(s.a - o.a, s.b - o.b, s.p, s.q)

    def __rsub__(self, other: ScalarLike):
        return (-self) + other

    def __mul__(self, other: ScalarLike):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        # (a1 + b1 t)(a2 + b2 t) with t^2 = p t + q
        a = s.a * o.a + s.b * o.b * s.q
        b = s.a * o.b + s.b * o.a + s.b * o.b * s.p
        return MetallicScalar(a, b, s.p, s.q)

    __rmul__ = __mul__

    def conjugate(self) -> "MetallicScalar":
        """Image under sigma -> p - sigma (the other root)."""
        return MetallicScalar(self.a + self.b * self.p, -self.b, self.p, self.q)

    def norm(self) -> Fraction:
        """Rational field norm: self * self.conjugate()."""
        return self.a * self.a + self.a * self.b * self.p - self.b * self.b * self.q

    def inverse(self) -> "MetallicScalar":
        n = self.norm()
        if n == 0:
            raise ScalarError("division by zero in Q(sigma)")
        c = self.conjugate()
        return MetallicScalar(c.a / n, c.b / n, self.p, self.q)

    def __truediv__(self, other: ScalarLike):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return s * o.inverse()

    def __rtruediv__(self, other: ScalarLike):
        return self.inverse() * other

    def __pow__(self, n: int) -> "MetallicScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = MetallicScalar.rational(1, self.p, self.q)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, MetallicScalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.p, self.q) == (other.a, other.b, other.p, other.q)
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.p, self.q))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- embedding ----------------------------------------------------

    def sigma_value(self) -> float:
        return (self.p + math.sqrt(self.p * self.p + 4 * self.q)) / 2.0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.sigma_value()

    def __abs__(self) -> float:
        return abs(float(self))

    # -- display ------------------------------------------------------

    def __repr__(self) -> str:
        return f"MetallicScalar({self.a!r}, {self.b!r}, p={self.p}, q={self.q})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            bpart = "sigma"
        elif self.b == -1:
            bpart = "-sigma"
        else:
            bpart = f"{self.b}*sigma"
        if self.a == 0:
            return bpart
        return f"{self.a}+{bpart}" if self.b > 0 else f"{self.a}{bpart}"


def sigma(p: int, q: int) -> MetallicScalar:
    """The metallic mean sigma_{p,q}, positive root of x^2 - p x - q."""
    if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
        raise ScalarError(f"metallic parameters must be positive integers, got p={p!r} q={q!r}")
    return MetallicScalar(0, 1, p, q)


def scalar_abs(x: ScalarLike) -> float:
    """Magnitude of an exact scalar in the real embedding (sigma > 0)."""
    if isinstance(x, MetallicScalar):
        return abs(x)
    return abs(float(x))


def is_zero(x) -> bool:
    if isinstance(x, MetallicScalar):
        return not bool(x)
    return x == 0


def scalar_str(x) -> str:
    """Canonical decimal-free rendering used in reports."""
    if isinstance(x, float):
        return repr(x)
    return str(x)
