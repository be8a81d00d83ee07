"""Exact numbers of the form a + b*sqrt(d) with a, b rational and d square-free."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction, "AlgebraicScalar"]


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Write m = s^2 * d with d square-free (sign carried by d)."""
    if m == 0:
        return 0, 0
    sgn = -1 if m < 0 else 1
    m = abs(m)
    s, d, p = 1, 1, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        if m % p == 0:
            m //= p
            d *= p
        p += 1
    return s, sgn * d * m


@dataclass(frozen=True)
class AlgebraicScalar:
    """a + b*sqrt(d).  When b == 0 the radicand is normalised to 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if b != 0:
            if d == 0:
                raise ValueError("nonzero surd coefficient with radicand 0")
            s, core = squarefree_decomposition(d)
            b *= s
            d = core
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt(cls, m: int) -> AlgebraicScalar:
        s, d = squarefree_decomposition(m)
        if d == 0:
            return cls(Fraction(0))
        return cls(Fraction(0), Fraction(s), d)

    @classmethod
    def coerce(cls, x: Number) -> AlgebraicScalar:
        if isinstance(x, AlgebraicScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot treat {type(x).__name__} as an exact scalar")

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_real(self) -> bool:
        return self.d >= 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ArithmeticError(f"{self} is irrational")
        return self.a

    # -- arithmetic -------------------------------------------------------
    def _radicand(self, other: AlgebraicScalar) -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise ArithmeticError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other: Number) -> AlgebraicScalar:
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(other)
        return AlgebraicScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> AlgebraicScalar:
        return AlgebraicScalar(-self.a, -self.b, self.d)

    def __sub__(self, other: Number) -> AlgebraicScalar:
        return self + (-AlgebraicScalar.coerce(other))

    def __rsub__(self, other: Number) -> AlgebraicScalar:
        return AlgebraicScalar.coerce(other) - self

    def __mul__(self, other: Number) -> AlgebraicScalar:
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(other)
        return AlgebraicScalar(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> AlgebraicScalar:
        """Galois conjugate a - b*sqrt(d)."""
        return AlgebraicScalar(self.a, -self.b, self.d)

    def complex_conjugate(self) -> AlgebraicScalar:
        return self.conjugate() if self.d < 0 else self

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other: Number) -> AlgebraicScalar:
        other = AlgebraicScalar.coerce(other)
        if other.b == 0:
            if other.a == 0:
                raise ZeroDivisionError("division by zero")
            return AlgebraicScalar(self.a / other.a, self.b / other.a, self.d)
        return self * other.conjugate() / other.norm()

    def __rtruediv__(self, other: Number) -> AlgebraicScalar:
        return AlgebraicScalar.coerce(other) / self

    def __pow__(self, k: int) -> AlgebraicScalar:
        if k < 0:
            return 1 / (self**-k)
        out = AlgebraicScalar(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, AlgebraicScalar):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        """Exact sign of a real value."""
        if self.d < 0:
            raise TypeError(f"{self} is not real")
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d*b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    # -- conversions ------------------------------------------------------
    def __complex__(self) -> complex:
        if self.d < 0:
            return complex(float(self.a), float(self.b) * (-self.d) ** 0.5)
        return complex(float(self))

    def __float__(self) -> float:
        if self.d < 0:
            raise TypeError(f"{self} is not real")
        return float(self.a) + float(self.b) * self.d**0.5

    def real_part(self) -> AlgebraicScalar:
        return AlgebraicScalar(self.a) if self.d < 0 else self

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d})"

    def to_json(self) -> dict | str:
        return {
            "a": f"{self.a.numerator}/{self.a.denominator}",
            "b": f"{self.b.numerator}/{self.b.denominator}",
            "d": self.d,
        }

    @classmethod
    def from_json(cls, obj: dict) -> AlgebraicScalar:
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))


def exact_sum(values: Iterable[Number]) -> AlgebraicScalar:
    """Sum values whose surd parts may use different radicands.

    The irrational parts must cancel down to at most one radicand, otherwise
    the total is not representable and ArithmeticError is raised.
    """
    rational = Fraction(0)
    surds: dict[int, Fraction] = {}
    for v in values:
        v = AlgebraicScalar.coerce(v)
        rational += v.a
        if v.b:
            surds[v.d] = surds.get(v.d, Fraction(0)) + v.b
    live = {d: b for d, b in surds.items() if b}
    if len(live) > 1:
        raise ArithmeticError(f"sum leaves several independent surds: {sorted(live)}")
    if live:
        (d, b), = live.items()
        return AlgebraicScalar(rational, b, d)
    return AlgebraicScalar(rational)


def scalar_json(x: Number):
    """Integers as strings, rationals as "p/q", surds as {a, b, d}."""
    if isinstance(x, AlgebraicScalar):
        if x.b != 0:
            return x.to_json()
        x = x.a
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def scalar_from_json(obj) -> AlgebraicScalar:
    if isinstance(obj, dict):
        return AlgebraicScalar.from_json(obj)
    return AlgebraicScalar(Fraction(obj))
