"""Certified real arithmetic for logarithmic quantities.

Values of the form ``q + sum_p c_p * log(p) / log(base)`` with rational q and
c_p (p prime) have an exact zero test, because logarithms of distinct primes
are linearly independent over Q.  Signs of nonzero values are settled by
mpmath interval arithmetic at increasing precision.  mpmath's interval context
is global, so every evaluation runs under a module lock.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from mpmath import iv
from mpmath.libmp import to_rational

_IV_LOCK = threading.Lock()

START_PREC = 64
MAX_PREC = 1 << 14


def factorize(m: int) -> dict[int, int]:
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return Fraction(*map(int, to_rational(lo))), Fraction(*map(int, to_rational(hi)))


def _iv_rational(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


_LOG_CACHE: dict[tuple[int, int], object] = {}


def _iv_log(p: int, prec: int):
    """iv.log(p) at ``prec`` bits; caller holds the lock with iv.prec == prec."""
    key = (p, prec)
    val = _LOG_CACHE.get(key)
    if val is None:
        val = _LOG_CACHE[key] = iv.log(iv.mpf(p))
    return val


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass(frozen=True)
class LogLinear:
    """``rational + sum_p coeffs[p] * log_base(p)``."""

    base: int
    rational: Fraction = Fraction(0)
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("logarithm base must be at least 2")
        clean = {p: Fraction(c) for p, c in self.coeffs.items() if c}
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "rational", Fraction(self.rational))

    @classmethod
    def log(cls, base: int, x: int) -> LogLinear:
        """log_base(x) for a positive integer x."""
        if x == base:
            return cls(base, Fraction(1))
        return cls(base, Fraction(0), {p: Fraction(e) for p, e in factorize(x).items()})

    @classmethod
    def const(cls, base: int, q) -> LogLinear:
        return cls(base, Fraction(q))

    def _check(self, other: LogLinear) -> None:
        if other.base != self.base:
            raise ValueError("cannot mix logarithm bases")

    def __add__(self, other) -> LogLinear:
        if not isinstance(other, LogLinear):
            other = LogLinear.const(self.base, other)
        self._check(other)
        coeffs = dict(self.coeffs)
        for p, c in other.coeffs.items():
            coeffs[p] = coeffs.get(p, Fraction(0)) + c
        return LogLinear(self.base, self.rational + other.rational, coeffs)

    __radd__ = __add__

    def __neg__(self) -> LogLinear:
        return LogLinear(self.base, -self.rational, {p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other) -> LogLinear:
        if not isinstance(other, LogLinear):
            other = LogLinear.const(self.base, other)
        return self + (-other)

    def __rsub__(self, other) -> LogLinear:
        return LogLinear.const(self.base, other) - self

    def __mul__(self, q) -> LogLinear:
        q = Fraction(q)
        return LogLinear(self.base, self.rational * q, {p: c * q for p, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, q) -> LogLinear:
        return self * (1 / Fraction(q))

    def _normal_form(self) -> dict[int, Fraction]:
        """Coefficients of log p in (value * log base)."""
        out = dict(self.coeffs)
        if self.rational:
            for p, e in factorize(self.base).items():
                out[p] = out.get(p, Fraction(0)) + self.rational * e
        return {p: c for p, c in out.items() if c}

    def is_rational(self) -> bool:
        return self.exact_value() is not None

    def exact_value(self) -> Fraction | None:
        """The value as a rational if it is one, else None."""
        rest = LogLinear(self.base, Fraction(0), self.coeffs)._normal_form()
        if not rest:
            return self.rational
        # the log terms may themselves equal a rational multiple of log(base)
        bf = factorize(self.base)
        if set(rest) != set(bf):
            return None
        ratios = {rest[p] / bf[p] for p in bf}
        if len(ratios) == 1:
            return self.rational + ratios.pop()
        return None

    def interval(self, prec: int = START_PREC) -> tuple[Fraction, Fraction]:
        """Outward-rounded enclosure of the value at ``prec`` bits."""
        with _IV_LOCK:
            old = iv.prec
            iv.prec = prec
            try:
                total = _iv_rational(self.rational)
                if self.coeffs:
                    logb = _iv_log(self.base, prec)
                    acc = iv.mpf(0)
                    for p, c in sorted(self.coeffs.items()):
                        acc += _iv_rational(c) * _iv_log(p, prec)
                    total = total + acc / logb
                return endpoints(total)
            finally:
                iv.prec = old

    def certified_interval(self, width: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        """Enclosure of width at most ``width``."""
        exact = self.exact_value()
        if exact is not None:
            return exact, exact
        prec = START_PREC
        while prec <= MAX_PREC:
            lo, hi = self.interval(prec)
            if hi - lo <= width:
                return lo, hi
            prec *= 2
        raise PrecisionExhausted("could not reach requested width")

    def sign(self) -> int:
        form = self._normal_form()
        if not form:
            return 0
        prec = START_PREC
        while prec <= MAX_PREC:
            with _IV_LOCK:
                old = iv.prec
                iv.prec = prec
                try:
                    acc = iv.mpf(0)
                    for p, c in sorted(form.items()):
                        acc += _iv_rational(c) * _iv_log(p, prec)
                    lo, hi = endpoints(acc)
                finally:
                    iv.prec = old
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise PrecisionExhausted("sign undecided; value is nonzero but extremely small")

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LogLinear, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __hash__(self) -> int:
        return hash((self.base, self.rational, tuple(sorted(self.coeffs.items()))))

    def __float__(self) -> float:
        lo, hi = self.interval()
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        terms = [str(self.rational)] if self.rational or not self.coeffs else []
        terms += [f"{c}*log_{self.base}({p})" for p, c in sorted(self.coeffs.items())]
        return " + ".join(terms)


def ford_bound_lower(n: int, m: int, prec: int = START_PREC) -> Fraction:
    """Rational lower bound for (2 ln n)^(m-1) / (m-1)!, rounded downward."""
    from math import factorial

    if m == 1:
        return Fraction(1)
    if n == 1:
        return Fraction(0)
    with _IV_LOCK:
        old = iv.prec
        iv.prec = prec
        try:
            val = (2 * iv.log(iv.mpf(n))) ** (m - 1) / factorial(m - 1)
            return endpoints(val)[0]
        finally:
            iv.prec = old


def power_sum(dims: list[tuple[int, int]], s: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of sum mult * dim^(-s) over (dim, mult) pairs, of width <= ``width``."""
    prec = START_PREC
    while prec <= MAX_PREC:
        with _IV_LOCK:
            old = iv.prec
            iv.prec = prec
            try:
                sv = _iv_rational(s)
                acc = iv.mpf(0)
                for dim, mult in dims:
                    acc += mult * iv.exp(-sv * iv.log(iv.mpf(dim)))
                lo, hi = endpoints(acc)
            finally:
                iv.prec = old
        if hi - lo <= width:
            return lo, hi
        prec *= 2
    raise PrecisionExhausted("could not reach requested width")
