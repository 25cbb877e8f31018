"""Exact scalars and combinatorial primitives.

Rationals are plain :class:`fractions.Fraction`. Complex rationals and
values of the form ``q * pi**(k/2)`` get small immutable wrappers so that
Gamma and Beta values at (half-)integers stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def is_nonpositive_integer(x) -> bool:
    x = as_fraction(x)
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(as_fraction(x), Fraction(0))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        o = _coerce_gauss(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce_gauss(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce_gauss(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_gauss(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return _coerce_gauss(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = _coerce_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def _coerce_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x), Fraction(0))
    return NotImplemented


@dataclass(frozen=True)
class SqrtPiScaled:
    """The number ``coeff * pi**(pi_half_power / 2)``.

    Only products, quotients and comparisons are supported; adding values
    with different powers of sqrt(pi) raises ``ValueError``.
    """

    coeff: Fraction
    pi_half_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        if self.coeff == 0:
            object.__setattr__(self, "pi_half_power", 0)

    @classmethod
    def of(cls, x) -> "SqrtPiScaled":
        if isinstance(x, SqrtPiScaled):
            return x
        return cls(as_fraction(x), 0)

    def __mul__(self, other):
        o = _coerce_spi(other)
        if o is NotImplemented:
            return o
        return SqrtPiScaled(self.coeff * o.coeff, self.pi_half_power + o.pi_half_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_spi(other)
        if o is NotImplemented:
            return o
        if o.coeff == 0:
            raise ZeroDivisionError("SqrtPiScaled division by zero")
        return SqrtPiScaled(self.coeff / o.coeff, self.pi_half_power - o.pi_half_power)

    def __rtruediv__(self, other):
        return _coerce_spi(other) / self

    def __neg__(self):
        return SqrtPiScaled(-self.coeff, self.pi_half_power)

    def __add__(self, other):
        o = _coerce_spi(other)
        if o is NotImplemented:
            return o
        if self.coeff == 0:
            return o
        if o.coeff == 0:
            return self
        if o.pi_half_power != self.pi_half_power:
            raise ValueError("cannot add values with different powers of sqrt(pi)")
        return SqrtPiScaled(self.coeff + o.coeff, self.pi_half_power)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce_spi(other))

    def __eq__(self, other):
        o = _coerce_spi(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeff == o.coeff and (
            self.coeff == 0 or self.pi_half_power == o.pi_half_power
        )

    def __hash__(self):
        return hash((self.coeff, self.pi_half_power if self.coeff else 0))

    @property
    def is_rational(self) -> bool:
        return self.pi_half_power == 0 or self.coeff == 0

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self.coeff

    def __float__(self):
        return float(self.coeff) * math.pi ** (self.pi_half_power / 2)

    def __repr__(self):
        return f"SqrtPiScaled({self.coeff}, pi^({self.pi_half_power}/2))"


def _coerce_spi(x):
    if isinstance(x, SqrtPiScaled):
        return x
    if isinstance(x, (int, Fraction)):
        return SqrtPiScaled(Fraction(x), 0)
    return NotImplemented


class GammaPole(ArithmeticError):
    """Gamma evaluated at a non-positive integer."""


# ---------------------------------------------------------------------------
# combinatorics


def binomial(a, k: int) -> Fraction:
    """Generalized binomial ``a (a-1) ... (a-k+1) / k!``.

    Works for any rational upper index; for integer ``0 <= a < k`` the
    falling factorial hits zero, so the result is 0.
    """
    if k < 0:
        raise ValueError("binomial lower index must be >= 0")
    a = as_fraction(a)
    if a.denominator == 1 and a >= 0:
        return Fraction(math.comb(int(a), k))
    num = Fraction(1)
    for i in range(k):
        num *= a - i
    return num / math.factorial(k)


def comb(n: int, k: int) -> int:
    """Integer binomial that is 0 outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# Gaussian integers as (re, im) pairs of Python ints; these avoid the gcd
# normalisation of Fraction when a whole computation shares one denominator


def gauss_mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def gauss_pow(a: tuple[int, int], k: int) -> tuple[int, int]:
    out = (1, 0)
    for _ in range(k):
        out = gauss_mul(out, a)
    return out


def gauss_quotient(num: tuple[int, int], den: tuple[int, int]) -> complex:
    """num / den rounded once per component."""
    mod = den[0] ** 2 + den[1] ** 2
    if not mod:
        raise ZeroDivisionError("Gaussian integer division by zero")
    q = gauss_mul(num, (den[0], -den[1]))
    return complex(Fraction(q[0], mod), Fraction(q[1], mod))


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial ``(a)_k``; ``(a)_0 = 1``."""
    if k < 0:
        raise ValueError("pochhammer requires k >= 0; use pochhammer_signed")
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def pochhammer_signed(a, k: int) -> Fraction:
    """``(a)_k`` extended to negative k via ``(a)_{-k} = 1/(a-k)_k``."""
    if k >= 0:
        return pochhammer(a, k)
    den = pochhammer(as_fraction(a) + k, -k)
    if den == 0:
        raise ZeroDivisionError(f"({a})_{k} is undefined")
    return 1 / den


def gamma_half_int(two_a: int) -> SqrtPiScaled:
    """Exact Gamma(two_a / 2) for a positive integer ``two_a``."""
    if two_a <= 0:
        raise GammaPole(f"Gamma({Fraction(two_a, 2)}) is a pole")
    if two_a % 2 == 0:
        return SqrtPiScaled(Fraction(math.factorial(two_a // 2 - 1)), 0)
    n = (two_a - 1) // 2
    # Gamma(n + 1/2) = (2n)! / (4^n n!) * sqrt(pi)
    return SqrtPiScaled(Fraction(math.factorial(2 * n), 4**n * math.factorial(n)), 1)


def gamma_exact(x) -> SqrtPiScaled:
    """Gamma at an integer or half-integer rational argument."""
    x = as_fraction(x)
    two_x = 2 * x
    if two_x.denominator != 1:
        raise ValueError(f"Gamma({x}) is not an integer or half-integer argument")
    two_x = int(two_x)
    if two_x > 0:
        return gamma_half_int(two_x)
    if two_x % 2 == 0:
        raise GammaPole(f"Gamma({x}) is a pole")
    # negative half-integer: Gamma(x) = Gamma(x + k) / (x)_k
    k = -(two_x - 1) // 2
    return gamma_half_int(two_x + 2 * k) / pochhammer(x, k)


def rgamma_exact(x) -> SqrtPiScaled:
    """Reciprocal Gamma, zero at the poles."""
    try:
        return 1 / gamma_exact(x)
    except GammaPole:
        return SqrtPiScaled(Fraction(0))


def beta_half_int(two_a: int, two_b: int) -> SqrtPiScaled:
    """Exact Beta(two_a/2, two_b/2) through the Gamma quotient."""
    return gamma_half_int(two_a) * gamma_half_int(two_b) / gamma_half_int(two_a + two_b)


def gamma_ratio(x, y) -> Fraction:
    """Gamma(x) / Gamma(y) for ``x - y`` an integer, as a limit where needed.

    Poles in both arguments cancel; a pole only in the numerator raises
    :class:`GammaPole`.
    """
    x, y = as_fraction(x), as_fraction(y)
    diff = x - y
    if diff.denominator != 1:
        raise ValueError("gamma_ratio needs arguments differing by an integer")
    k = int(diff)
    if k >= 0:
        return pochhammer(y, k)
    den = pochhammer(x, -k)
    if den == 0:
        raise GammaPole(f"Gamma({x})/Gamma({y}) has an uncancelled pole")
    return 1 / den


def gamma_quotient(numer: Iterable, denom: Iterable) -> SqrtPiScaled:
    """Exact ``prod Gamma(numer) / prod Gamma(denom)``.

    Numerator and denominator arguments differing by an integer are paired
    first and reduced to Pochhammer symbols, so poles cancel in the limit
    sense. Leftover arguments must be (half-)integers.
    """
    num = [as_fraction(v) for v in numer]
    den = [as_fraction(v) for v in denom]
    out = SqrtPiScaled(Fraction(1))
    rest_num = []
    for x in num:
        for j, y in enumerate(den):
            if (x - y).denominator == 1:
                out = out * gamma_ratio(x, y)
                del den[j]
                break
        else:
            rest_num.append(x)
    for x in rest_num:
        out = out * gamma_exact(x)
    for y in den:
        out = out * rgamma_exact(y)
    return out
