"""Exact scalar arithmetic over rationals with a symbolic pi factor.

An ExactScalar is q * pi**k with q a Fraction and k a nonnegative integer.
The type is closed under multiplication and division; addition is only
defined between scalars carrying the same pi power (or zero), so a rational
and a rational multiple of pi can never be silently mixed.  Conversion to
float is explicit via float().
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot build an exact scalar from {value!r}")


class ExactScalar:
    """A rational number times an integer power of pi."""

    __slots__ = ("coef", "pi_power")

    def __init__(self, coef, pi_power: int = 0):
        coef = _as_fraction(coef)
        if pi_power < 0:
            raise ValueError("pi power must be nonnegative")
        if coef == 0:
            pi_power = 0
        self.coef = coef
        self.pi_power = int(pi_power)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def rational(q) -> "ExactScalar":
        return ExactScalar(q, 0)

    @staticmethod
    def pi_multiple(q) -> "ExactScalar":
        return ExactScalar(q, 1)

    @staticmethod
    def coerce(value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return ExactScalar(_as_fraction(value), 0)

    # -- arithmetic ------------------------------------------------------------

    def _check_addable(self, other: "ExactScalar"):
        if self.coef != 0 and other.coef != 0 and self.pi_power != other.pi_power:
            raise ValueError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms exactly"
            )

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        self._check_addable(other)
        power = self.pi_power if self.coef != 0 else other.pi_power
        return ExactScalar(self.coef + other.coef, power)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.coef, self.pi_power)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        return ExactScalar(self.coef * other.coef, self.pi_power + other.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.coerce(other)
        if other.coef == 0:
            raise ZeroDivisionError("exact scalar division by zero")
        if other.pi_power > self.pi_power and self.coef != 0:
            raise ValueError("division would need a negative pi power")
        power = self.pi_power - other.pi_power if self.coef != 0 else 0
        return ExactScalar(self.coef / other.coef, max(power, 0))

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    # -- comparison ------------------------------------------------------------

    def _cmp_key(self, other: "ExactScalar"):
        self._check_addable(other)
        return (self.coef, other.coef)

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coef == other.coef and self.pi_power == other.pi_power

    def __lt__(self, other):
        other = ExactScalar.coerce(other)
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        other = ExactScalar.coerce(other)
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        other = ExactScalar.coerce(other)
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        other = ExactScalar.coerce(other)
        a, b = self._cmp_key(other)
        return a >= b

    def __hash__(self):
        return hash((self.coef, self.pi_power))

    # -- conversions -----------------------------------------------------------

    def __float__(self):
        return float(self.coef) * math.pi ** self.pi_power

    def is_zero(self) -> bool:
        return self.coef == 0

    def __repr__(self):
        if self.pi_power == 0:
            return f"ExactScalar({self.coef})"
        if self.pi_power == 1:
            return f"ExactScalar({self.coef}*pi)"
        return f"ExactScalar({self.coef}*pi^{self.pi_power})"


PI = ExactScalar(1, 1)
