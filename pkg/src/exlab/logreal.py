"""Signed log-space reals at extended precision.

Quantities like k^k, Gamma factors, and connected-graph counts overflow
hardware floats long before the parameter ranges of interest end, so all
asymptotic formulas are evaluated as LogReal: a sign in {-1, 0, +1} plus the
natural log of the magnitude, held as an mpmath float at a configurable
mantissa size (default 256 bits).

Every arithmetic operation runs under a working precision of
max(operand precisions) + guard bits. The declared relative-error budget of a
LogReal with precision_bits = b is 2^(-b/2); tests re-run whole formula
chains at 2b bits and check agreement within that budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mp

DEFAULT_PRECISION_BITS = 256
_GUARD_BITS = 16


def _wp(bits: int):
    return mp.workprec(bits + _GUARD_BITS)


@dataclass(frozen=True)
class LogReal:
    """A real number stored as (sign, ln |value|).

    log_mag is an mpmath.mpf; it is ignored when sign == 0 (kept at -inf for
    a canonical zero). Instances are immutable.
    """

    sign: int
    log_mag: mpmath.mpf
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0 and self.log_mag != mpmath.mpf("-inf"):
            object.__setattr__(self, "log_mag", mpmath.mpf("-inf"))

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, precision_bits: int = DEFAULT_PRECISION_BITS) -> "LogReal":
        return cls(0, mpmath.mpf("-inf"), precision_bits)

    @classmethod
    def one(cls, precision_bits: int = DEFAULT_PRECISION_BITS) -> "LogReal":
        return cls(1, mpmath.mpf(0), precision_bits)

    @classmethod
    def from_log(cls, log_mag, sign: int = 1,
                 precision_bits: int = DEFAULT_PRECISION_BITS) -> "LogReal":
        with _wp(precision_bits):
            return cls(sign, mpmath.mpf(log_mag), precision_bits)

    @classmethod
    def from_number(cls, x, precision_bits: int = DEFAULT_PRECISION_BITS) -> "LogReal":
        """Exact-as-possible conversion from int, Fraction, float, or mpf."""
        if isinstance(x, Rational) and not isinstance(x, int):
            x = Fraction(x)
            if x == 0:
                return cls.zero(precision_bits)
            with _wp(precision_bits):
                lm = mpmath.log(abs(x.numerator)) - mpmath.log(x.denominator)
            return cls(1 if x > 0 else -1, lm, precision_bits)
        if x == 0:
            return cls.zero(precision_bits)
        with _wp(precision_bits):
            lm = mpmath.log(abs(mpmath.mpf(x)) if not isinstance(x, int)
                            else mpmath.mpf(abs(x)))
        return cls(1 if x > 0 else -1, lm, precision_bits)

    # ------------------------------------------------------------------
    # queries

    @property
    def error_budget(self) -> float:
        """Declared relative-error bound: 2^(-precision_bits/2)."""
        return 2.0 ** (-self.precision_bits / 2)

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_mpf(self) -> mpmath.mpf:
        with _wp(self.precision_bits):
            if self.sign == 0:
                return mpmath.mpf(0)
            return self.sign * mpmath.exp(self.log_mag)

    def to_float(self) -> float:
        """float64 value; +-inf when the magnitude overflows."""
        if self.sign == 0:
            return 0.0
        if self.log_mag > 709:
            return math.inf * self.sign
        if self.log_mag < -745:
            return 0.0
        return self.sign * math.exp(float(self.log_mag))

    def ratio_to(self, other: "LogReal") -> float:
        """self/other as a float; both must be nonzero."""
        if self.sign == 0 or other.sign == 0:
            raise ZeroDivisionError("ratio_to needs two nonzero values")
        return self.sign * other.sign * math.exp(float(self.log_mag - other.log_mag))

    def to_decimal_string(self, sig_digits: int) -> str:
        """Scientific-notation rendering at the requested significant digits."""
        if self.sign == 0:
            return "0"
        with mp.workprec(max(self.precision_bits, int(sig_digits * 3.33) + 8)):
            s = mpmath.nstr(mpmath.exp(self.log_mag), sig_digits,
                            min_fixed=0, max_fixed=0, show_zero_exponent=True)
        return ("-" + s) if self.sign < 0 else s

    # ------------------------------------------------------------------
    # arithmetic

    def _bits(self, other) -> int:
        return max(self.precision_bits, getattr(other, "precision_bits", 0))

    @staticmethod
    def _coerce(x, bits: int) -> "LogReal":
        if isinstance(x, LogReal):
            return x
        return LogReal.from_number(x, bits)

    def __mul__(self, other) -> "LogReal":
        bits = self._bits(other)
        other = self._coerce(other, bits)
        s = self.sign * other.sign
        if s == 0:
            return LogReal.zero(bits)
        with _wp(bits):
            return LogReal(s, self.log_mag + other.log_mag, bits)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogReal":
        bits = self._bits(other)
        other = self._coerce(other, bits)
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal.zero(bits)
        with _wp(bits):
            return LogReal(self.sign * other.sign, self.log_mag - other.log_mag, bits)

    def __rtruediv__(self, other) -> "LogReal":
        return self._coerce(other, self._bits(other)).__truediv__(self)

    def __pow__(self, exponent) -> "LogReal":
        if self.sign == 0:
            if exponent == 0:
                return LogReal.one(self.precision_bits)
            if exponent < 0:
                raise ZeroDivisionError("0 to a negative power")
            return LogReal.zero(self.precision_bits)
        sign = self.sign
        if sign < 0:
            if isinstance(exponent, int) or (isinstance(exponent, Rational)
                                             and exponent.denominator == 1):
                sign = -1 if int(exponent) % 2 else 1
            else:
                raise ValueError("negative base with non-integer exponent")
        with _wp(self.precision_bits):
            if isinstance(exponent, Rational) and not isinstance(exponent, int):
                e = mpmath.mpf(exponent.numerator) / exponent.denominator
            else:
                e = mpmath.mpf(exponent)
            return LogReal(sign, self.log_mag * e, self.precision_bits)

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log_mag, self.precision_bits)

    def __abs__(self) -> "LogReal":
        return LogReal(abs(self.sign), self.log_mag, self.precision_bits)

    def __add__(self, other) -> "LogReal":
        bits = self._bits(other)
        other = self._coerce(other, bits)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        with _wp(bits):
            if self.log_mag >= other.log_mag:
                big, small = self, other
            else:
                big, small = other, self
            d = small.log_mag - big.log_mag  # <= 0
            if big.sign == small.sign:
                # log-sum-exp
                lm = big.log_mag + mpmath.log1p(mpmath.exp(d))
                return LogReal(big.sign, lm, bits)
            if d == 0:
                return LogReal.zero(bits)
            # |big| > |small|, opposite signs: log(|big| - |small|)
            lm = big.log_mag + mpmath.log(-mpmath.expm1(d))
            return LogReal(big.sign, lm, bits)

    __radd__ = __add__

    def __sub__(self, other) -> "LogReal":
        bits = self._bits(other)
        return self.__add__(-self._coerce(other, bits))

    def __rsub__(self, other) -> "LogReal":
        return (-self).__add__(self._coerce(other, self._bits(other)))

    # ------------------------------------------------------------------
    # comparisons (by value)

    def _cmp(self, other) -> int:
        other = self._coerce(other, self._bits(other))
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        if self.log_mag == other.log_mag:
            return 0
        bigger_mag = 1 if self.log_mag > other.log_mag else -1
        return bigger_mag * self.sign

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (LogReal, int, float, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.sign, self.log_mag))

    def __repr__(self):
        if self.sign == 0:
            return "LogReal(0)"
        return (f"LogReal(sign={self.sign:+d}, ln|x|={mpmath.nstr(self.log_mag, 12)}, "
                f"bits={self.precision_bits})")
