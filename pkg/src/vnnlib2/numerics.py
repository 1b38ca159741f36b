"""Scalar value domains: IEEE 754 binary floats with correctly rounded
arithmetic, and fixed-width two's-complement integers.

Every float scalar is held as a Python float that is exactly representable
in its nominal format (possible because binary16/32 values embed exactly
into binary64).  Each format keeps the correct-rounding guarantee its own
way:

* float64 uses native arithmetic, which is correctly rounded by definition;
* float32 computes in binary64 and rounds once more to binary32 — for
  + - x the double rounding is innocuous because 53 >= 2*24 + 2;
* float16 is emulated: exact rational arithmetic followed by a software
  round-to-nearest-even, so results do not depend on platform half support.

Decimal-to-float conversion always goes through an exact rational and a
single software rounding, avoiding decimal double-rounding entirely.
"""

from __future__ import annotations

import math
import re
import struct
from dataclasses import dataclass
from fractions import Fraction

DATA_STRING_RE = re.compile(r"-?[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?")


def signbit(x: float) -> bool:
    return math.copysign(1.0, x) < 0


def _pow2(k: int) -> Fraction:
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


@dataclass(frozen=True)
class FloatFormat:
    name: str
    precision: int  # significand bits, implicit bit included
    emin: int
    emax: int

    @property
    def max_finite(self) -> Fraction:
        return (2 - _pow2(1 - self.precision)) * _pow2(self.emax)


BINARY16 = FloatFormat("binary16", 11, -14, 15)
BINARY32 = FloatFormat("binary32", 24, -126, 127)
BINARY64 = FloatFormat("binary64", 53, -1022, 1023)


def round_nearest_even(x: Fraction, fmt: FloatFormat) -> float:
    """Round an exact rational to `fmt`, ties to even, overflow to infinity.

    Returns the value as a Python float (exact for all three formats);
    a negative value underflowing to zero comes back as -0.0.
    """
    if x == 0:
        return 0.0
    sign = -1.0 if x < 0 else 1.0
    q = -x if x < 0 else x
    e = q.numerator.bit_length() - q.denominator.bit_length()
    if q >= _pow2(e + 1):
        e += 1
    elif q < _pow2(e):
        e -= 1
    ulp_exp = max(e, fmt.emin) - (fmt.precision - 1)
    m = q / _pow2(ulp_exp)
    k = m.numerator // m.denominator
    rem = m - k
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and k % 2 == 1):
        k += 1
    if k == 0:
        return sign * 0.0
    if k * _pow2(ulp_exp) > fmt.max_finite:
        return sign * math.inf
    return sign * math.ldexp(float(k), ulp_exp)


def _struct_round(x: float, code: str) -> float:
    # struct raises instead of producing an infinity on overflow
    try:
        return struct.unpack(code, struct.pack(code, x))[0]
    except OverflowError:
        return math.copysign(math.inf, x)


def narrow_to_binary32(x: float) -> float:
    return _struct_round(x, "<f")


def narrow_to_binary16(x: float) -> float:
    return _struct_round(x, "<e")


def fraction_from_decimal(text: str) -> Fraction:
    """Exact value of a decimal string (optionally with an exponent part)."""
    return Fraction(text)


class FloatDType:
    """One floating-point element type with correctly rounded + - x."""

    kind = "float"

    def __init__(self, name: str, fmt: FloatFormat):
        self.name = name
        self.fmt = fmt

    def __repr__(self):
        return f"FloatDType({self.name})"

    # -- literals ---------------------------------------------------------

    def judge_literal(self, text: str) -> bool:
        return True  # every decimal literal rounds to some value

    def of_decimal(self, text: str) -> float:
        value = round_nearest_even(fraction_from_decimal(text), self.fmt)
        if value == 0.0 and text.lstrip().startswith("-"):
            return -0.0
        return value

    # -- arithmetic ---------------------------------------------------------

    def _round_exact(self, result: Fraction, negative_zero: bool) -> float:
        if result == 0:
            return -0.0 if negative_zero else 0.0
        return round_nearest_even(result, self.fmt)

    def add(self, a: float, b: float) -> float:
        if self.fmt is BINARY64:
            return a + b
        if self.fmt is BINARY32:
            return narrow_to_binary32(a + b)
        if math.isfinite(a) and math.isfinite(b):
            return self._round_exact(Fraction(a) + Fraction(b), signbit(a) and signbit(b))
        return a + b  # specials carry no rounding

    def sub(self, a: float, b: float) -> float:
        if self.fmt is BINARY64:
            return a - b
        if self.fmt is BINARY32:
            return narrow_to_binary32(a - b)
        if math.isfinite(a) and math.isfinite(b):
            return self._round_exact(Fraction(a) - Fraction(b), signbit(a) and not signbit(b))
        return a - b

    def mul(self, a: float, b: float) -> float:
        if self.fmt is BINARY64:
            return a * b
        if self.fmt is BINARY32:
            # binary64 holds products of binary32 values exactly
            return narrow_to_binary32(a * b)
        if math.isfinite(a) and math.isfinite(b):
            return self._round_exact(Fraction(a) * Fraction(b), signbit(a) != signbit(b))
        return a * b

    def neg(self, a: float) -> float:
        return -a

    def relu(self, a: float) -> float:
        if math.isnan(a):
            return a
        return a if a > 0.0 else 0.0

    def zero(self) -> float:
        return 0.0

    # -- membership ---------------------------------------------------------

    def contains(self, value) -> bool:
        if not isinstance(value, float):
            return False
        if not math.isfinite(value) or value == 0.0:
            return True
        return round_nearest_even(Fraction(value), self.fmt) == value


class IntDType:
    """A two's-complement integer element type; arithmetic wraps on overflow."""

    kind = "int"

    def __init__(self, name: str, bits: int):
        self.name = name
        self.bits = bits
        self.min = -(1 << (bits - 1))
        self.max = (1 << (bits - 1)) - 1

    def __repr__(self):
        return f"IntDType({self.name})"

    def _wrap(self, v: int) -> int:
        span = 1 << self.bits
        return (v - self.min) % span + self.min

    def judge_literal(self, text: str) -> bool:
        value = Fraction(text)
        return value.denominator == 1 and self.min <= value <= self.max

    def of_decimal(self, text: str) -> int:
        value = fraction_from_decimal(text)
        if value.denominator != 1:
            raise ValueError(f"{text!r} is not an integer value")
        if not self.min <= value <= self.max:
            raise ValueError(f"{text!r} does not fit {self.name}")
        return int(value)

    def add(self, a: int, b: int) -> int:
        return self._wrap(a + b)

    def sub(self, a: int, b: int) -> int:
        return self._wrap(a - b)

    def mul(self, a: int, b: int) -> int:
        return self._wrap(a * b)

    def neg(self, a: int) -> int:
        return self._wrap(-a)

    def relu(self, a: int):
        raise TypeError(f"relu is undefined for {self.name}")

    def zero(self) -> int:
        return 0

    def contains(self, value) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and (
            self.min <= value <= self.max
        )


def compare(op: str, a, b) -> bool:
    """IEEE-faithful comparison; NaN is unordered and only satisfies !=."""
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    raise ValueError(f"unknown comparison {op!r}")


def shortest_decimal(value, dtype) -> str:
    """Shortest decimal string that converts back to `value` under `dtype`."""
    if dtype.kind == "int":
        return str(value)
    if not math.isfinite(value):
        raise ValueError("non-finite values have no decimal form")
    for digits in range(1, 18):
        text = f"{value:.{digits}g}"
        round_tripped = dtype.of_decimal(text)
        if round_tripped == value and signbit(round_tripped) == signbit(value):
            return text
    return repr(value)
