"""Signed values of the form ``sign * mantissa * e**exponent``.

The main terms of the circle-method expansion grow like ``e**(pi*sqrt(2Kn/3))``
which leaves double range long before ``n = 10**5``.  ``LogScaled`` keeps the
mantissa in ``[1, e)`` and an integer natural-log exponent, so products are an
exponent addition and sums only need one rescaling.

Addition absorbs the smaller operand when the exponent gap exceeds
``ABSORPTION_GAP``; at that point the smaller value is below the last bit of
the larger one anyway.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass

ABSORPTION_GAP = 750
COMPARE_SLACK = 1e-13

_E = math.e
_EXP_M700 = math.exp(-700)
_EXP_P700 = math.exp(700)


def _scale_by_exp(value, shift):
    """``value * e**(-shift)`` without the precision loss of exp(log(value) - shift)."""
    while shift > 700:
        value *= _EXP_M700
        shift -= 700
    while shift < -700:
        value *= _EXP_P700
        shift += 700
    return value * math.exp(-shift)


def _normalize(sign, mantissa, exponent):
    """Bring ``mantissa`` (positive float) into ``[1, e)`` adjusting ``exponent``."""
    if sign == 0 or mantissa == 0.0:
        return 0, 1.0, 0
    if not math.isfinite(mantissa):
        raise OverflowError("non-finite mantissa")
    if not 1.0 <= mantissa < _E:
        shift = math.floor(math.log(mantissa))
        if shift:
            mantissa = _scale_by_exp(mantissa, shift)
            exponent += shift
    # rounding can leave the mantissa a hair outside [1, e)
    while mantissa >= _E:
        mantissa /= _E
        exponent += 1
    while mantissa < 1.0:
        mantissa *= _E
        exponent -= 1
    return sign, mantissa, exponent


@dataclass(frozen=True)
class LogScaled:
    sign: int
    mantissa: float = 1.0
    exponent: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.sign != 0 and not (1.0 <= self.mantissa < _E):
            raise ValueError("mantissa must lie in [1, e); use a constructor")

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "LogScaled":
        return cls(0, 1.0, 0)

    @classmethod
    def from_parts(cls, sign: int, mantissa: float, exponent: int = 0) -> "LogScaled":
        """Normalise an arbitrary positive ``mantissa``."""
        return cls(*_normalize(sign, float(mantissa), int(exponent)))

    @classmethod
    def from_float(cls, value: float) -> "LogScaled":
        if value == 0:
            return cls.zero()
        if not math.isfinite(value):
            raise OverflowError("cannot represent non-finite value")
        return cls.from_parts(1 if value > 0 else -1, abs(value), 0)

    @classmethod
    def from_int(cls, value: int) -> "LogScaled":
        """Exact integers of any size, to full double relative precision."""
        if value == 0:
            return cls.zero()
        sign = 1 if value > 0 else -1
        value = abs(value)
        if value.bit_length() < 1000:
            return cls.from_float(sign * float(value))
        # a float log of a huge integer carries |log| * eps absolute error
        with decimal.localcontext() as ctx:
            ctx.prec = 40
            ln = decimal.Decimal(value).ln()
            exponent = int(ln.to_integral_value(rounding=decimal.ROUND_FLOOR))
            mantissa = float((ln - exponent).exp())
        return cls.from_parts(sign, mantissa, exponent)

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> "LogScaled":
        """The value ``sign * exp(log_abs)``."""
        if sign == 0 or log_abs == -math.inf:
            return cls.zero()
        if not math.isfinite(log_abs):
            raise OverflowError("log magnitude must be finite")
        exponent = math.floor(log_abs)
        return cls.from_parts(sign, math.exp(log_abs - exponent), exponent)

    @classmethod
    def coerce(cls, value) -> "LogScaled":
        if isinstance(value, LogScaled):
            return value
        if isinstance(value, int):
            return cls.from_int(value)
        return cls.from_float(float(value))

    # inspection -------------------------------------------------------
    def log(self) -> float:
        """Natural log of the magnitude (``-inf`` for zero)."""
        if self.sign == 0:
            return -math.inf
        return math.log(self.mantissa) + self.exponent

    def to_float(self) -> float:
        """Nearest double; overflows to ``inf`` and underflows to ``0``."""
        if self.sign == 0:
            return 0.0
        if self.exponent > 709:
            return self.sign * math.inf
        if self.exponent < -745:
            return 0.0 * self.sign
        return self.sign * self.mantissa * math.exp(self.exponent)

    def __float__(self):
        return self.to_float()

    def __bool__(self):
        return self.sign != 0

    def __abs__(self):
        return LogScaled(abs(self.sign), self.mantissa, self.exponent) if self.sign else self

    def __neg__(self):
        return LogScaled(-self.sign, self.mantissa, self.exponent)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = LogScaled.coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.exponent >= other.exponent else (other, self)
        gap = big.exponent - small.exponent
        if gap > ABSORPTION_GAP:
            return big
        total = big.sign * big.mantissa + small.sign * small.mantissa * math.exp(-gap)
        if total == 0.0:
            return LogScaled.zero()
        return LogScaled.from_parts(1 if total > 0 else -1, abs(total), big.exponent)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LogScaled.coerce(other))

    def __rsub__(self, other):
        return LogScaled.coerce(other) - self

    def __mul__(self, other):
        other = LogScaled.coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogScaled.zero()
        return LogScaled.from_parts(
            self.sign * other.sign,
            self.mantissa * other.mantissa,
            self.exponent + other.exponent,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = LogScaled.coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("LogScaled division by zero")
        if self.sign == 0:
            return self
        return LogScaled.from_parts(
            self.sign * other.sign,
            self.mantissa / other.mantissa,
            self.exponent - other.exponent,
        )

    def __rtruediv__(self, other):
        return LogScaled.coerce(other) / self

    def widen(self, rel: float, outward: bool = True) -> "LogScaled":
        """Scale the magnitude by ``1 + rel`` (outward) or ``1 - rel`` (toward 0)."""
        if self.sign == 0:
            return self
        factor = 1.0 + rel if outward else 1.0 - rel
        return LogScaled.from_parts(self.sign, self.mantissa * factor, self.exponent)

    def compare(self, other, slack: float = COMPARE_SLACK) -> int:
        """Return +1, -1, or 0 when the two values agree within ``slack``.

        A zero result means "indeterminate": the difference is below the
        relative slack of the larger magnitude, so the caller should widen
        its margins rather than trust either ordering.
        """
        other = LogScaled.coerce(other)
        diff = self - other
        if diff.sign == 0:
            return 0
        scale = max(self.log(), other.log())
        if diff.log() <= scale + math.log(slack):
            return 0
        return diff.sign

    def __repr__(self):
        if self.sign == 0:
            return "LogScaled(0)"
        return f"LogScaled({self.sign * self.mantissa:.15g} e^{self.exponent})"

    def triple(self) -> str:
        """``"m e E"`` rendering used in CSV output (signed mantissa)."""
        if self.sign == 0:
            return "0 e 0"
        return f"{self.sign * self.mantissa:.12g} e {self.exponent}"


def logscaled_arith(a: LogScaled, b: LogScaled, op: str):
    """Dispatch ``add``, ``mul`` or ``compare`` on two values.

    ``compare`` returns ``"less"``, ``"greater"`` or ``"indeterminate"``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compare":
        c = a.compare(b)
        return {1: "greater", -1: "less", 0: "indeterminate"}[c]
    raise ValueError(f"unknown operation {op!r}")


def lsum(values) -> LogScaled:
    total = LogScaled.zero()
    for v in values:
        total = total + v
    return total
