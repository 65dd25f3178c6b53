"""Special functions: Bernoulli numbers and polynomials, Eulerian numbers,
negative-order polylogarithms, zeta at integers, and exponent-scaled
modified Bessel functions of integer order.

Bernoulli values are exact ``Fraction`` objects (``B_1 = -1/2``), cached up to
index ``BERNOULLI_CACHE``.  The Bessel routine returns :class:`LogScaled`
values so arguments of several thousand are fine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import CapabilityError, DomainError
from .logscaled import LogScaled

BERNOULLI_CACHE = 64
EULERIAN_MAX = 30
BESSEL_SWITCH = 30.0
BESSEL_MAX_ORDER = 16


@lru_cache(maxsize=None)
def _bernoulli_numbers():
    # B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    nums = [Fraction(1)]
    for m in range(1, BERNOULLI_CACHE + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * nums[j]
        nums.append(-acc / (m + 1))
    return tuple(nums)


def bernoulli_number(n: int) -> Fraction:
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n > BERNOULLI_CACHE:
        raise CapabilityError(f"Bernoulli cache holds indices up to {BERNOULLI_CACHE}")
    return _bernoulli_numbers()[n]


def bernoulli_poly(n: int, x) -> Fraction:
    """Exact ``B_n(x)`` for rational ``x``.

    >>> bernoulli_poly(1, Fraction(1, 3))
    Fraction(-1, 6)
    """
    if n > BERNOULLI_CACHE:
        raise CapabilityError(f"Bernoulli cache holds indices up to {BERNOULLI_CACHE}")
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    x = Fraction(x)
    nums = _bernoulli_numbers()
    acc = Fraction(0)
    for j in range(n + 1):
        acc += math.comb(n, j) * nums[j] * x ** (n - j)
    return acc


def zeta_int(n: int) -> float:
    """Riemann zeta at an integer ``n >= 2``.

    Even arguments use the Bernoulli closed form; odd ones sum 1000 terms and
    add the Euler-Maclaurin tail, whose neglected part is below 1e-18.
    """
    if n < 2:
        raise DomainError("zeta_int needs n >= 2")
    if n % 2 == 0 and n <= BERNOULLI_CACHE:
        b = bernoulli_number(n)
        return float(abs(b) * Fraction(1, 2 * math.factorial(n))) * (2 * math.pi) ** n
    J = 1000
    head = math.fsum(j ** -float(n) for j in range(J, 0, -1))
    tail = J ** (1.0 - n) / (n - 1) - 0.5 * J ** -float(n) + n * J ** (-n - 1.0) / 12
    return head + tail


def lehmer_bound(n: int) -> float:
    """Upper bound ``2 zeta(n) n! / (2 pi)^n`` for ``|B_n(x)|`` on ``[0, 1]``."""
    if n < 2:
        raise DomainError("lehmer_bound needs n >= 2")
    # log form keeps n! / (2pi)^n finite for large n
    return 2.0 * zeta_int(n) * math.exp(math.lgamma(n + 1) - n * math.log(2 * math.pi))


@lru_cache(maxsize=None)
def _eulerian(N: int):
    row = [1]
    for n in range(2, N + 1):
        new = []
        for m in range(n):
            left = (n - m) * row[m - 1] if m >= 1 else 0
            right = (m + 1) * row[m] if m < len(row) else 0
            new.append(left + right)
        row = new
    return tuple(row)


def eulerian_row(N: int) -> list[int]:
    """Eulerian numbers ``<N,0> .. <N,N-1>``."""
    if N < 1:
        raise DomainError("eulerian_row needs N >= 1")
    if N > EULERIAN_MAX:
        raise CapabilityError(f"eulerian_row supports N <= {EULERIAN_MAX}")
    return list(_eulerian(N))


def polylog_neg(N: int, q: complex) -> complex:
    """``Li_{-N}(q)`` from its rational form, for ``|q| <= 0.99``."""
    if N < 0:
        raise DomainError("order must be N >= 0")
    q = complex(q)
    if abs(q) >= 1:
        raise DomainError("polylog_neg needs |q| < 1")
    if abs(q) > 0.99:
        raise DomainError("polylog_neg is restricted to |q| <= 0.99")
    if N == 0:
        return q / (1 - q)
    row = _eulerian(N)
    num = 0j
    # Horner in q on sum_m <N,m> q^{N-m}
    for coeff in row:
        num = num * q + coeff
    num *= q
    return num / (1 - q) ** (N + 1)


# ---------------------------------------------------------------------------
# modified Bessel functions


def _bessel_series_log(s: int, x: float):
    """log I_s(x) from the power series; terms are all positive."""
    y = 0.25 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= y / (m * (m + s))
        total += term
        if term < 1e-18 * total and m > y:
            break
        if m > 4000:
            break
    base = s * math.log(0.5 * x) - math.lgamma(s + 1) if s else 0.0
    return base + math.log(total), 4e-16 * m


def _bessel_asymptotic(s: int, x: float):
    """Scaled sum e^{-x} sqrt(2 pi x) I_s(x) and a bound on its relative error.

    The series is cut at its smallest term or once terms drop below 1e-17.
    The remainder is at most ``2 chi(l) exp((s^2 - 1/4)/x)`` times the first
    omitted term; the exponentially small companion series adds ``e^{-2x}``.
    """
    mu = 4.0 * s * s
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if nxt == 0.0 or abs(nxt) >= abs(term) or abs(term) < 1e-17 * abs(total):
            omitted = abs(nxt)
            break
        total += nxt
        term = nxt
    chi = math.sqrt(math.pi) * math.exp(math.lgamma(k / 2 + 1) - math.lgamma(k / 2 + 0.5))
    bound = 2 * chi * math.exp(max(s * s - 0.25, 0.0) / x) * omitted + math.exp(-2 * x)
    return total, bound / abs(total) + 4e-16 * k


def scaled_bessel_I_with_error(s: int, x: float):
    """``I_{-s}(x) = I_s(x)`` as :class:`LogScaled`, plus a relative error bound."""
    s = abs(int(s))
    if s > BESSEL_MAX_ORDER:
        raise DomainError(f"integer order up to {BESSEL_MAX_ORDER} supported")
    x = float(x)
    if not x > 0:
        raise DomainError("scaled_bessel_I needs x > 0")
    if x <= max(BESSEL_SWITCH, float(s * s)):
        lg, err = _bessel_series_log(s, x)
        return LogScaled.from_log(lg), err
    total, err = _bessel_asymptotic(s, x)
    # split off floor(x) exactly so large arguments keep full precision
    whole = math.floor(x)
    mant = math.exp(x - whole) * total / math.sqrt(2 * math.pi * x)
    return LogScaled.from_parts(1, mant, whole), err


def scaled_bessel_I(s: int, x: float) -> LogScaled:
    """Modified Bessel ``I_{-s}(x)`` for integer ``s`` and ``x > 0``.

    Power series up to ``x = 30`` (or ``s**2`` for high orders), the
    large-argument expansion beyond.
    Relative error is below 1e-12 throughout.
    """
    return scaled_bessel_I_with_error(s, x)[0]
