"""Generating functions on the q-disk and checks of the explicit arc bounds.

Writing ``q = exp(-z)`` with ``z = eta + i y``:

* ``xi_k(q) = (q^k; q^k)_inf / (q; q)_inf`` is the k-regular generating function;
* its modular form is ``Phi_k(z) * P(eps^k) / P(eps)`` with
  ``eps = exp(-4 pi^2/(k z))`` and
  ``Phi_k(z) = k^{-1/2} exp(pi^2 K/(6z) + z (k-1)/24)``;
* ``L_k(r,t;q) = sum_{l >= 0} E_k((l t + r) z)`` where
  ``E_k(w) = 1/(e^w - 1) - k/(e^{kw} - 1)``.

:func:`verify_bound` evaluates one explicit inequality at one admissible
point.  Every left-hand side carries its own truncation and rounding
allowance, so a reported ``holds=True`` is conservative.  Quantities that can
exceed double range (the xi bounds) are compared as natural logs; those
instances have ``log_scale=True``.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.special import iv

from .errors import AccuracyError, DomainError, PreconditionError
from .series import ell_array
from .specfun import _eulerian, bernoulli_number, bernoulli_poly

TAIL_TARGET = 1e-18
MAX_TERMS = 2_000_000


class BoundId(str, Enum):
    MAJOR_L = "MAJOR_L"
    MAJOR_L_ABS = "MAJOR_L_ABS"
    MAJOR_XI = "MAJOR_XI"
    MINOR_XI = "MINOR_XI"
    MINOR_L = "MINOR_L"
    BESSEL_TAIL = "BESSEL_TAIL"
    LOGP_ABS = "LOGP_ABS"
    EKM_SERIES = "EKM_SERIES"


@dataclass(frozen=True)
class ArcPoint:
    eta: float
    y: float
    delta: float

    def __post_init__(self):
        if not self.eta > 0:
            raise DomainError("eta must be positive")
        if not self.delta > 1:
            raise DomainError("delta must exceed 1")

    @property
    def Delta(self) -> float:
        return math.sqrt(self.delta * self.delta - 1.0)

    @property
    def z(self) -> complex:
        return complex(self.eta, self.y)

    @property
    def region(self) -> str:
        return "major" if abs(self.y) <= self.Delta * self.eta else "minor"


@dataclass
class BoundInstance:
    bound_id: str
    params: dict
    lhs: float
    rhs: float
    holds: bool
    margin: float
    log_scale: bool = False
    notes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series result: ``log`` is the complex log when available."""

    value: complex
    tail: float
    terms: int
    log: complex | None = None


# ---------------------------------------------------------------------------
# accurate complex elementary functions


def cexpm1(w: complex) -> complex:
    """``exp(w) - 1`` without cancellation for small ``w``."""
    a, b = w.real, w.imag
    re = math.expm1(a) * math.cos(b) - 2.0 * math.sin(0.5 * b) ** 2
    im = math.exp(a) * math.sin(b)
    return complex(re, im)


def clog1p(w: complex) -> complex:
    """``log(1 + w)`` accurate for small ``w``."""
    a, b = w.real, w.imag
    if abs(w) > 0.5:
        return cmath.log(1 + w)
    re = 0.5 * math.log1p(a * (2.0 + a) + b * b)
    im = math.atan2(b, 1.0 + a)
    return complex(re, im)


def _np_expm1(w):
    a, b = w.real, w.imag
    return (np.expm1(a) * np.cos(b) - 2.0 * np.sin(0.5 * b) ** 2) + 1j * (np.exp(a) * np.sin(b))


def _np_log1p(w):
    a, b = w.real, w.imag
    return 0.5 * np.log1p(a * (2.0 + a) + b * b) + 1j * np.arctan2(b, 1.0 + a)


# ---------------------------------------------------------------------------
# Phi_k and the xi_k product


@dataclass(frozen=True)
class ExpComplex:
    """The complex number ``exp(w)`` held through its logarithm ``w``."""

    w: complex

    @property
    def log_abs(self) -> float:
        return self.w.real

    @property
    def phase(self) -> float:
        return self.w.imag

    def to_complex(self) -> complex:
        return cmath.exp(self.w)

    def conjugate(self) -> "ExpComplex":
        return ExpComplex(self.w.conjugate())


def _log_phi(k, z):
    K = 1.0 - 1.0 / k
    return math.pi ** 2 * K / (6 * z) + z * (k - 1) / 24 - 0.5 * math.log(k)


def phi(k: int, z: complex) -> ExpComplex:
    """``Phi_k(z) = k^{-1/2} exp(pi^2 K /(6z) + z (k-1)/24)`` in scaled form."""
    z = complex(z)
    if not z.real > 0:
        raise DomainError("phi needs Re z > 0")
    return ExpComplex(_log_phi(k, z))


def terms_needed(abs_q: float, target: float = TAIL_TARGET) -> int:
    """Smallest M with ``|q|^M < target * (1 - |q|)``."""
    if abs_q <= 0:
        return 1
    if abs_q >= 1:
        raise AccuracyError("|q| >= 1: the product does not converge", None)
    return max(1, math.ceil(math.log(target * (1 - abs_q)) / math.log(abs_q)))


def _log_euler_sum(z, M, scale=1):
    """sum_{n <= M} log(1 - exp(-scale*n*z)) as a complex number."""
    n = np.arange(1, M + 1, dtype=float) * scale
    w = -np.exp(-n * z)
    return complex(np.sum(_np_log1p(w)))


def xi_numeric(k: int, z: complex, M: int | None = None) -> SeriesValue:
    """Truncated product ``prod_{n <= M} (1 - q^{kn}) / (1 - q^n)``.

    The log of the neglected factors is at most ``4|q|^{M+1}/(1-|q|)``, which
    is reported as the (relative) tail.
    """
    z = complex(z)
    if not z.real > 0:
        raise DomainError("xi_numeric needs Re z > 0")
    aq = math.exp(-z.real)
    need = terms_needed(aq)
    if M is None:
        M = need
    if M < need or M > MAX_TERMS:
        raise AccuracyError(f"q too close to 1: need M >= {need} terms", need)
    lg = _log_euler_sum(z, M, k) - _log_euler_sum(z, M, 1)
    tail = 4 * aq ** (M + 1) / (1 - aq)
    val = cmath.exp(lg) if lg.real < 700 else complex(math.inf, math.inf)
    return SeriesValue(val, tail, M, lg)


def _log_partition_small(w: complex):
    """log P(w) = -sum log(1 - w^m) for |w| < 1/2, with a tail bound."""
    aw = abs(w)
    if aw == 0:
        return 0j, 0.0
    if aw >= 0.5:
        M = terms_needed(aw)
        total = 0j
        for m in range(1, M + 1):
            total -= clog1p(-(w ** m))
        return total, 4 * aw ** (M + 1) / (1 - aw)
    total = 0j
    m = 1
    wm = w
    while True:
        total -= clog1p(-wm)
        m += 1
        wm = wm * w
        if abs(wm) < 1e-300 or abs(wm) < 1e-18 * max(abs(total), 1e-300):
            break
    return total, 2 * abs(wm) / (1 - aw)


def xi_transform_log(k: int, z: complex):
    """log xi_k via the modular form; returns (log value, log of eps-correction, tail)."""
    z = complex(z)
    if not z.real > 0:
        raise DomainError("needs Re z > 0")
    u = -4 * math.pi ** 2 / (k * z)
    eps = cmath.exp(u) if u.real > -745 else 0j
    lp_eps, t1 = _log_partition_small(eps)
    lp_epsk, t2 = _log_partition_small(cmath.exp(k * u) if (k * u).real > -745 else 0j)
    corr = lp_epsk - lp_eps
    return _log_phi(k, z) + corr, corr, t1 + t2


# ---------------------------------------------------------------------------
# E_k and L_k


@lru_cache(maxsize=None)
def _ek_series_coeffs(k, N):
    """Coefficients c_j of E_k^{(N)}(z) = sum_j c_j z^j, j + N + 1 <= 64."""
    out = []
    for j in range(0, 64 - N):
        m = j + N
        e = Fraction(1 - k ** (m + 1)) * bernoulli_number(m + 1) / (m + 1)
        out.append(float(e / math.factorial(j)))
    return tuple(out)


def ek_series_coefficient(k: int, m: int) -> Fraction:
    """``e_{k,m} = (1 - k^{m+1}) B_{m+1} / (m+1)``."""
    return Fraction(1 - k ** (m + 1)) * bernoulli_number(m + 1) / (m + 1)


def _ek_series(k, z, N):
    coeffs = _ek_series_coeffs(k, N)
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _ek_polylog_mp(k, z, N):
    # digits lost to cancellation grow like (N+1) log10(1/|z|)
    loss = (N + 2) * max(0.0, math.log10(1.0 / abs(z))) + N * math.log10(k + 1)
    with mpmath.workdps(25 + int(loss)):
        zz = mpmath.mpc(z.real, z.imag)

        def li(w):
            # Li_{-N}(e^{-w}) with 1 - q = -expm1(-w)
            q = mpmath.exp(-w)
            one_minus = -mpmath.expm1(-w)
            if N == 0:
                return q / one_minus
            num = mpmath.mpf(0)
            for c in _eulerian(N):
                num = num * q + c
            return num * q / one_minus ** (N + 1)

        val = li(zz) - mpmath.mpf(k) ** (N + 1) * li(k * zz)
        if N % 2:
            val = -val
        return complex(val)


def E_k_eval(k: int, z: complex, N: int = 0, method: str = "auto") -> complex:
    """N-th derivative of ``E_k(z) = 1/(e^z - 1) - k/(e^{kz} - 1)``.

    ``method`` is ``"series"`` (power series, ``|z| < 2 pi / k``), ``"polylog"``
    (the negative-order polylogarithm form) or ``"auto"``.
    """
    z = complex(z)
    if z == 0:
        if N + 1 > 64:
            raise DomainError("derivative order too large")
        return complex(_ek_series_coeffs(k, N)[0])
    if method == "auto":
        method = "series" if abs(z) <= 1.0 / k else "polylog"
    if method == "series":
        if abs(z) >= 2 * math.pi / k * 0.75:
            raise DomainError("series branch needs |z| < 1.5 pi / k for full accuracy")
        return _ek_series(k, z, N)
    if method != "polylog":
        raise ValueError(f"unknown method {method!r}")
    if N == 0 and abs(z) > 0.05:
        return 1.0 / cexpm1(z) - k / cexpm1(k * z)
    return _ek_polylog_mp(k, z, N)


def _ek_vector(k, w):
    """E_k on an array, series near 0 and expm1 form elsewhere."""
    out = np.empty_like(w)
    small = np.abs(w) <= 1.0 / k
    big = ~small
    if big.any():
        wb = w[big]
        out[big] = 1.0 / _np_expm1(wb) - k / _np_expm1(k * wb)
    for idx in np.nonzero(small)[0]:
        out[idx] = _ek_series(k, complex(w[idx]), 0)
    return out


def L_numeric(k: int, r: int, t: int, z: complex, M: int | None = None) -> SeriesValue:
    """``sum_{l <= M} E_k((l t + r) z)`` plus a geometric tail bound.

    With ``a = Re z``, ``|E_k(w)| <= (1 + k) e^{-Re w} / (1 - e^{-Re w})``, so the
    tail past ``M`` is below ``(1+k) e^{-((M+1)t + r)a} / (1 - e^{-ta})^2``.
    """
    z = complex(z)
    a = z.real
    if not a > 0:
        raise DomainError("L_numeric needs Re z > 0")
    if not 1 <= r <= t:
        raise DomainError("need 1 <= r <= t")
    denom = (1 - math.exp(-t * a)) ** 2
    # smallest M with tail below TAIL_TARGET
    need = max(0, math.ceil((math.log((1 + k) / (TAIL_TARGET * denom)) / a - r) / t))
    if M is None:
        M = need
    if M < need or M > MAX_TERMS:
        raise AccuracyError(f"need at least {need} terms for Re z = {a}", need)
    ell = np.arange(0, M + 1, dtype=float)
    w = (ell * t + r) * z
    vals = _ek_vector(k, w)
    total = complex(np.sum(vals))
    tail = (1 + k) * math.exp(-((M + 1) * t + r) * a) / denom
    # rounding allowance: each term carries ~ 4 ulp relative
    rounding = 1e-15 * float(np.sum(np.abs(vals))) + 1e-16 * abs(total)
    return SeriesValue(total, tail + rounding, M + 1)


def L_divisor_series(k: int, r: int, t: int, q: complex, N: int = 200) -> complex:
    """``sum_{n <= N} l(n) q^n`` from the sieved coefficients."""
    coeffs = ell_array(k, r, t, N)
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * q + int(c)
    return acc


def log_partition(q: float) -> tuple[float, float]:
    """``log P(q) = -sum log(1 - q^n)`` for real ``0 < q < 1`` with tail bound."""
    if not 0 < q < 1:
        raise DomainError("log_partition needs 0 < q < 1")
    M = terms_needed(q)
    if M > MAX_TERMS:
        raise AccuracyError(f"need {M} terms", M)
    n = np.arange(1, M + 1, dtype=float)
    vals = -np.log1p(-np.exp(n * math.log(q)))
    total = float(math.fsum(vals))
    tail = 2 * q ** (M + 1) / (1 - q)
    return total, tail + 1e-15 * total


# ---------------------------------------------------------------------------
# the bounds


def _instance(bound_id, params, lhs, rhs, log_scale=False, notes=None):
    holds = bool(lhs <= rhs)
    return BoundInstance(bound_id.value, params, float(lhs), float(rhs), holds,
                         float(rhs - lhs), log_scale, notes or {})


def _require(cond, bound_id, message):
    if not cond:
        raise PreconditionError(f"{bound_id.value}: hypothesis violated: {message}")


def _bern(n, r, t):
    return float(bernoulli_poly(n, Fraction(r, t)))


def _major_l(k, t, r, point):
    bid = BoundId.MAJOR_L
    z = point.z
    _require(abs(point.y) < point.Delta * point.eta, bid, "|y| < Delta*eta")
    _require(abs(z) <= math.pi / (k * t), bid, "|z| <= pi/(k t)")
    L = L_numeric(k, r, t, z)
    tz = t * z
    approx = (math.log(k) / tz - (k - 1) / 2 * _bern(1, r, t)
              + (k * k - 1) / 24 * _bern(2, r, t) * tz
              - (k ** 4 - 1) / 2880 * _bern(4, r, t) * tz ** 3)
    diff = abs(L.value - approx)
    lhs = diff + L.tail + 1e-15 * abs(approx)
    d = point.delta
    rhs = (1.94 * d ** 7 * k ** 6 / (30240 * math.pi ** 6) + 0.1216 * k ** 6 / 30240
           + 0.0412 * k ** 6) * abs(tz) ** 5
    return _instance(bid, {"k": k, "t": t, "r": r, **_pt(point)}, lhs, rhs)


def _major_l_abs(k, t, r, point):
    bid = BoundId.MAJOR_L_ABS
    _require(abs(point.y) < point.Delta * point.eta, bid, "|y| < Delta*eta")
    _require(point.eta < math.pi / (k * t * point.delta), bid, "eta < pi/(k t delta)")
    L = L_numeric(k, r, t, point.z)
    atz = abs(t * point.z)
    lhs = abs(L.value) + L.tail
    rhs = (41 + math.log(k)) / atz + 1.94 * point.delta ** 7 / (30240 * atz)
    return _instance(bid, {"k": k, "t": t, "r": r, **_pt(point)}, lhs, rhs)


def _major_xi(k, point):
    bid = BoundId.MAJOR_XI
    d = point.delta
    _require(abs(point.y) <= point.Delta * point.eta, bid, "|y| <= Delta*eta")
    _require(point.eta < 4 * math.pi ** 2 / (2.35 * d), bid, "eta < 4 pi^2/(2.35 delta)")
    _require(point.eta < 2 * math.pi ** 2 / (d * d * k), bid, "eta < 2 pi^2/(delta^2 k)")
    z = point.z
    log_xi, corr, tail = xi_transform_log(k, z)
    log_phi_abs = _log_phi(k, z).real
    rel = abs(cexpm1(corr))
    # xi - Phi = Phi * (exp(corr) - 1); the tail perturbs corr by at most `tail`
    rel_upper = rel + tail * (1 + rel) * 1.01 + 1e-15 * rel
    lhs = log_phi_abs + math.log(rel_upper) if rel_upper > 0 else -math.inf
    log_eps_abs = (-4 * math.pi ** 2 / (k * z)).real
    rhs = math.log(7) + log_phi_abs + log_eps_abs
    if lhs == -math.inf:
        lhs = -1e300
    return _instance(bid, {"k": k, **_pt(point)}, lhs, rhs, log_scale=True)


def _minor_xi(k, point):
    bid = BoundId.MINOR_XI
    d, eta = point.delta, point.eta
    _require(point.Delta * eta <= abs(point.y) <= math.pi, bid, "Delta*eta <= |y| <= pi")
    _require(0 < eta < 12 * math.log(k) / k, bid, "0 < eta < 12 log k / k")
    xi = xi_numeric(k, point.z)
    lhs = xi.log.real + xi.tail * 1.01 + 1e-12
    K = 1 - 1 / k
    rhs = math.log(3) + math.pi ** 2 * K / (6 * eta) * (0.5 + 3 / math.pi ** 2 + 6 / (math.pi ** 2 * d * d))
    return _instance(bid, {"k": k, **_pt(point)}, lhs, rhs, log_scale=True)


def _minor_l(k, t, r, point):
    bid = BoundId.MINOR_L
    _require(0 < point.eta < 1 / k, bid, "0 < eta < 1/k")
    L = L_numeric(k, r, t, point.z)
    lhs = abs(L.value) + L.tail
    rhs = 3.1 / point.eta ** 2
    return _instance(bid, {"k": k, "t": t, "r": r, **_pt(point)}, lhs, rhs)


def bessel_tilde(nu: float, x: float, mu: float, Delta: float):
    """The vertical-segment part of the Bessel contour integral, by quadrature.

    On ``t = mu + i v`` the integrand is ``g(v) e^{mu} e^{i v}`` with
    ``g = t^{-nu-1} exp(x^2/(4t))`` slowly varying, so the cosine and sine
    weighted routines handle the oscillation.  Returns ``(value, error)``.
    """

    def g(v):
        tt = complex(mu, v)
        return tt ** (-nu - 1) * cmath.exp(x * x / (4 * tt))

    top = Delta * mu
    opts = dict(limit=2000, epsabs=0.0, epsrel=1e-10)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        c, ec = quad(lambda v: g(v).real, 0.0, top, weight="cos", wvar=1.0, **opts)
        s, es = quad(lambda v: g(v).imag, 0.0, top, weight="sin", wvar=1.0, **opts)
    if caught:
        # quadpack flagged its own estimate as unreliable; inflate it
        ec, es = 100 * ec + 1e-9 * abs(c), 100 * es + 1e-9 * abs(s)
    scale = (x / 2) ** nu * math.exp(mu) / math.pi
    return scale * (c - s), abs(scale) * (ec + es)


def bessel_tail_bound(s: int, x: float, mu: float, delta: float, drop_exp_mu: bool = False) -> float:
    """Bound on ``|I_{-s}(x) - tilde I_{-s}(x)|`` for ``s >= 1``.

    ``(1/pi)(x/2)^{-s} e^{mu} exp(x^2/(4 mu Delta^2)) sum_j (s-1)!/(s-1-j)! (delta mu)^{s-1-j}``.
    The factor ``e^{mu}`` comes from ``|e^t| = e^{mu - u}`` on the horizontal
    legs; ``drop_exp_mu=True`` drops it, which is not a valid bound in general.
    """
    Delta2 = delta * delta - 1
    c = delta * mu
    integral = sum(math.factorial(s - 1) // math.factorial(s - 1 - j) * c ** (s - 1 - j)
                   for j in range(s))
    expo = x * x / (4 * mu * Delta2) + (0.0 if drop_exp_mu else mu)
    return (x / 2) ** (-s) * math.exp(expo) * integral / math.pi


def _bessel_tail(s, x, mu, delta):
    bid = BoundId.BESSEL_TAIL
    _require(x > 0 and mu > 0 and delta > 1, bid, "x, mu > 0 and delta > 1")
    _require(x <= 20, bid, "quadrature check limited to x <= 20")
    _require(s >= 1, bid, "order -s with s >= 1")
    Delta = math.sqrt(delta * delta - 1)
    tilde, err = bessel_tilde(-s, x, mu, Delta)
    full = float(iv(s, x))
    lhs = abs(full - tilde) + err + 1e-13 * (abs(full) + abs(tilde))
    rhs = bessel_tail_bound(s, x, mu, delta)
    bare = bessel_tail_bound(s, x, mu, delta, drop_exp_mu=True)
    return _instance(bid, {"s": s, "x": x, "mu": mu, "delta": delta}, lhs, rhs,
                     notes={"rhs_without_exp_mu": bare, "holds_without_exp_mu": lhs <= bare})


def _logp_abs(q):
    bid = BoundId.LOGP_ABS
    _require(0 < q < 1, bid, "0 < q < 1")
    val, tail = log_partition(q)
    lhs = val + tail
    rhs = math.pi ** 2 / (6 * (1 - q))
    return _instance(bid, {"q": q}, lhs, rhs)


def ekm_remainder_bound(k: int, z: complex, terms: int = 5) -> float:
    """Bound on the E_k series remainder after ``terms`` terms, ``|z| < 2 pi / k``.

    Uses ``|e_{k,m}/m!| <= (pi^2/3)(k/(2 pi))^{m+1}``.
    """
    ratio = k * abs(z) / (2 * math.pi)
    if ratio >= 1:
        return math.inf
    return (math.pi ** 2 / 3) * (k / (2 * math.pi)) ** (terms + 1) * abs(z) ** terms / (1 - ratio)


def _ekm_series(k, z):
    bid = BoundId.EKM_SERIES
    z = complex(z)
    _require(0 < abs(z) <= math.pi / k, bid, "0 < |z| <= pi/k")
    exact = _ek_polylog_mp(k, z, 0)
    head = sum(float(ek_series_coefficient(k, m)) / math.factorial(m) * z ** m for m in range(5))
    lhs = abs(exact - head) * (1 + 1e-12) + 1e-16 * abs(exact)
    rhs = ekm_remainder_bound(k, z, 5)
    return _instance(bid, {"k": k, "z_re": z.real, "z_im": z.imag}, lhs, rhs)


def _pt(point):
    return {"eta": point.eta, "y": point.y, "delta": point.delta}


def verify_bound(bound_id, *, k=2, t=2, r=1, point=None, **extra) -> BoundInstance:
    """Evaluate one explicit bound at one admissible point.

    ``point`` is an :class:`ArcPoint` for the arc bounds.  ``BESSEL_TAIL``
    takes ``s, x, mu, delta``; ``LOGP_ABS`` takes ``q``; ``EKM_SERIES``
    takes ``z``.  Points outside a bound's hypothesis raise
    :class:`~kregular.errors.PreconditionError`.
    """
    bid = BoundId(bound_id)
    if bid in (BoundId.MAJOR_L, BoundId.MAJOR_L_ABS, BoundId.MINOR_L):
        if point is None:
            raise PreconditionError(f"{bid.value} needs an ArcPoint")
        if not 1 <= r <= t:
            raise PreconditionError(f"{bid.value}: need 1 <= r <= t")
        fn = {BoundId.MAJOR_L: _major_l, BoundId.MAJOR_L_ABS: _major_l_abs,
              BoundId.MINOR_L: _minor_l}[bid]
        return fn(k, t, r, point)
    if bid is BoundId.MAJOR_XI:
        return _major_xi(k, point)
    if bid is BoundId.MINOR_XI:
        return _minor_xi(k, point)
    if bid is BoundId.BESSEL_TAIL:
        return _bessel_tail(int(extra["s"]), float(extra["x"]), float(extra["mu"]),
                            float(extra["delta"]))
    if bid is BoundId.LOGP_ABS:
        return _logp_abs(float(extra["q"]))
    return _ekm_series(k, extra["z"])


# ---------------------------------------------------------------------------
# seeded suites


def _logu(rng, lo, hi):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def sample_case(bound_id, rng):
    """Draw one admissible argument set (as ``verify_bound`` keyword args)."""
    bid = BoundId(bound_id)
    k = int(rng.integers(2, 11))
    t = int(rng.integers(2, 11))
    r = int(rng.integers(1, t + 1))
    delta = float(rng.uniform(1.1, 9.0))
    Delta = math.sqrt(delta * delta - 1)
    if bid is BoundId.MAJOR_L:
        mod = _logu(rng, 0.05, 1.0) * math.pi / (k * t)
        theta = rng.uniform(-1, 1) * math.atan(Delta) * 0.999
        z = cmath.rect(mod, theta)
        return {"k": k, "t": t, "r": r, "point": ArcPoint(z.real, z.imag, delta)}
    if bid is BoundId.MAJOR_L_ABS:
        eta = _logu(rng, 0.02, 0.999) * math.pi / (k * t * delta)
        y = rng.uniform(-1, 1) * Delta * eta * 0.999
        return {"k": k, "t": t, "r": r, "point": ArcPoint(eta, y, delta)}
    if bid is BoundId.MAJOR_XI:
        cap = min(4 * math.pi ** 2 / (2.35 * delta), 2 * math.pi ** 2 / (delta * delta * k))
        eta = _logu(rng, 1e-3, 0.999) * cap
        y = rng.uniform(-1, 1) * Delta * eta
        return {"k": k, "point": ArcPoint(eta, y, delta)}
    if bid is BoundId.MINOR_XI:
        cap = min(12 * math.log(k) / k, math.pi / Delta) * 0.999
        eta = _logu(rng, 0.002, cap)
        y = rng.uniform(Delta * eta, math.pi) * (1 if rng.random() < 0.5 else -1)
        return {"k": k, "point": ArcPoint(eta, y, delta)}
    if bid is BoundId.MINOR_L:
        eta = _logu(rng, 0.002, 0.999 / k)
        y = rng.uniform(-math.pi, math.pi)
        return {"k": k, "t": t, "r": r, "point": ArcPoint(eta, y, delta)}
    if bid is BoundId.BESSEL_TAIL:
        s = int(rng.choice([1, 2, 4]))
        x = float(rng.uniform(0.5, 20.0))
        mu = 0.5 * x * _logu(rng, 0.5, 3.0)
        return {"s": s, "x": x, "mu": mu, "delta": delta}
    if bid is BoundId.LOGP_ABS:
        return {"q": float(rng.uniform(0.001, 0.999))}
    mod = _logu(rng, 0.05, 1.0) * math.pi / k
    z = cmath.rect(mod, rng.uniform(-0.5, 0.5) * math.pi * 0.999)
    return {"k": k, "z": z}


@dataclass
class SuiteReport:
    seed: int
    count: int
    instances: list
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps({
            "schema": "kregular.bound-suite/1",
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "failures": [asdict(f) for f in self.failures],
            "instances": [asdict(i) for i in self.instances],
        }, indent=1, sort_keys=True)


def run_bound_suite(seed: int = 7, count: int = 500, bound_ids=None) -> SuiteReport:
    """``count`` seeded admissible points per bound id. Deterministic in ``seed``."""
    ids = [BoundId(b) for b in (bound_ids or list(BoundId))]
    instances, failures = [], []
    order = list(BoundId)
    for bid in ids:
        rng = np.random.default_rng([seed, order.index(bid)])
        for _ in range(count):
            case = sample_case(bid, rng)
            inst = verify_bound(bid, **case)
            instances.append(inst)
            if not inst.holds:
                failures.append(inst)
    return SuiteReport(seed, count, instances, failures)
