"""Explicit constants, the Bessel-weighted positivity inequality, threshold
search and the exact counterexample census.

For ``k``-regular partitions the difference ``D_k(r) - D_k(r+1)`` is, after
the circle method, a combination of modified Bessel functions weighted by
the constants ``beta_j`` plus an explicitly bounded error ``E``.  The
difference is certainly positive at ``n`` once

    sum_s beta_s W_s I_{-s}(x)  >  2 E + sum_s beta_s W_s Itail_{-s},

and :func:`find_N` scans ``n`` upward to the last failure.  Three
normalisations of the weights ``W_s`` are available (see
:data:`CONVENTIONS`):

``reference``
    the tabulated weights scaled by ``1/(2 pi)``; this is the normalisation
    under which the reference thresholds are reproduced and the default for
    the search.
``literal``
    the tabulated weights and constants unchanged.
``derived``
    weights obtained from the change of variables ``w = x^2/(4 mu)`` and the
    Bernoulli coefficients expanded in ``t z``; the main-term combination in
    this convention tracks the exact count to about 1e-13 (see
    :func:`sandwich_check`).

All Bessel tails carry the factor ``e^mu`` coming from ``|e^w|`` on the
horizontal contour legs, so their growth rate is
``(pi/2) sqrt(2K/3) (1 + 1/Delta^2)``.

The census compares exact integers only.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import DomainError, InconclusiveError, IntegrityError, PreconditionError
from .logscaled import LogScaled
from .series import (CoefficientTable, _k_regular_extend, _row_products, d_table,
                     ell_matrix, load_table, save_table)
from .specfun import bernoulli_poly, scaled_bessel_I

CONVENTIONS = ("reference", "literal", "derived")
WIDENING = 1e-10
CERT_WINDOW = 1000
SCAN_SPAN = 10 ** 6
REPORT_SCHEMA = "kregular.check-report/1"
CHECKPOINT_FORMAT = "kregular.checkpoint/1"
NKT_SCHEMA = "kregular.nkt/1"

# delta annotations of the reference N_k(t) table, keyed by (k, t)
TABLE_DELTAS = {
    **{(2, t): d for t, d in zip(range(2, 11), (8.6, 7.25, 6.3, 5.6, 5.05, 4.6, 4.3, 4.0, 3.8))},
    **{(3, t): d for t, d in zip(range(2, 11), (3.95, 3.05, 2.65, 2.4, 2.25, 2.15, 2.05, 2.0, 1.95))},
    **{(4, t): d for t, d in zip(range(2, 11), (2.8, 2.3, 2.05, 1.9, 1.85, 1.8, 1.75, 1.7, 1.7))},
    **{(5, t): d for t, d in zip(range(2, 11), (2.35, 2.0, 1.82, 1.73, 1.67, 1.63, 1.6, 1.58, 1.56))},
    **{(6, t): d for t, d in zip(range(2, 11), (2.08, 1.82, 1.7, 1.63, 1.59, 1.56, 1.54, 1.52, 1.5))},
    **{(7, t): d for t, d in zip(range(2, 11), (1.93, 1.72, 1.63, 1.57, 1.51, 1.51, 1.49, 1.48, 1.47))},
    **{(8, t): d for t, d in zip(range(2, 11), (1.83, 1.66, 1.58, 1.53, 1.5, 1.48, 1.46, 1.45, 1.44))},
    **{(9, t): d for t, d in zip(range(2, 11), (1.76, 1.61, 1.54, 1.5, 1.47, 1.45, 1.44, 1.43, 1.42))},
    **{(10, t): d for t, d in zip(range(2, 11),
                                  (1.7, 1.57, 1.51, 1.475, 1.45, 1.435, 1.425, 1.415, 1.41))},
}


def delta_min(k: int) -> float:
    """Smallest admissible contour parameter ``sqrt(1.29K / (1.28K - 0.52))``."""
    if k < 2:
        raise DomainError("delta_min needs k >= 2")
    K = 1.0 - 1.0 / k
    return math.sqrt(1.29 * K / (1.28 * K - 0.52))


def threshold(k: int, t: int, delta: float) -> float:
    """Lower limit ``delta^2 k^2 t^2 / 6`` on ``n``."""
    return delta * delta * k * k * t * t / 6.0


def first_valid_n(k: int, t: int, delta: float) -> int:
    return max(math.floor(threshold(k, t, delta)) + 1, 5)


@dataclass(frozen=True)
class EffectiveParams:
    k: int
    t: int
    r: int
    delta: float
    n: int

    def __post_init__(self):
        if self.k < 2 or self.t < 2:
            raise PreconditionError("need k, t >= 2")
        if not 1 <= self.r <= self.t:
            raise PreconditionError(f"r={self.r} outside 1..{self.t}")
        dm = delta_min(self.k)
        if not (self.delta > dm and self.delta > 1.3):
            raise PreconditionError(f"delta={self.delta} must exceed delta_min({self.k})={dm:.6f}")
        if not (self.n > threshold(self.k, self.t, self.delta) and self.n > 4):
            raise PreconditionError(
                f"n={self.n} must exceed delta^2 k^2 t^2/6 = {threshold(self.k, self.t, self.delta):.4f}")

    @property
    def K(self) -> float:
        return 1.0 - 1.0 / self.k

    @property
    def Delta(self) -> float:
        return math.sqrt(self.delta ** 2 - 1.0)

    @property
    def eta(self) -> float:
        return math.pi * math.sqrt(self.K / (6.0 * self.n))

    @property
    def mu(self) -> float:
        return self.eta * (self.n + (self.k - 1) / 24.0)

    @property
    def x(self) -> float:
        return math.pi * math.sqrt(2.0 * self.K / 3.0 * (self.n + (self.k - 1) / 24.0))


# ---------------------------------------------------------------------------
# rational constants


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}")


def _t_power(j, t, convention):
    # the derived expansion is in t*z, so z^{j-1} picks up t^{j-1} for j = 2, 4
    return t ** (j - 1) if convention == "derived" and j in (2, 4) else 1


def alpha_exact(k: int, t: int, r: int, j: int, convention: str = "literal") -> Fraction:
    """``alpha_j`` for ``j in (1, 2, 4)`` as an exact rational."""
    _check_convention(convention)
    a = Fraction(r, t)
    if j == 1:
        val = -Fraction(k - 1, 2) * bernoulli_poly(1, a)
    elif j == 2:
        val = Fraction(k * k - 1, 24) * bernoulli_poly(2, a)
    elif j == 4:
        val = -Fraction(k ** 4 - 1, 2880) * bernoulli_poly(4, a)
    else:
        raise DomainError("alpha_j defined for j in (1, 2, 4)")
    return val * _t_power(j, t, convention)


def beta_exact(k: int, t: int, r: int, j: int, convention: str = "literal") -> Fraction:
    """Closed form of ``alpha_j(r) - alpha_j(r+1)``."""
    _check_convention(convention)
    if j == 1:
        val = Fraction(k - 1, 2 * t)
    elif j == 2:
        val = Fraction((k * k - 1) * (t - 2 * r - 1), 24 * t * t)
    elif j == 4:
        poly = 4 * r ** 3 - 6 * r * r * (t - 1) + (t - 1) ** 2 + 2 * r * (t * t - 3 * t + 2)
        val = Fraction((k ** 4 - 1) * poly, 2880 * t ** 4)
    else:
        raise DomainError("beta_j defined for j in (1, 2, 4)")
    return val * _t_power(j, t, convention)


# ---------------------------------------------------------------------------
# weights, Bessel values, tails, errors


def _log_weight(s, k, n, convention):
    K = 1.0 - 1.0 / k
    lc = math.log(n + (k - 1) / 24.0)
    if convention == "derived":
        return (s * math.log(math.pi / 2) + 0.5 * s * math.log(2 * K / 3)
                - 0.5 * s * lc - 0.5 * math.log(k))
    lw = ((s - 1) * math.log(math.pi) + 0.25 * s * math.log(2 * K / 3)
          - 0.5 * s * lc - 0.5 * math.log(k))
    if convention == "reference":
        lw -= math.log(2 * math.pi)
    return lw


@lru_cache(maxsize=400_000)
def _main_parts(k, n, convention):
    """delta-independent pieces: weights W_s and I_{-s}(x) for s = 0, 1, 2, 4."""
    x = math.pi * math.sqrt(2.0 * (1.0 - 1.0 / k) / 3.0 * (n + (k - 1) / 24.0))
    W = tuple(LogScaled.from_log(_log_weight(s, k, n, convention)) for s in (0, 1, 2, 4))
    I = tuple(scaled_bessel_I(s, x) for s in (0, 1, 2, 4))
    return W, I


def tail_bounds(p: EffectiveParams, strict: bool = False, include_exp_mu: bool = True):
    """``(Itail_0, Itail_{-1}, Itail_{-2}, Itail_{-4})`` as LogScaled values.

    ``strict`` replaces the tabulated ``I_{-2}`` polynomial by the larger of it
    and the partial-integration form ``0.6 delta + 1/3``.
    """
    d, Dl, x = p.delta, p.Delta, p.x
    g = (math.pi / (2 * Dl * Dl)) * math.sqrt(2 * p.K * p.n / 3)
    if include_exp_mu:
        g += p.mu
    p2 = 0.6 * d + 0.36 * d * d / 3
    if strict:
        p2 = max(p2, 0.6 * d + 1.0 / 3)
    p4 = (0.6 * d) ** 3 + (0.6 * d) ** 2 + 0.4 * d + 2.0 / 9
    base = math.log(math.pi * x)
    return (LogScaled.from_log(g - math.log(math.pi * Dl * p.mu)),
            LogScaled.from_log(math.log(2) - base + g),
            LogScaled.from_log(math.log(4) - base + g + math.log(p2)),
            LogScaled.from_log(math.log(16) - base + g + math.log(p4)))


def error_terms(p: EffectiveParams, strict: bool = False):
    """``(E1, E2, E3, E)``; strict mode uses contour length ``2 Delta`` in E3."""
    k, t, n, d, K = p.k, p.t, p.n, p.delta, p.K
    sq = math.sqrt(n)
    A = math.pi * math.sqrt(2 * K * n / 3)
    l1 = math.log(12 * n) + sq * (0.52 / math.sqrt(K) + math.pi * math.sqrt(K / 6)
                                  + 1.29 * math.sqrt(K) / d ** 2)
    l2 = (math.log(2 * p.Delta * sq / math.sqrt(K)) + math.log((41 + math.log(k) + 7e-5 * d ** 7) / t)
          + A * (1 - 12 / (d * d * (k - 1))))
    l3 = (math.log(2.44 * d ** 7 * k ** 6 / 1e7 + 0.151 * k ** 6)
          + math.log(t ** 5 * K ** 3 * d ** 5) - 3 * math.log(n) - 0.5 * math.log(k) + A)
    if strict:
        l3 += math.log(2 * p.Delta / 4.8)
    e1, e2, e3 = (LogScaled.from_log(v) for v in (l1, l2, l3))
    return e1, e2, e3, e1 + e2 + e3


@dataclass(frozen=True)
class BoundBreakdown:
    params: EffectiveParams
    convention: str
    strict: bool
    alpha: tuple
    beta: tuple
    W: tuple
    bessel: tuple
    tails: tuple
    errors: tuple
    lhs: LogScaled
    rhs: LogScaled
    holds: bool
    marginal: bool
    log_margin: float
    margin_ratio: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        ls = lambda v: v.triple()
        p = self.params
        return {
            "k": p.k, "t": p.t, "r": p.r, "delta": p.delta, "n": p.n,
            "convention": self.convention, "strict": self.strict,
            "alpha": [float(a) for a in self.alpha], "beta": [float(b) for b in self.beta],
            "W": [ls(v) for v in self.W], "bessel": [ls(v) for v in self.bessel],
            "tails": [ls(v) for v in self.tails], "errors": [ls(v) for v in self.errors],
            "lhs": ls(self.lhs), "rhs": ls(self.rhs), "holds": self.holds,
            "marginal": self.marginal, "log_margin": self.log_margin,
            "margin_ratio": self.margin_ratio,
            "extra": {key: (v.triple() if isinstance(v, LogScaled) else v)
                      for key, v in self.extra.items()},
        }


def effective_constants(p: EffectiveParams, convention: str = "reference",
                        strict: bool = False) -> BoundBreakdown:
    """All constants of the inequality at ``p``; ``holds`` is left False.

    β_j needs ``r < t``; at ``r = t`` the β fields are zero.
    """
    _check_convention(convention)
    k, t, r = p.k, p.t, p.r
    alpha = (math.log(k) / t,) + tuple(float(alpha_exact(k, t, r, j, convention)) for j in (1, 2, 4))
    beta = tuple(float(beta_exact(k, t, r, j, convention)) if r < t else 0.0 for j in (1, 2, 4))
    W, I = _main_parts(k, p.n, convention)
    tails = tail_bounds(p, strict)
    errors = error_terms(p, strict)
    extra = {}
    if strict:
        extra["E3_literal"] = error_terms(p, False)[2]
    else:
        extra["E3_strict"] = error_terms(p, True)[2]
    return BoundBreakdown(p, convention, strict, alpha, beta, W[1:], I[1:], tails[1:], errors,
                          LogScaled.zero(), LogScaled.zero(), False, False, math.nan, math.nan,
                          extra)


def _directed(v: LogScaled, up: bool) -> LogScaled:
    if v.sign == 0:
        return v
    return v.widen(WIDENING, outward=(v.sign > 0) == up)


def inequality_check(p: EffectiveParams, convention: str = "reference",
                     strict: bool = False) -> BoundBreakdown:
    """Evaluate both sides of the positivity inequality at ``p``.

    The left side is rounded down and the right side up by a relative 1e-10
    before comparison.  A comparison inside the remaining slack is reported
    as ``holds=False, marginal=True``.
    """
    if p.r >= p.t:
        raise PreconditionError("inequality_check needs r < t")
    b = effective_constants(p, convention, strict)
    lhs = LogScaled.zero()
    rhs = 2 * b.errors[3]
    for beta, w, i, tail in zip(b.beta, b.W, b.bessel, b.tails):
        if beta == 0.0:
            continue
        bw = LogScaled.from_float(beta) * w
        lhs = lhs + bw * i
        rhs = rhs + bw * tail
    lhs_d, rhs_d = _directed(lhs, False), _directed(rhs, True)
    c = lhs_d.compare(rhs_d)
    if lhs.sign > 0 and rhs.sign > 0:
        log_margin = lhs_d.log() - rhs_d.log()
        margin_ratio = math.exp(log_margin) if log_margin < 700 else math.inf
    else:
        log_margin = -math.inf if lhs.sign <= 0 else math.inf
        margin_ratio = 0.0 if lhs.sign <= 0 else math.inf
    return BoundBreakdown(p, convention, strict, b.alpha, b.beta, b.W, b.bessel, b.tails,
                          b.errors, lhs_d, rhs_d, c > 0, c == 0, log_margin, margin_ratio, b.extra)


# ---------------------------------------------------------------------------
# main-term sandwich around the exact count


@dataclass(frozen=True)
class SandwichResult:
    params: EffectiveParams
    exact: int
    main: LogScaled
    radius: LogScaled
    residual: LogScaled
    holds: bool

    @property
    def relative_residual(self) -> float:
        return (self.residual / LogScaled.from_int(self.exact)).to_float()

    @property
    def relative_radius(self) -> float:
        return (self.radius / LogScaled.from_int(self.exact)).to_float()


def sandwich_check(p: EffectiveParams, exact: int, convention: str = "derived",
                   strict: bool = False) -> SandwichResult:
    """Check ``|D - sum_s alpha_s W_s I_{-s}(x)| <= E + sum_s |alpha_s| W_s Itail_{-s}``."""
    _check_convention(convention)
    k, t, r = p.k, p.t, p.r
    alphas = [math.log(k) / t] + [float(alpha_exact(k, t, r, j, convention)) for j in (1, 2, 4)]
    W, I = _main_parts(k, p.n, convention)
    tails = tail_bounds(p, strict)
    main = LogScaled.zero()
    radius = error_terms(p, strict)[3]
    for a, w, i, tail in zip(alphas, W, I, tails):
        if a == 0.0:
            continue
        aw = LogScaled.from_float(a) * w
        main = main + aw * i
        radius = radius + abs(aw) * tail
    residual = abs(LogScaled.from_int(exact) - main)
    return SandwichResult(p, exact, main, radius, residual,
                          _directed(radius, True).compare(residual) > 0)


# ---------------------------------------------------------------------------
# threshold search


def growth_rates(k: int, t: int, delta: float) -> dict:
    """Exponential rates (coefficients of sqrt n) of each side of the inequality."""
    K = 1.0 - 1.0 / k
    main = math.pi * math.sqrt(2 * K / 3)
    Dl2 = delta * delta - 1.0
    return {
        "main": main,
        "E1": 0.52 / math.sqrt(K) + math.pi * math.sqrt(K / 6) + 1.29 * math.sqrt(K) / delta ** 2,
        "E2": main * (1 - 12 / (delta * delta * (k - 1))),
        # E3 has the main rate; it loses by the power n^{-3} against n^{-3/4}
        "E3": main,
        "E3_power_gap": 2.25,
        "tails": 0.5 * main * (1 + 1 / Dl2) if Dl2 > 0 else math.inf,
    }


def rates_dominate(rates: dict) -> bool:
    m = rates["main"]
    return (rates["E1"] < m and rates["E2"] < m and rates["tails"] < m
            and rates["E3"] <= m and rates["E3_power_gap"] > 0)


@dataclass(frozen=True)
class DominanceCertificate:
    window_start: int
    window_end: int
    margins_increasing: bool
    rates: dict
    rates_ok: bool

    @property
    def passed(self) -> bool:
        return self.margins_increasing and self.rates_ok

    def to_dict(self) -> dict:
        return {"window": [self.window_start, self.window_end],
                "margins_increasing": self.margins_increasing,
                "rates": self.rates, "rates_ok": self.rates_ok, "passed": self.passed}


@dataclass(frozen=True)
class FindNResult:
    k: int
    t: int
    delta: float
    N: int
    last_failure: int | None
    convention: str
    strict: bool
    scanned_to: int
    certificate: DominanceCertificate

    def to_dict(self) -> dict:
        return {"k": self.k, "t": self.t, "delta": self.delta, "N": self.N,
                "last_failure": self.last_failure, "threshold": threshold(self.k, self.t, self.delta),
                "convention": self.convention, "strict": self.strict,
                "scanned_to": self.scanned_to, "certificate": self.certificate.to_dict()}


def find_N(k: int, t: int, delta: float, scan_cap: int | None = None, *,
           convention: str = "reference", strict: bool = False,
           window: int = CERT_WINDOW, abort_above: int | None = None):
    """Smallest ``N > delta^2 k^2 t^2 / 6`` after which the inequality holds.

    The scan stops once ``window`` consecutive points pass for every ``r``
    with strictly increasing log-margins; together with the rate comparison
    this is the certificate for all larger ``n``.  Returns ``None`` if
    ``abort_above`` is given and a failure above it is seen.
    """
    _check_convention(convention)
    dm = delta_min(k)
    if not delta > dm:
        raise PreconditionError(f"delta={delta} must exceed delta_min({k})={dm:.6f}")
    rates = growth_rates(k, t, delta)
    ok = rates_dominate(rates)
    if not ok:
        raise InconclusiveError(
            f"rhs grows at least as fast as lhs at delta={delta} (rates {rates}); choose a larger delta")
    n = first_valid_n(k, t, delta)
    if scan_cap is None:
        scan_cap = n + SCAN_SPAN
    last_fail = None
    prev = [None] * t
    run_start, streak = n, 0
    while streak < window:
        if n > scan_cap:
            raise InconclusiveError(
                f"no clean window of {window} points up to scan_cap={scan_cap} "
                f"(last failure {last_fail}); suggest a larger delta")
        all_hold = True
        mono = True
        for r in range(1, t):
            b = inequality_check(EffectiveParams(k, t, r, delta, n), convention, strict)
            if not b.holds:
                all_hold = False
            if prev[r] is not None and not b.log_margin > prev[r]:
                mono = False
            prev[r] = b.log_margin
        if not all_hold:
            last_fail = n
            if abort_above is not None and n > abort_above:
                return None
            streak = 0
            run_start = n + 1
        elif not mono:
            # restart the certificate window; everything scanned so far passed
            streak = 1
            run_start = n
        else:
            streak += 1
        n += 1
    N = max(last_fail or 0, math.floor(threshold(k, t, delta)) + 1)
    cert = DominanceCertificate(run_start, n - 1, streak >= window, rates, ok)
    return FindNResult(k, t, delta, N, last_fail, convention, strict, n - 1, cert)


def default_delta_grid(k: int, step: float = 0.05, span: float = 10.0):
    dm = delta_min(k)
    lo = math.floor(dm / step) + 1
    hi = math.floor((dm + span) / step + 1e-9)
    return [round(i * step, 10) for i in range(lo, hi + 1)]


@dataclass(frozen=True)
class MinimizeResult:
    k: int
    t: int
    N: int
    delta: float
    evaluated: tuple
    best: FindNResult

    def to_dict(self) -> dict:
        return {"k": self.k, "t": self.t, "N": self.N, "delta": self.delta,
                "evaluated": [[d, n] for d, n in self.evaluated],
                "certificate": self.best.certificate.to_dict()}


def minimize_N(k: int, t: int, delta_grid=None, *, refine: bool = True,
               convention: str = "reference", strict: bool = False,
               resolution: float = 0.005) -> MinimizeResult:
    """Minimise :func:`find_N` over a delta grid, then refine by golden section.

    Scans that already failed above the best value so far are abandoned;
    they are recorded in ``evaluated`` with value ``None``.
    """
    grid = list(default_delta_grid(k) if delta_grid is None else delta_grid)
    dm = delta_min(k)
    if not grid or min(grid) <= dm:
        raise PreconditionError(f"delta grid must lie above delta_min({k})={dm:.6f}")
    evaluated = []
    best = None

    def attempt(d, abort):
        if abort is not None and first_valid_n(k, t, d) > abort:
            return None
        try:
            return find_N(k, t, d, convention=convention, strict=strict, abort_above=abort)
        except InconclusiveError:
            return None

    for d in sorted(grid):
        res = attempt(d, None if best is None else best.N)
        evaluated.append((d, None if res is None else res.N))
        if res is not None and (best is None or res.N < best.N):
            best = res
    if best is None:
        raise InconclusiveError(f"no delta in the grid certifies (k={k}, t={t})")

    if refine:
        step = (grid[1] - grid[0]) if len(grid) > 1 else 0.05
        lo, hi = max(best.delta - step, dm + 1e-9), best.delta + step
        cache = {}

        def f(d):
            d = round(d, 6)
            if d not in cache:
                res = attempt(d, None)
                cache[d] = res
                evaluated.append((d, None if res is None else res.N))
            res = cache[d]
            return math.inf if res is None else res.N

        g = (math.sqrt(5) - 1) / 2
        c, e = hi - g * (hi - lo), lo + g * (hi - lo)
        while hi - lo > resolution:
            if f(c) <= f(e):
                hi, e = e, c
                c = hi - g * (hi - lo)
            else:
                lo, c = c, e
                e = lo + g * (hi - lo)
        for res in cache.values():
            if res is not None and res.N < best.N:
                best = res
    return MinimizeResult(k, t, best.N, best.delta, tuple(evaluated), best)


def nkt_rows(cells, convention: str = "reference", strict: bool = False):
    """``find_N`` for ``(k, t)`` or ``(k, t, delta)`` cells; delta defaults to the table."""
    rows = []
    for cell in cells:
        k, t = cell[0], cell[1]
        delta = cell[2] if len(cell) > 2 else TABLE_DELTAS[(k, t)]
        rows.append(find_N(k, t, delta, convention=convention, strict=strict))
    return rows


def write_nkt_csv(rows, fh=None) -> str:
    out = io.StringIO() if fh is None else fh
    out.write(f"# schema={NKT_SCHEMA}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["k", "t", "delta", "N", "certificate"])
    for res in rows:
        w.writerow([res.k, res.t, f"{res.delta:.12g}", res.N,
                    "pass" if res.certificate.passed else "fail"])
    return out.getvalue() if fh is None else ""


# ---------------------------------------------------------------------------
# exact census


def stable_families(k: int, t: int):
    """The ``(r, s, n)`` equality expected for ``(k, t)``, or ``None`` below its range."""
    if k == 2 and t >= 6:
        return (t - 1, t, t + 3)
    if k == 3 and t >= 5:
        return (t - 1, t, t + 2)
    if k >= 4 and t >= 4:
        return (t - 1, t, t)
    return None


def compare_rows(k, t, table, lo, hi):
    """Weak (D_r < D_s) and strict (D_r <= D_s) failures for ``lo <= n <= hi``."""
    weak, strict = [], []
    pairs = list(combinations(range(1, t + 1), 2))
    for n in range(max(lo, 1), hi + 1):
        row = table(n)
        for r, s in pairs:
            a, b = row[r - 1], row[s - 1]
            if a <= b:
                strict.append((k, t, r, s, n))
                if a < b:
                    weak.append((k, t, r, s, n))
    return weak, strict


def _census_cell(args):
    k, t, n_max = args
    tab = d_table(k, t, n_max, allow_large=True)
    return compare_rows(k, t, tab.row, 1, n_max)


@dataclass
class CheckReport:
    scope: dict
    weak_counterexamples: list
    strict_counterexamples: list
    verdicts: dict
    runtime: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {"schema": REPORT_SCHEMA, "scope": self.scope,
               "weak_counterexamples": [list(c) for c in self.weak_counterexamples],
               "strict_counterexamples": [list(c) for c in self.strict_counterexamples],
               "verdicts": self.verdicts, "passed": self.passed}
        if include_runtime:
            out["runtime"] = self.runtime
        return out

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_dict(include_runtime), indent=2, sort_keys=True)


def _verdicts(k_values, t_values, n_max, weak, strict):
    strict_set = set(strict)
    families = [(k, t) + fam for k in k_values for t in t_values
                if (fam := stable_families(k, t)) is not None and fam[2] <= n_max]
    return {
        "weak_only_k2_n_le_8": all(c[0] == 2 and c[4] <= 8 for c in weak),
        "strict_only_n_le_16": all(c[4] <= 16 for c in strict),
        "stable_families_present": all(f in strict_set and f not in set(weak) for f in families),
    }


def census(k_range, t_range, n_max: int = 300, workers: int = 1) -> CheckReport:
    """Exact comparison of ``D_k(r,t;n)`` against ``D_k(s,t;n)`` for all ``r < s``."""
    ks, ts = list(k_range), list(t_range)
    if not ks or not ts or min(ks) < 2 or min(ts) < 2:
        raise DomainError("census needs k, t >= 2")
    if n_max < 1:
        raise DomainError("census needs n_max >= 1")
    start = time.perf_counter()
    jobs = [(k, t, n_max) for k in ks for t in ts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_cell, jobs))
    else:
        parts = [_census_cell(j) for j in jobs]
    weak = sorted(c for w, _ in parts for c in w)
    strict = sorted(c for _, s in parts for c in s)
    return CheckReport(
        {"k": [min(ks), max(ks)], "t": [min(ts), max(ts)], "n": [1, n_max]},
        weak, strict, _verdicts(ks, ts, n_max, weak, strict),
        {"seconds": round(time.perf_counter() - start, 3), "workers": workers})


@dataclass(frozen=True)
class PatternReport:
    rows: tuple
    all_equal: bool

    def to_dict(self) -> dict:
        return {"rows": [dict(r) for r in self.rows], "all_equal": self.all_equal}


def stable_patterns(t_range, k_range=range(2, 11)) -> PatternReport:
    """Exact check of the three families of stable equalities ``D(t-1) = D(t)``."""
    ts = list(t_range)
    if not ts or min(ts) < 4:
        raise PreconditionError("stable_patterns needs t >= 4")
    rows = []
    for k in k_range:
        for t in ts:
            fam = stable_families(k, t)
            if fam is None:
                continue
            r, s, n = fam
            tab = d_table(k, t, n)
            a, b = tab.D(r, n), tab.D(s, n)
            rows.append({"k": k, "t": t, "r": r, "s": s, "n": n, "D_r": a, "D_s": b,
                         "equal": a == b})
    return PatternReport(tuple(rows), all(row["equal"] for row in rows))


# ---------------------------------------------------------------------------
# resumable long census


def _atomic_write(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _load_state(ckdir: Path, k, t, n_max):
    path = ckdir / "state.json"
    if not path.exists():
        return None
    try:
        state = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise IntegrityError(f"unreadable checkpoint {path}: {exc}", {"path": str(path)}) from exc
    if state.get("format") != CHECKPOINT_FORMAT:
        raise IntegrityError(f"unknown checkpoint format in {path}", {"format": state.get("format")})
    if (state.get("k"), state.get("t"), state.get("n_max")) != (k, t, n_max):
        raise PreconditionError(
            f"checkpoint in {ckdir} is for k={state.get('k')}, t={state.get('t')}, "
            f"n_max={state.get('n_max')}")
    return state


def run_long_census(k: int, t: int, n_max: int, checkpoint_dir, *, interval: float = 60.0,
                    chunk: int = 250, log=None) -> CheckReport:
    """Census of a single ``(k, t)`` that checkpoints and resumes.

    Phase one extends the ``p_k`` table, phase two compares rows in chunks.
    Every ``interval`` seconds the table (binary, CRC-protected) and a small
    JSON state file are replaced atomically; rerunning with the same
    directory continues from the last checkpoint.
    """
    if k < 2 or t < 2 or n_max < 1:
        raise DomainError("run_long_census needs k, t >= 2 and n_max >= 1")
    ckdir = Path(checkpoint_dir)
    ckdir.mkdir(parents=True, exist_ok=True)
    log = log or (lambda msg: print(msg, file=sys.stderr))
    start = time.perf_counter()
    state = _load_state(ckdir, k, t, n_max)
    pk_path = ckdir / "pk.krtb"
    if state is None:
        state = {"format": CHECKPOINT_FORMAT, "k": k, "t": t, "n_max": n_max,
                 "phase": "pk", "pk_len": 0, "next_n": 1, "weak": [], "strict": []}
        pk = []
    else:
        pk = list(load_table(pk_path).coeffs) if state["pk_len"] else []
        if len(pk) < state["pk_len"]:
            raise IntegrityError("p_k table shorter than checkpoint records",
                                 {"pk_len": state["pk_len"], "found": len(pk)})
        pk = pk[:state["pk_len"]]
        log(f"resuming {ckdir}: phase={state['phase']} pk_len={len(pk)} next_n={state['next_n']}")

    def checkpoint(save_pk):
        if save_pk:
            save_table(CoefficientTable(f"Pk({k})", tuple(pk)), pk_path)
        state["pk_len"] = len(pk)
        _atomic_write(ckdir / "state.json", json.dumps(state, sort_keys=True))

    last = time.monotonic()
    while state["phase"] == "pk":
        target = min(len(pk) + 20 * chunk, n_max + 1) - 1
        _k_regular_extend(k, pk, target)
        if len(pk) == n_max + 1:
            state["phase"] = "rows"
            checkpoint(True)
            last = time.monotonic()
        elif time.monotonic() - last >= interval:
            checkpoint(True)
            last = time.monotonic()
            log(f"checkpoint: p_k up to {len(pk) - 1}")

    if state["phase"] == "rows":
        pk_obj = np.array(pk, dtype=object)
        ell_obj = ell_matrix(k, t, n_max)
        while state["next_n"] <= n_max:
            lo = state["next_n"]
            hi = min(lo + chunk - 1, n_max)
            rows = _row_products(ell_obj, pk_obj, lo, hi + 1)
            weak, strict = compare_rows(k, t, lambda n: rows[n - lo], lo, hi)
            state["weak"].extend(list(c) for c in weak)
            state["strict"].extend(list(c) for c in strict)
            state["next_n"] = hi + 1
            if state["next_n"] > n_max:
                state["phase"] = "done"
                checkpoint(False)
            elif time.monotonic() - last >= interval:
                checkpoint(False)
                last = time.monotonic()
                log(f"checkpoint: rows up to n={hi}")

    weak = sorted(tuple(c) for c in state["weak"])
    strict = sorted(tuple(c) for c in state["strict"])
    return CheckReport({"k": [k, k], "t": [t, t], "n": [1, n_max]}, weak, strict,
                       _verdicts([k], [t], n_max, weak, strict),
                       {"seconds": round(time.perf_counter() - start, 3),
                        "checkpoint": str(ckdir)})
