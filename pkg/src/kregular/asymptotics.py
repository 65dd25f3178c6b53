"""Two-term asymptotic for ``D_k(r,t;n)`` and related diagnostics.

With ``K = 1 - 1/k`` the approximation is

    hat_D = 3^{1/4} e^{pi sqrt(2Kn/3)} / (pi t 2^{3/4} K^{1/4} n^{1/4} sqrt(k))
            * [log k + (a - b (r/t - 1/2)) n^{-1/2}]

    a = 3 log k / (8 sqrt(6) pi sqrt(K)),   b = t pi (k-1) sqrt(K) / (2 sqrt(6)).

At ``k = 2`` it reduces to the classical two-term formula for partitions
into distinct parts.  The difference
``hat_D(r) - hat_D(s)`` is linear in ``s - r`` and is exposed separately as
:func:`corollary_diff`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DependencyError, DomainError
from .logscaled import LogScaled


@dataclass(frozen=True)
class RegularityParams:
    k: int
    t: int
    r: int

    def __post_init__(self):
        if self.k < 2 or self.t < 2:
            raise DomainError("need k, t >= 2")
        if not 1 <= self.r <= self.t:
            raise DomainError(f"r={self.r} outside 1..{self.t}")

    @property
    def K(self) -> float:
        return 1.0 - 1.0 / self.k


def _log_prefactor(k, t, n):
    """log of e^{pi sqrt(2Kn/3)} / (t 2^{3/4} K^{1/4} n^{1/4} sqrt k)."""
    K = 1.0 - 1.0 / k
    return (math.pi * math.sqrt(2 * K * n / 3) - math.log(t) - 0.75 * math.log(2)
            - 0.25 * math.log(K) - 0.25 * math.log(n) - 0.5 * math.log(k))


def hat_d(params: RegularityParams, n: int) -> LogScaled:
    """Two-term approximation ``hat_D_k(r,t;n)`` as a LogScaled value."""
    if n < 1:
        raise DomainError("hat_d needs n >= 1")
    k, t, r = params.k, params.t, params.r
    K = params.K
    a = 3 * math.log(k) / (8 * math.sqrt(6) * math.pi * math.sqrt(K))
    b = t * math.pi * (k - 1) * math.sqrt(K) / (2 * math.sqrt(6))
    shift = float(Fraction(r, t) - Fraction(1, 2))
    bracket = math.log(k) + (a - b * shift) / math.sqrt(n)
    if bracket == 0.0:
        return LogScaled.zero()
    pre = _log_prefactor(k, t, n) + 0.25 * math.log(3) - math.log(math.pi)
    return LogScaled.from_log(pre + math.log(abs(bracket)), 1 if bracket > 0 else -1)


def corollary_diff(params: RegularityParams, s: int, n: int) -> LogScaled:
    """Main term of ``D_k(r,t;n) - D_k(s,t;n)`` for ``r < s``.

    Equal to ``hat_d(r) - hat_d(s)``; it depends on r and s only through s - r.
    """
    r = params.r
    if not r < s <= params.t:
        raise DomainError("corollary_diff needs r < s <= t")
    if n < 1:
        raise DomainError("corollary_diff needs n >= 1")
    k, t = params.k, params.t
    K = params.K
    lg = (_log_prefactor(k, t, n) - math.log(4) - 0.25 * math.log(3)
          + math.log((k - 1) * math.sqrt(2 * K)) + math.log(s - r) - 0.5 * math.log(n))
    return LogScaled.from_log(lg)


def _ratio(a: int, b: LogScaled) -> float:
    if b.sign == 0:
        raise ZeroDivisionError("approximation vanishes")
    return (LogScaled.from_int(a) / b).to_float()


def q_ratio(params: RegularityParams, n: int, table) -> float:
    """Exact ``D_k(r,t;n)`` divided by :func:`hat_d`.

    ``table`` is a :class:`~kregular.series.PartCountTable` covering ``n``.
    """
    if table is None or table.N < n or table.k != params.k or table.t != params.t:
        raise DependencyError(f"no exact table for k={params.k}, t={params.t} up to n={n}")
    return _ratio(table.D(params.r, n), hat_d(params, n))


def difference_ratio(params: RegularityParams, s: int, n: int, table) -> float:
    """Exact ``D(r) - D(s)`` over :func:`corollary_diff`."""
    if table is None or table.N < n:
        raise DependencyError(f"no exact table up to n={n}")
    exact = table.D(params.r, n) - table.D(s, n)
    return _ratio(exact, corollary_diff(params, s, n))


Q_GRID_NS = (10, 100, 1000, 10000)
Q_GRID_KR = ((3, 1), (3, 2), (4, 1), (4, 2))


def q_grid(tables, t=4, ns=Q_GRID_NS, kr=Q_GRID_KR):
    """Rows ``(k, t, r, n, D, Q)`` for the standard grid; ``tables`` maps k to a table."""
    rows = []
    for k, r in kr:
        tab = tables.get(k)
        p = RegularityParams(k, t, r)
        for n in ns:
            rows.append((k, t, r, n, tab.D(r, n) if tab is not None and tab.N >= n else None,
                         q_ratio(p, n, tab)))
    return rows


def write_q_grid_csv(rows, fh=None) -> str:
    out = io.StringIO() if fh is None else fh
    out.write("# schema=kregular.qgrid/1\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["k", "t", "r", "n", "D_exact_digits", "Q"])
    for k, t, r, n, D, Q in rows:
        w.writerow([k, t, r, n, D, f"{Q:.12g}"])
    return out.getvalue() if fh is None else ""
