"""Exact coefficient tables for partition-type generating functions.

    p(n)          partitions, pentagonal recurrence
    p_k(n)        k-regular partitions (no part repeated k or more times)
    l(n)          coefficients of L_k(r,t;q), the divisor-type weight series
    D_k(r,t;n)    parts congruent to r mod t, summed over k-regular partitions

``D_k(r,t;n)`` is the Cauchy product of ``l`` with ``p_k``.  The weights are
small machine integers so each row is a dot product of an int column against
big integers; numpy object arrays keep that inner loop in C.
"""

from __future__ import annotations

import csv
import io
import math
import os
import struct
import sys
import zlib
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, DomainError, IntegrityError

DEFAULT_CAP = 20000
ENUMERATION_CAP = 40


def _pentagonal_offsets(N):
    """(offset, sign) pairs with generalized pentagonal offsets <= N, ascending."""
    out = []
    j = 1
    while True:
        a = j * (3 * j - 1) // 2
        if a > N:
            break
        sign = 1 if j % 2 else -1
        out.append((a, sign))
        b = j * (3 * j + 1) // 2
        if b <= N:
            out.append((b, sign))
        j += 1
    return out


@dataclass(frozen=True)
class CoefficientTable:
    """Integer sequence ``coeffs[0..N]`` tagged with its generating function.

    ``label`` is one of ``"P"``, ``"Pk(k)"``, ``"Ell(k,r,t)"`` or ``"D(k,r,t)"``.
    """

    label: str
    coeffs: tuple

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)


@dataclass(frozen=True)
class PartCountTable:
    k: int
    t: int
    counts: tuple  # counts[r-1][n] = D_k(r,t;n)
    totals: tuple  # totals[n] = P_k(n)
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def N(self) -> int:
        return len(self.totals) - 1

    def D(self, r: int, n: int) -> int:
        if not 1 <= r <= self.t:
            raise DomainError(f"residue r={r} outside 1..{self.t}")
        return self.counts[r - 1][n]

    def row(self, n: int) -> list[int]:
        return [self.counts[r][n] for r in range(self.t)]


def _check_size(N, allow_large):
    if N < 0:
        raise DomainError("N must be non-negative")
    if N > DEFAULT_CAP and not allow_large:
        raise CapabilityError(
            f"N={N} exceeds the desk-scale cap {DEFAULT_CAP}; pass allow_large=True"
        )
    if N > DEFAULT_CAP:
        print(f"kregular: building tables to N={N}, about "
              f"{memory_estimate(N) / 2**20:.0f} MiB per coefficient table", file=sys.stderr)


def memory_estimate(N: int) -> int:
    """Rough bytes for one table of partition-size integers up to index N."""
    # log10 p(n) is about 1.11 sqrt(n); CPython ints cost ~28 bytes plus digits
    digits = 1.11 * math.sqrt(max(N, 1))
    return int((N + 1) * (36 + 0.42 * digits))


def _partition_list(N):
    p = [0] * (N + 1)
    p[0] = 1
    offsets = _pentagonal_offsets(N)
    for n in range(1, N + 1):
        acc = 0
        for off, sign in offsets:
            if off > n:
                break
            if sign > 0:
                acc += p[n - off]
            else:
                acc -= p[n - off]
        p[n] = acc
    return p


def partition_table(N: int, allow_large: bool = False) -> CoefficientTable:
    """``p(0..N)`` via Euler's pentagonal recurrence."""
    _check_size(N, allow_large)
    return CoefficientTable("P", tuple(_partition_list(N)))


def _k_regular_extend(k, pk, N):
    """Extend the list ``pk`` in place up to index N.

    Uses (q;q)_inf * sum p_k(n) q^n = (q^k;q^k)_inf, whose right-hand side is
    supported on k times the pentagonal offsets.
    """
    offsets = _pentagonal_offsets(N)
    rhs = {0: 1}
    for off, sign in offsets:
        if k * off <= N:
            rhs[k * off] = -sign  # (q;q) coefficient at offset is -sign
    start = len(pk)
    pk.extend([0] * (N + 1 - start))
    for n in range(start, N + 1):
        acc = rhs.get(n, 0)
        for off, sign in offsets:
            if off > n:
                break
            if sign > 0:
                acc += pk[n - off]
            else:
                acc -= pk[n - off]
        pk[n] = acc
    return pk


def k_regular_table(k: int, N: int, allow_large: bool = False) -> CoefficientTable:
    """``p_k(0..N)``, the number of partitions with every multiplicity below k."""
    if k < 2:
        raise DomainError("k must be at least 2")
    _check_size(N, allow_large)
    return CoefficientTable(f"Pk({k})", tuple(_k_regular_extend(k, [], N)))


def ell_array(k: int, r: int, t: int, N: int) -> np.ndarray:
    """Sieved weights as an int64 array of length N+1."""
    if k < 2 or t < 1 or not 1 <= r <= t:
        raise DomainError("need k >= 2 and 1 <= r <= t")
    out = np.zeros(N + 1, dtype=np.int64)
    for m in range(r, N + 1, t):
        out[m::m] += 1
        km = k * m
        if km <= N:
            out[km::km] -= k
    return out


def ell_coeffs(k: int, r: int, t: int, N: int) -> CoefficientTable:
    """Coefficients of ``sum_{m = r mod t} q^m/(1-q^m) - k q^{km}/(1-q^{km})``.

    ``l(n)`` counts divisors of n in the class r mod t, minus k times the
    divisors d with k | d and d/k in that class.
    """
    if N < 0:
        raise DomainError("N must be non-negative")
    arr = ell_array(k, r, t, N)
    return CoefficientTable(f"Ell({k},{r},{t})", tuple(int(v) for v in arr))


def _row_products(ell_obj, pk_obj, lo, hi):
    """D rows lo..hi-1 for every residue; ell_obj has shape (t, N+1)."""
    rows = []
    for n in range(lo, hi):
        if n == 0:
            rows.append([0] * ell_obj.shape[0])
            continue
        vals = ell_obj[:, 1:n + 1].dot(pk_obj[n - 1::-1])
        rows.append([int(v) for v in vals])
    return rows


def ell_matrix(k: int, t: int, N: int) -> np.ndarray:
    return np.vstack([ell_array(k, r, t, N) for r in range(1, t + 1)]).astype(object)


def d_table(k: int, t: int, N: int, allow_large: bool = False, pk=None) -> PartCountTable:
    """Exact ``D_k(r,t;n)`` for ``r = 1..t`` and ``n = 0..N``."""
    if k < 2 or t < 2:
        raise DomainError("need k, t >= 2")
    _check_size(N, allow_large)
    if pk is None:
        pk = _cached_pk(k, N)
    pk_obj = np.array(list(pk[:N + 1]), dtype=object)
    ell_obj = ell_matrix(k, t, N)
    rows = _row_products(ell_obj, pk_obj, 0, N + 1)
    counts = tuple(tuple(row[r] for row in rows) for r in range(t))
    totals = tuple(sum(row) for row in rows)
    return PartCountTable(k, t, counts, totals)


@lru_cache(maxsize=16)
def _cached_pk(k, N):
    return tuple(_k_regular_extend(k, [], N))


def total_parts(k: int, N: int) -> tuple:
    """``P_k(n)``: total parts over k-regular partitions, via the r = t = 1 weights."""
    pk = np.array(_cached_pk(k, N), dtype=object)
    e = ell_array(k, 1, 1, N).astype(object)
    out = [0]
    for n in range(1, N + 1):
        out.append(int(e[1:n + 1].dot(pk[n - 1::-1])))
    return tuple(out)


def _bounded_partitions(n, k, max_part):
    """Yield multiplicity vectors {part: mult} of n, parts <= max_part, mult < k."""
    if n == 0:
        yield {}
        return
    if max_part == 0:
        return
    for m in range(min(k - 1, n // max_part), -1, -1):
        for rest in _bounded_partitions(n - m * max_part, k, max_part - 1):
            if m:
                rest = dict(rest)
                rest[max_part] = m
            yield rest


def enumerate_oracle(k: int, t: int, n: int) -> list[int]:
    """Brute-force tally of parts by residue over all k-regular partitions of n."""
    if n > ENUMERATION_CAP:
        raise CapabilityError(f"enumeration is limited to n <= {ENUMERATION_CAP}")
    if n < 0:
        raise DomainError("n must be non-negative")
    tally = [0] * t
    for mults in _bounded_partitions(n, k, n):
        for part, m in mults.items():
            r = part % t
            tally[(r - 1) % t] += m
    return tally


def indivisible_count(k: int, n: int) -> int:
    """Partitions of n with no part divisible by k (bounded-part DP)."""
    if n < 0:
        return 0
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        if part % k == 0:
            continue
        for m in range(part, n + 1):
            ways[m] += ways[m - part]
    return ways[n]


# ---------------------------------------------------------------------------
# persistence

MAGIC = b"KRTB"
FORMAT_VERSION = 1
_KIND_COEFF = 0
_KIND_COUNTS = 1
_HEADER = struct.Struct("<4sHBIIQI")


def _pack_int(buf, value):
    sign = (value > 0) - (value < 0)
    mag = abs(value)
    raw = mag.to_bytes((mag.bit_length() + 7) // 8, "little") if mag else b""
    buf.append(struct.pack("<bI", sign, len(raw)))
    buf.append(raw)


def _pack_block(buf, label, values):
    lab = label.encode()
    buf.append(struct.pack("<HQ", len(lab), len(values)))
    buf.append(lab)
    for v in values:
        _pack_int(buf, v)


def dumps_table(table) -> bytes:
    """Serialise a CoefficientTable or PartCountTable to the versioned format.

    Layout (little-endian): magic, version u16, kind u8, k u32, t u32, N u64,
    block count u32; then per block a label and ``count`` signed magnitudes as
    (sign i8, length u32, bytes).  A CRC32 of everything precedes EOF.
    """
    buf = []
    if isinstance(table, PartCountTable):
        blocks = [(f"D{r + 1}", table.counts[r]) for r in range(table.t)]
        blocks.append(("total", table.totals))
        head = _HEADER.pack(MAGIC, FORMAT_VERSION, _KIND_COUNTS, table.k, table.t, table.N, len(blocks))
    elif isinstance(table, CoefficientTable):
        blocks = [(table.label, table.coeffs)]
        head = _HEADER.pack(MAGIC, FORMAT_VERSION, _KIND_COEFF, 0, 0, table.N, 1)
    else:
        raise TypeError("unsupported table type")
    buf.append(head)
    for label, values in blocks:
        _pack_block(buf, label, values)
    body = b"".join(buf)
    return body + struct.pack("<I", zlib.crc32(body))


def _parse_header(data):
    if len(data) < _HEADER.size:
        raise IntegrityError("file shorter than header", {"length": len(data)})
    magic, version, kind, k, t, N, nblocks = _HEADER.unpack_from(data)
    return {"magic": magic, "version": version, "kind": kind, "k": k, "t": t,
            "N": N, "blocks": nblocks}


def loads_table(data: bytes):
    header = _parse_header(data)
    if header["magic"] != MAGIC:
        raise IntegrityError("bad magic number", header)
    if header["version"] != FORMAT_VERSION:
        raise IntegrityError(f"unsupported format version {header['version']}", header)
    if len(data) < _HEADER.size + 4:
        raise IntegrityError("truncated file", header)
    body, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(body) != crc:
        raise IntegrityError("checksum mismatch", header)
    pos = _HEADER.size
    blocks = []
    try:
        for _ in range(header["blocks"]):
            lab_len, count = struct.unpack_from("<HQ", body, pos)
            pos += 10
            label = body[pos:pos + lab_len].decode()
            pos += lab_len
            values = []
            for _ in range(count):
                sign, ln = struct.unpack_from("<bI", body, pos)
                pos += 5
                mag = int.from_bytes(body[pos:pos + ln], "little")
                pos += ln
                values.append(sign * mag)
            blocks.append((label, tuple(values)))
    except (struct.error, UnicodeDecodeError) as exc:
        raise IntegrityError(f"malformed block: {exc}", header) from exc
    if pos != len(body):
        raise IntegrityError("trailing bytes after last block", header)
    if header["kind"] == _KIND_COEFF:
        label, values = blocks[0]
        return CoefficientTable(label, values)
    if header["kind"] == _KIND_COUNTS:
        counts = tuple(v for _, v in blocks[:-1])
        return PartCountTable(header["k"], header["t"], counts, blocks[-1][1])
    raise IntegrityError(f"unknown table kind {header['kind']}", header)


def save_table(table, path) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(dumps_table(table))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_table(path):
    with open(path, "rb") as fh:
        return loads_table(fh.read())


# ---------------------------------------------------------------------------
# CSV

CSV_SCHEMA = "kregular.exact/1"


def write_counts_csv(table: PartCountTable, fh=None) -> str:
    """Rows ``n, r, D, P_k`` with full decimal integers; returns the text."""
    out = io.StringIO() if fh is None else fh
    out.write(f"# schema={CSV_SCHEMA} k={table.k} t={table.t} N={table.N}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "r", "D", "P_k"])
    for n in range(table.N + 1):
        for r in range(1, table.t + 1):
            w.writerow([n, r, table.counts[r - 1][n], table.totals[n]])
    return out.getvalue() if fh is None else ""


def write_coefficients_csv(table: CoefficientTable, fh=None) -> str:
    out = io.StringIO() if fh is None else fh
    out.write(f"# schema=kregular.coefficients/1 label={table.label} N={table.N}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "value"])
    for n, v in enumerate(table.coeffs):
        w.writerow([n, v])
    return out.getvalue() if fh is None else ""
