import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kregular.errors import CapabilityError, DomainError
from kregular.series import (DEFAULT_CAP, d_table, ell_array, ell_coeffs, enumerate_oracle,
                             indivisible_count, k_regular_table, memory_estimate, partition_table,
                             total_parts, write_coefficients_csv, write_counts_csv)

# OEIS A000041, A000009 (distinct parts), A000726 (3-regular)
P_HEAD = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]
Q_HEAD = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27]
P3_HEAD = [1, 1, 2, 2, 4, 5, 7, 9, 13, 16, 22, 27, 36, 44, 57, 70]


def test_partition_values():
    p = partition_table(1000)
    assert list(p.coeffs[:16]) == P_HEAD
    assert p[100] == 190569292
    assert p[1000] == 24061467864032622473692149727991
    assert p.N == 1000 and len(p) == 1001


def test_k_regular_values():
    assert list(k_regular_table(2, 15).coeffs) == Q_HEAD
    assert list(k_regular_table(3, 15).coeffs) == P3_HEAD
    assert k_regular_table(2, 5)[5] == 3


def test_large_k_regular_equals_partitions():
    # with k > n no multiplicity reaches k
    assert list(k_regular_table(50, 40).coeffs) == list(partition_table(40).coeffs)


def test_size_guard():
    with pytest.raises(CapabilityError):
        partition_table(DEFAULT_CAP + 1)
    with pytest.raises(DomainError):
        k_regular_table(1, 10)
    with pytest.raises(DomainError):
        partition_table(-1)
    assert memory_estimate(10 ** 6) > memory_estimate(10 ** 4) > 0


def test_ell_weights():
    # k = 2, r = 1, t = 2: +1 per odd divisor, -2 per divisor m with 2m | n, m odd
    e = ell_array(2, 1, 2, 8)
    assert list(e) == [0, 1, -1, 2, -1, 2, -2, 2, -1]
    assert e.dtype == np.int64
    tab = ell_coeffs(2, 1, 2, 8)
    assert tab.label == "Ell(2,1,2)" and list(tab.coeffs) == list(e)


def test_small_table_frozen():
    tab = d_table(2, 2, 3)
    assert tab.row(3) == [2, 1]
    assert tab.row(2) == [0, 1]
    assert tab.D(1, 1) == 1
    with pytest.raises(DomainError):
        tab.D(3, 1)


@settings(max_examples=40, deadline=None)
@given(k=st.integers(2, 7), t=st.integers(2, 8), N=st.integers(0, 60))
def test_residue_completeness(k, t, N):
    tab = d_table(k, t, N)
    tp = total_parts(k, N)
    for n in range(N + 1):
        assert sum(tab.row(n)) == tab.totals[n] == tp[n]
    for r in range(1, t + 1):
        assert tab.D(r, 0) == 0


@settings(max_examples=25, deadline=None)
@given(k=st.integers(2, 6), t=st.integers(2, 6), n=st.integers(0, 22))
def test_oracle_property(k, t, n):
    assert d_table(k, t, n).row(n) == enumerate_oracle(k, t, n)


def test_glaisher_equinumerosity():
    for k in range(2, 8):
        pk = k_regular_table(k, 80)
        for n in (0, 1, 17, 50, 80):
            assert pk[n] == indivisible_count(k, n)


def test_oracle_cap():
    with pytest.raises(CapabilityError):
        enumerate_oracle(2, 2, 41)
    assert indivisible_count(3, -1) == 0


def test_counts_csv():
    text = write_counts_csv(d_table(2, 2, 3))
    lines = text.splitlines()
    assert lines[0] == "# schema=kregular.exact/1 k=2 t=2 N=3"
    assert lines[1] == "n,r,D,P_k"
    assert "3,1,2,3" in lines and "3,2,1,3" in lines
    big = write_counts_csv(d_table(2, 2, 2000))
    assert "e+" not in big and "E" not in big.split("\n", 2)[2]


def test_coefficients_csv():
    buf = io.StringIO()
    write_coefficients_csv(partition_table(5), buf)
    lines = buf.getvalue().splitlines()
    assert lines[:3] == ["# schema=kregular.coefficients/1 label=P N=5", "n,value", "0,1"]
    assert lines[-1] == "5,7"
