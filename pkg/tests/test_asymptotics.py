import io
import math

import pytest
from hypothesis import given, settings, strategies as st

from kregular.asymptotics import (RegularityParams, corollary_diff, difference_ratio, hat_d,
                                  q_grid, q_ratio, write_q_grid_csv)
from kregular.errors import DependencyError, DomainError
from kregular.series import d_table


def test_params_validation():
    with pytest.raises(DomainError):
        RegularityParams(1, 4, 1)
    with pytest.raises(DomainError):
        RegularityParams(3, 4, 5)
    assert RegularityParams(4, 4, 1).K == pytest.approx(0.75)


def test_hat_d_distinct_parts_closed_form():
    # k = 2, K = 1/2: leading term 3^{1/4} e^{pi sqrt(n/3)} log 2 / (2^{3/4} 2^{-1/4} n^{1/4} sqrt2 pi t)
    n, t = 400, 2
    lead = (3 ** 0.25 * math.exp(math.pi * math.sqrt(n / 3)) * math.log(2)
            / (math.pi * t * 2 ** 0.75 * 0.5 ** 0.25 * n ** 0.25 * math.sqrt(2)))
    a = math.sqrt(3) * math.log(2) / (8 * math.pi)
    b = t * math.pi / (4 * math.sqrt(3))
    for r in (1, 2):
        want = lead / math.log(2) * (math.log(2) + (a - b * (r / t - 0.5)) / math.sqrt(n))
        assert hat_d(RegularityParams(2, t, r), n).to_float() == pytest.approx(want, rel=1e-13)


def test_hat_d_domain():
    with pytest.raises(DomainError):
        hat_d(RegularityParams(2, 2, 1), 0)
    assert hat_d(RegularityParams(3, 4, 1), 10 ** 6).exponent > 700


@settings(max_examples=50)
@given(k=st.integers(2, 10), t=st.integers(2, 10), data=st.data(), n=st.integers(1, 10 ** 6))
def test_corollary_is_difference(k, t, data, n):
    r = data.draw(st.integers(1, t - 1))
    s = data.draw(st.integers(r + 1, t))
    diff = hat_d(RegularityParams(k, t, r), n) - hat_d(RegularityParams(k, t, s), n)
    cd = corollary_diff(RegularityParams(k, t, r), s, n)
    assert (diff / cd).to_float() == pytest.approx(1.0, rel=1e-9)


def test_corollary_depends_on_gap_only():
    a = corollary_diff(RegularityParams(4, 6, 1), 3, 500)
    b = corollary_diff(RegularityParams(4, 6, 3), 5, 500)
    assert a.compare(b) == 0
    with pytest.raises(DomainError):
        corollary_diff(RegularityParams(4, 6, 3), 3, 500)


def test_q_ratio_requires_table():
    p = RegularityParams(3, 4, 1)
    with pytest.raises(DependencyError):
        q_ratio(p, 10, None)
    with pytest.raises(DependencyError):
        q_ratio(p, 100, d_table(3, 4, 50))
    with pytest.raises(DependencyError):
        q_ratio(p, 10, d_table(4, 4, 50))


def test_q_ratio_small_values():
    tab = d_table(3, 4, 100)
    assert q_ratio(RegularityParams(3, 4, 1), 10, tab) == pytest.approx(1.02401, abs=1e-5)
    assert q_ratio(RegularityParams(3, 4, 2), 100, tab) == pytest.approx(1.00469, abs=1e-5)


def test_q_converges(t4_tables):
    qs = [abs(q_ratio(RegularityParams(4, 4, 1), n, t4_tables[4]) - 1) for n in (100, 1000, 10000)]
    assert qs[0] > qs[1] > qs[2]


def test_difference_ratio_small_n():
    tab = d_table(3, 4, 2000)
    ratio = difference_ratio(RegularityParams(3, 4, 1), 2, 2000, tab)
    assert 0.9 < ratio < 1.1


def test_q_grid_csv(t4_tables):
    rows = q_grid(t4_tables)
    assert len(rows) == 16
    text = write_q_grid_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "# schema=kregular.qgrid/1"
    assert lines[1] == "k,t,r,n,D_exact_digits,Q"
    assert lines[2].startswith("3,4,1,10,")
    first = lines[2].split(",")
    assert int(first[4]) == t4_tables[3].D(1, 10)
    assert float(first[5]) == pytest.approx(1.02401, abs=1e-5)
    buf = io.StringIO()
    write_q_grid_csv(rows, buf)
    assert buf.getvalue() == text
