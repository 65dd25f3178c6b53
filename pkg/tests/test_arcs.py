import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kregular.arcs import (ArcPoint, BoundId, E_k_eval, L_divisor_series, L_numeric,
                           bessel_tail_bound, bessel_tilde, ek_series_coefficient,
                           log_partition, phi, run_bound_suite, sample_case, verify_bound,
                           xi_numeric, xi_transform_log)
from kregular.errors import AccuracyError, DomainError, PreconditionError
from kregular.series import k_regular_table, partition_table
from kregular.specfun import bernoulli_number


def test_arc_point_region():
    p = ArcPoint(0.1, 0.05, 2.0)
    assert p.Delta == pytest.approx(math.sqrt(3))
    assert p.region == "major"
    assert ArcPoint(0.1, 1.0, 2.0).region == "minor"
    assert p.delta == pytest.approx(math.sqrt(1 + p.Delta ** 2))
    with pytest.raises(DomainError):
        ArcPoint(0.0, 0.1, 2.0)
    with pytest.raises(DomainError):
        ArcPoint(0.1, 0.1, 1.0)


def test_phi_values():
    got = phi(2, 1.0).to_complex()
    assert got == pytest.approx(2 ** -0.5 * math.exp(math.pi ** 2 / 12 + 1 / 24), rel=1e-14)
    z = complex(0.3, 0.7)
    assert phi(5, z.conjugate()).to_complex() == pytest.approx(phi(5, z).to_complex().conjugate(), rel=1e-14)
    for y in (0.01, 0.2, 1.0):
        assert abs(phi(3, complex(0.4, y)).to_complex()) < abs(phi(3, 0.4).to_complex())
    with pytest.raises(DomainError):
        phi(2, complex(0.0, 1.0))


def test_xi_numeric_limits_and_coefficients():
    assert xi_numeric(3, 40.0).value == pytest.approx(1.0, abs=1e-15)
    # the product at small real q reproduces 1 + q + 2q^2 + 2q^3 + ...
    q = 1e-3
    val = xi_numeric(3, -math.log(q)).value.real
    pk = k_regular_table(3, 8)
    assert val == pytest.approx(sum(pk[n] * q ** n for n in range(9)), rel=1e-15)


def test_xi_numeric_matches_mpmath():
    for k, z in [(2, 0.3 + 0.1j), (5, 0.05), (3, 0.1 - 0.2j)]:
        q = cmath.exp(-z)
        want = complex(mpmath.qp(q ** k, q ** k) / mpmath.qp(q, q))
        assert xi_numeric(k, z).value == pytest.approx(want, rel=1e-12)


def test_xi_accuracy_error():
    with pytest.raises(AccuracyError) as info:
        xi_numeric(2, 0.1, M=10)
    assert info.value.required_terms > 10
    with pytest.raises(DomainError):
        xi_numeric(2, -0.1)


def test_transformation_residual_example():
    z = 0.3 + 0.1j
    lg, _, tail = xi_transform_log(2, z)
    assert abs(cmath.exp(lg) - xi_numeric(2, z).value) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(k=st.sampled_from([2, 3, 5, 10]), eta=st.floats(0.02, 1.0), frac=st.floats(-1, 1),
       delta=st.floats(1.2, 5.0))
def test_transformation_on_major_arcs(k, eta, frac, delta):
    z = complex(eta, frac * math.sqrt(delta ** 2 - 1) * eta)
    prod = xi_numeric(k, z)
    lg, _, tail = xi_transform_log(k, z)
    # compare in log space; both sides carry relative tails
    assert abs(lg - prod.log) <= 1e-10 + 2 * (prod.tail + tail) + 1e-12 * abs(lg)


def test_L_divisor_example():
    q = 0.2
    z = -math.log(q)
    assert abs(L_numeric(3, 1, 4, z).value - L_divisor_series(3, 1, 4, q)) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(k=st.integers(2, 8), t=st.integers(2, 8), data=st.data(), rho=st.floats(0.05, 0.5),
       th=st.floats(-math.pi, math.pi))
def test_L_two_representations(k, t, data, rho, th):
    r = data.draw(st.integers(1, t))
    q = cmath.rect(rho, th)
    z = -cmath.log(q)
    assert abs(L_numeric(k, r, t, z).value - L_divisor_series(k, r, t, q, 400)) <= 1e-9


def test_L_real_and_r_equals_t():
    v = L_numeric(4, 3, 5, 0.2).value
    assert v.imag == 0.0
    z = 0.7 + 0.3j
    head = E_k_eval(3, 4 * z)
    full = L_numeric(3, 4, 4, z)
    rest = sum(E_k_eval(3, (l * 4 + 4) * z) for l in range(1, full.terms))
    assert full.value == pytest.approx(head + rest, rel=1e-12)


def test_E_k_limits():
    for k in (2, 3, 7):
        assert E_k_eval(k, 1e-9).real == pytest.approx((k - 1) / 2, rel=1e-8)
        assert E_k_eval(k, 0) == pytest.approx((k - 1) / 2)
    assert abs(E_k_eval(2, 10.0)) < 1e-3
    assert ek_series_coefficient(3, 0) == 1
    # e_{k,m} multiplies z^m / m!
    m = 3
    assert ek_series_coefficient(2, m) == (1 - 2 ** (m + 1)) * bernoulli_number(m + 1) / (m + 1)
    assert E_k_eval(2, 0.01) == pytest.approx(
        sum(float(ek_series_coefficient(2, j)) * 0.01 ** j / math.factorial(j) for j in range(12)),
        rel=1e-14)


@pytest.mark.parametrize("N", [0, 1, 6])
def test_E_k_branch_example(N):
    a = E_k_eval(3, 0.3, N, method="series")
    b = E_k_eval(3, 0.3, N, method="polylog")
    assert abs(a - b) <= 1e-9 * abs(b)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(2, 10), N=st.sampled_from([0, 1, 6]), rho=st.floats(1e-3, 1.0),
       th=st.floats(-math.pi, math.pi))
def test_E_k_branch_agreement(k, N, rho, th):
    z = cmath.rect(rho * math.pi / (2 * k), th)
    a = E_k_eval(k, z, N, method="series")
    b = E_k_eval(k, z, N, method="polylog")
    assert abs(a - b) <= 1e-9 * max(abs(b), 1e-300)


def test_E_k_polylog_matches_mpmath():
    z = 1.3 + 0.4j
    for N in (0, 2):
        want = complex(mpmath.diff(lambda w: 1 / mpmath.expm1(w) - 4 / mpmath.expm1(4 * w), z, N))
        assert E_k_eval(4, z, N) == pytest.approx(want, rel=1e-9)
    with pytest.raises(DomainError):
        E_k_eval(2, 3.0, method="series")


def test_log_partition_value():
    val, tail = log_partition(0.5)
    want = float(-mpmath.log(mpmath.qp(0.5)))
    assert val == pytest.approx(want, rel=1e-14)
    assert val == pytest.approx(1.2420620948, rel=1e-9)
    inst = verify_bound("LOGP_ABS", q=0.5)
    assert inst.holds and inst.rhs == pytest.approx(math.pi ** 2 / 3)


def test_pentagonal_identity_formal():
    # (q;q)_inf from pentagonal exponents times P(q): 1 + O(q^600)
    N = 599
    coeffs = np.zeros(N + 1, dtype=object)
    coeffs[0] = 1
    for m in range(1, 21):
        for e in (m * (3 * m + 1) // 2, m * (3 * m - 1) // 2):
            if e <= N:
                coeffs[e] += (-1) ** m
    p = partition_table(N).coeffs
    prod = [sum(coeffs[j] * p[n - j] for j in range(n + 1) if coeffs[j]) for n in range(N + 1)]
    assert prod[0] == 1 and all(v == 0 for v in prod[1:])


def test_minor_l_example():
    inst = verify_bound("MINOR_L", k=2, t=3, r=1, point=ArcPoint(0.1, 1.5, 2.0))
    assert inst.holds
    assert inst.rhs == pytest.approx(310.0)
    assert inst.lhs == pytest.approx(abs(L_numeric(2, 1, 3, 0.1 + 1.5j).value), rel=1e-6)


def test_major_xi_example():
    inst = verify_bound("MAJOR_XI", k=2, point=ArcPoint(0.2, 0.0, 2.0))
    assert inst.holds and inst.log_scale


def test_hypothesis_violations():
    with pytest.raises(PreconditionError, match="MINOR_L"):
        verify_bound("MINOR_L", k=4, t=3, r=1, point=ArcPoint(0.3, 1.0, 2.0))
    with pytest.raises(PreconditionError, match="MAJOR_L"):
        verify_bound("MAJOR_L", k=3, t=3, r=1, point=ArcPoint(0.5, 0.1, 2.0))
    with pytest.raises(PreconditionError):
        verify_bound("MAJOR_L", k=3, t=3, r=1)
    with pytest.raises(ValueError):
        verify_bound("NOT_A_BOUND")


def test_bessel_tilde_against_mpmath_segment():
    nu, x, mu, Delta = -2, 6.0, 3.5, 2.0

    def f(v):
        t = mpmath.mpc(mu, v)
        return t ** (-nu - 1) * mpmath.exp(t + x * x / (4 * t))

    with mpmath.workdps(30):
        want = float((x / 2) ** nu / mpmath.pi * mpmath.re(mpmath.quad(f, [0, Delta * mu])))
    val, err = bessel_tilde(nu, x, mu, Delta)
    assert val == pytest.approx(want, rel=1e-9)
    assert err < 1e-6 * abs(val)


def test_bessel_tail_includes_growth_factor():
    b_bare = bessel_tail_bound(2, 9.47, 4.94, 5.16, drop_exp_mu=True)
    b = bessel_tail_bound(2, 9.47, 4.94, 5.16)
    assert b == pytest.approx(b_bare * math.exp(4.94), rel=1e-12)
    inst = verify_bound("BESSEL_TAIL", s=2, x=9.47, mu=4.94, delta=5.16)
    assert inst.holds
    assert inst.lhs > b_bare  # the bound without e^mu would fail here


def test_suite_deterministic_and_seeded():
    a = run_bound_suite(seed=11, count=5)
    b = run_bound_suite(seed=11, count=5)
    assert [i.lhs for i in a.instances] == [i.lhs for i in b.instances]
    # a single bound's draws do not depend on which other bounds run
    c = run_bound_suite(seed=11, count=5, bound_ids=[BoundId.MINOR_XI])
    assert [i.lhs for i in c.instances] == [i.lhs for i in a.instances if i.bound_id == "MINOR_XI"]
    assert a.passed
    assert '"schema": "kregular.bound-suite/1"' in a.to_json()


def test_sampled_points_admissible():
    rng = np.random.default_rng(3)
    for bid in BoundId:
        case = sample_case(bid, rng)
        verify_bound(bid, **case)
