"""Special-function layer: log-gamma, polygamma, Hurwitz zeta with
s-derivatives.  References are scipy (independent implementation) plus the
frozen multiprecision tables in oracles.py."""

import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.special as sps

from hardyz.errors import DomainError, PoleError, UnsupportedOrderError
from hardyz.specfun import hurwitz_zeta, log_gamma, polygamma, _bernoulli_exact

from oracles import (HURWITZ_REFS, LOGGAMMA_REFS, POLYGAMMA_REFS, STIELTJES_1,
                     fd_derivative)


def test_bernoulli_exact_values():
    b = _bernoulli_exact(12)
    assert b[2] == Fraction(1, 6)
    assert b[4] == Fraction(-1, 30)
    assert b[6] == Fraction(1, 42)
    assert b[12] == Fraction(-691, 2730)
    assert b[3] == 0 and b[5] == 0


def test_log_gamma_matches_scipy():
    rng = np.random.default_rng(11)
    # cover both the direct Stirling region and the recurrence-shift region
    re = rng.uniform(-6.0, 30.0, 120)
    im = rng.uniform(-80.0, 80.0, 120)
    z = re + 1j * im
    keep = np.abs(z.imag) > 1e-3  # stay off the real-axis poles
    z = z[keep]
    ours = log_gamma(z)
    ref = sps.loggamma(z)
    scale = 1.0 + np.abs(ref)
    assert np.max(np.abs(ours - ref) / scale) < 5e-14


def test_log_gamma_reference_values():
    for z, ref in LOGGAMMA_REFS:
        got = complex(log_gamma(np.array([z]))[0])
        assert abs(got - ref) < 1e-12 * (1.0 + abs(ref))


def test_log_gamma_real_positive():
    got = complex(log_gamma(np.array([complex(7.0, 0.0)]))[0])
    assert abs(got - math.log(720.0)) < 1e-12


def test_log_gamma_pole_raises():
    for bad in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            log_gamma(np.array([complex(bad, 0.0)]))


def test_polygamma_matches_scipy_real():
    x = np.linspace(0.25, 25.0, 40)
    for m in range(0, 7):
        ours = polygamma(m, x.astype(complex))
        ref = sps.polygamma(m, x)
        assert np.max(np.abs(ours.real - ref) / (1.0 + np.abs(ref))) < 2e-13
        assert np.max(np.abs(ours.imag)) < 1e-13 * np.max(1.0 + np.abs(ref))


def test_polygamma_reference_values():
    for m, z, ref in POLYGAMMA_REFS:
        got = complex(polygamma(m, np.array([z]))[0])
        assert abs(got - ref) < 1e-12 * (1.0 + abs(ref))


def test_polygamma_recurrence_identity():
    # psi^(m)(z+1) = psi^(m)(z) + (-1)^m m! z^(-m-1)
    for m in (0, 1, 3, 5):
        for z in (complex(0.3, 2.0), complex(-4.6, 1.1), complex(2.0, -9.0)):
            lhs = complex(polygamma(m, np.array([z + 1.0]))[0])
            rhs = complex(polygamma(m, np.array([z]))[0]) \
                + (-1.0) ** m * math.factorial(m) * z ** (-m - 1)
            assert abs(lhs - rhs) < 1e-12 * (1.0 + abs(lhs))


def test_polygamma_order_cap():
    with pytest.raises(UnsupportedOrderError):
        polygamma(17, np.array([complex(2.0, 0.0)]))


def test_polygamma_pole_raises():
    with pytest.raises(PoleError):
        polygamma(1, np.array([complex(-3.0, 0.0)]))


def test_hurwitz_closed_forms():
    pts = [(0.0, -0.5), (-1.0, -1.0 / 12.0),
           (2.0, math.pi ** 2 / 6.0), (4.0, math.pi ** 4 / 90.0)]
    for s, want in pts:
        got = complex(hurwitz_zeta(np.array([complex(s, 0.0)]))[0])
        assert abs(got.real - want) < 1e-14 * (1.0 + abs(want))
        assert got.imag == 0.0


def test_hurwitz_half_shift_identity():
    # zeta(s, 1/2) = (2^s - 1) zeta(s)
    for s in (complex(2.5, 0.0), complex(0.5, 7.0), complex(-1.2, 20.0)):
        lhs = complex(hurwitz_zeta(np.array([s]), a=0.5)[0])
        rhs = (2.0 ** s - 1.0) * complex(hurwitz_zeta(np.array([s]))[0])
        assert abs(lhs - rhs) < 1e-12 * (1.0 + abs(lhs))


def test_hurwitz_reference_table():
    for s, a, j, ref in HURWITZ_REFS:
        val, est = hurwitz_zeta(np.array([s]), a=a, deriv=j, with_error=True)
        err = abs(complex(val[0]) - ref)
        # value correct within its own reported bar, and the bar itself honest
        assert err <= max(float(est[0]), 1e-13 * (1.0 + abs(ref)))
        assert err <= 1e-6 * (1.0 + abs(ref))


def test_hurwitz_direct_sum_oracle():
    # independent check in the absolutely convergent region: partial sum
    # plus integral tail plus half-term; remainder below 0.1*|s|*(N+a)^(-sigma-1)
    rng = np.random.default_rng(3)
    n_terms = 20000
    n = np.arange(n_terms)
    for _ in range(12):
        sigma = rng.uniform(1.6, 6.0)
        t = rng.uniform(0.0, 50.0)
        a = float(rng.choice([1.0, 0.25, 0.5, 0.75]))
        s = complex(sigma, t)
        partial = np.sum((n + a) ** (-s))
        big = n_terms + a
        oracle = partial + big ** (1.0 - s) / (s - 1.0) + 0.5 * big ** (-s)
        bound = 0.2 * abs(s) * big ** (-sigma - 1.0)
        val, est = hurwitz_zeta(np.array([s]), a=a, with_error=True)
        assert abs(complex(val[0]) - oracle) <= bound + float(est[0]) + 1e-12


def test_hurwitz_derivative_vs_fd():
    pts = [(complex(2.2, 6.0), 1.0), (complex(0.6, 18.0), 0.25),
           (complex(-1.0, 9.0), 0.75)]
    for s0, a in pts:
        for j in (1, 2, 3):
            def lower(x, _j=j - 1, _a=a, _im=s0.imag):
                return complex(hurwitz_zeta(
                    np.array([complex(x, _im)]), a=_a, deriv=_j)[0])
            fd_re = fd_derivative(lambda x: lower(x).real, s0.real, h=5e-3)
            fd_im = fd_derivative(lambda x: lower(x).imag, s0.real, h=5e-3)
            got = complex(hurwitz_zeta(np.array([s0]), a=a, deriv=j)[0])
            assert abs(complex(fd_re, fd_im) - got) < 1e-7 * (1.0 + abs(got))


def test_hurwitz_sub_pole_digamma_anchor():
    # lim_{s->1} [zeta(s,a) - 1/(s-1)] = -psi(a)
    for a in (1.0, 0.25, 0.75):
        got = complex(hurwitz_zeta(np.array([complex(1.0, 0.0)]), a=a,
                                   sub_pole=True)[0])
        want = -complex(polygamma(0, np.array([complex(a, 0.0)]))[0])
        assert abs(got - want) < 1e-12 * (1.0 + abs(want))


def test_hurwitz_sub_pole_stieltjes_derivative():
    # d/ds [zeta(s) - 1/(s-1)] at s=1 equals -gamma_1
    got = complex(hurwitz_zeta(np.array([complex(1.0, 0.0)]), deriv=1,
                               sub_pole=True)[0])
    assert abs(got.real - (-STIELTJES_1)) < 1e-12
    assert abs(got.imag) < 1e-13


def test_hurwitz_sub_pole_matches_plain_far_from_pole():
    s = complex(3.0, 2.0)
    for j in (0, 1, 2):
        plain = complex(hurwitz_zeta(np.array([s]), deriv=j)[0])
        sub = complex(hurwitz_zeta(np.array([s]), deriv=j, sub_pole=True)[0])
        pole_part = (-1.0) ** j * math.factorial(j) * (s - 1.0) ** (-j - 1)
        assert abs(sub - (plain - pole_part)) < 1e-12 * (1.0 + abs(plain))


def test_hurwitz_sub_pole_smooth_across_one():
    # the near-pole Taylor branch and the far branch must agree where they meet
    center = complex(hurwitz_zeta(np.array([complex(1.0, 0.0)]), sub_pole=True)[0])
    for eps in (1e-6, 1e-4, 1e-2):
        left = complex(hurwitz_zeta(np.array([complex(1.0 - eps, 0.0)]), sub_pole=True)[0])
        right = complex(hurwitz_zeta(np.array([complex(1.0 + eps, 0.0)]), sub_pole=True)[0])
        assert abs(left - center) < 1e-5 + 2.0 * eps
        assert abs(right - center) < 1e-5 + 2.0 * eps


def test_hurwitz_validation():
    with pytest.raises(DomainError):
        hurwitz_zeta(np.array([complex(2.0, 0.0)]), a=1.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(np.array([complex(2.0, 0.0)]), a=0.0)
    with pytest.raises(UnsupportedOrderError):
        hurwitz_zeta(np.array([complex(2.0, 0.0)]), deriv=5)
    with pytest.raises(PoleError):
        hurwitz_zeta(np.array([complex(1.0, 0.0)]))


def test_hurwitz_repeat_call_determinism():
    ss = np.array([complex(0.5, 10.0), complex(2.0, 40.0), complex(-1.0, 3.0)])
    first = hurwitz_zeta(ss, a=0.75, deriv=1)
    second = hurwitz_zeta(ss, a=0.75, deriv=1)
    assert np.array_equal(first, second)


def test_hurwitz_vector_scalar_agreement():
    # the truncation point is chosen per batch from the largest |Im s|, so
    # different batch compositions agree within the reported bars, not bitwise
    ss = np.array([complex(0.5, 10.0), complex(2.0, 40.0), complex(-1.0, 3.0)])
    vec, vec_est = hurwitz_zeta(ss, a=0.75, deriv=1, with_error=True)
    for i, s in enumerate(ss):
        one, one_est = hurwitz_zeta(np.array([s]), a=0.75, deriv=1,
                                    with_error=True)
        assert abs(complex(vec[i]) - complex(one[0])) \
            <= float(vec_est[i]) + float(one_est[0])
