"""
Tests for the flow and the boundary-value map.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp
from scipy.linalg import expm

from pwproof.exact import float_matrix, problem_data
from pwproof.flow import (
    FLOAT,
    INTERVAL,
    D2F_contraction,
    DF_map,
    F_map,
    exp_Dt,
    exp_Mt,
    get_arithmetic,
    integral_term,
    phi_plus,
    phi_plus_cell,
    vector_field,
)
from pwproof.interval import Interval, iv_intersects, ivec

from .reference import PUBLISHED_A_BAR

M = float_matrix(problem_data().M)
B = np.array([0.0, 0.0, 0.0, -1.0])


def contains(x, value, slack=0.0):
    return x.lo - slack <= value <= x.hi + slack


def mp_exp_Mt(t):
    """e^{Mt} in 40-digit arithmetic."""
    mpmath.mp.dps = 40
    data = problem_data()
    P = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in r] for r in data.P])
    Pinv = mpmath.matrix(
        [[mpmath.mpf(x.numerator) / x.denominator for x in r] for r in data.Pinv]
    )
    D = mpmath.diag([mpmath.exp(int(lam) * mpmath.mpf(t)) for lam in data.lam])
    return P * D * Pinv


class TestArithmetic:
    """Test mode selection."""

    def test_modes(self):
        assert get_arithmetic(FLOAT).name == "float"
        assert get_arithmetic(INTERVAL).name == "interval"
        with pytest.raises(ValueError):
            get_arithmetic("complex")

    def test_float_mode_rejects_intervals(self):
        with pytest.raises(TypeError):
            F_map([Interval(1.0), 0.0, 0.0, 0.0], FLOAT)


class TestExponential:
    """Test e^{Dt} and e^{Mt}."""

    def test_exp_Dt_zero(self):
        E = exp_Dt(Interval(0.0))
        for i in range(4):
            for j in range(4):
                assert E[i, j] == Interval(float(i == j))

    def test_exp_Dt_ln2(self):
        E = exp_Dt(Interval(math.log(2)))
        for i, value in enumerate((1 / 16, 1 / 8, 1 / 4, 1 / 2)):
            assert contains(E[i, i], value, 1e-15)

    def test_exp_Dt_at_zero_of_F(self):
        L = PUBLISHED_A_BAR[0]
        E = exp_Dt(Interval(L))
        mpmath.mp.dps = 40
        ref = mpmath.exp(-4 * mpmath.mpf(L))
        assert mpmath.mpf(E[0, 0].lo) <= ref <= mpmath.mpf(E[0, 0].hi)
        assert E[0, 0].mid == pytest.approx(3.4366e-3, rel=1e-3)

    def test_exp_Mt_identity(self):
        E = exp_Mt(Interval(0.0))
        for i in range(4):
            for j in range(4):
                assert float(i == j) in E[i, j]

    def test_exp_Mt_against_high_precision(self):
        E = exp_Mt(Interval(1.0))
        ref = mp_exp_Mt(1.0)
        for i in range(4):
            for j in range(4):
                assert mpmath.mpf(E[i, j].lo) <= ref[i, j] <= mpmath.mpf(E[i, j].hi)

    def test_semigroup(self, rng):
        for s, t in rng.uniform(0.0, 2.0, (20, 2)).tolist():
            product = exp_Mt(Interval(s)) @ exp_Mt(Interval(t))
            total = exp_Mt(Interval(s) + Interval(t))
            for i in range(4):
                for j in range(4):
                    assert iv_intersects(product[i, j], total[i, j])


class TestIntegralTerm:
    """Test the closed-form integral."""

    def test_zero_length(self):
        v = integral_term(Interval(0.0))
        assert all(x == Interval(0.0) for x in v)

    def test_diagonal_factors_at_ln2(self):
        # (e^{lam L} - 1) / lam at L = ln 2
        L = math.log(2)
        lam = np.array([-4.0, -3.0, -2.0, -1.0])
        g = (np.exp(lam * L) - 1) / lam
        assert g == pytest.approx([15 / 64, 7 / 24, 3 / 8, 1 / 2], rel=1e-14)

    def test_against_quadrature(self):
        L = PUBLISHED_A_BAR[0]
        v = integral_term(Interval(L))
        for i in range(4):
            ref, _ = quad(
                lambda s: (expm(M * (L - s)) @ B)[i], 0.0, L, epsabs=1e-14
            )
            assert contains(v[i], ref, 1e-12)


class TestPhiPlus:
    """Test the solution of the x1 > 0 piece."""

    def test_initial_condition(self):
        a = [1.0, 0.1, 0.2, 0.3]
        x = phi_plus(Interval(0.0), a)
        for value, enclosure in zip([0.0, 0.1, 0.2, 0.3], x):
            assert contains(enclosure, value, 1e-15)

    def test_boundary_condition(self):
        x = phi_plus(PUBLISHED_A_BAR[0], PUBLISHED_A_BAR, FLOAT)
        assert abs(x[0]) < 1e-12

    def test_against_integration(self):
        a = PUBLISHED_A_BAR
        t = a[0] / 2
        sol = solve_ivp(
            lambda s, y: M @ y + B,
            (0.0, t),
            [0.0, a[1], a[2], a[3]],
            method="RK45",
            rtol=1e-12,
            atol=1e-14,
        )
        x = phi_plus(Interval(t), a)
        for enclosure, value in zip(x, sol.y[:, -1]):
            assert contains(enclosure, value, 1e-9)

    def test_solves_ode(self, rng):
        a = PUBLISHED_A_BAR
        h = 1e-6
        for t in rng.uniform(0.0, a[0], 10).tolist():
            x = phi_plus(t, a, FLOAT)
            slope = (phi_plus(t + h, a, FLOAT) - x) / h
            assert np.max(np.abs(slope - vector_field(x, 1))) < 1e-4

    def test_mirrored_half_solves_minus_piece(self, rng):
        a = PUBLISHED_A_BAR
        L, h = a[0], 1e-6
        for t in rng.uniform(L, 2 * L - 1e-3, 10).tolist():
            x = -phi_plus(t - L, a, FLOAT)
            slope = (-phi_plus(t + h - L, a, FLOAT) - x) / h
            assert np.max(np.abs(slope - vector_field(x, -1))) < 1e-4

    def test_cell_enclosure_contains_samples(self):
        a = PUBLISHED_A_BAR
        cell = Interval(0.5, 0.51)
        box = phi_plus_cell(cell, a)
        for t in np.linspace(0.5, 0.51, 11):
            x = phi_plus(float(t), a, FLOAT)
            for enclosure, value in zip(box, x):
                assert contains(enclosure, value, 1e-14)

    def test_cell_enclosure_tighter_than_direct(self):
        a = PUBLISHED_A_BAR
        cell = Interval(0.5, 0.51)
        direct = phi_plus(cell, a)
        box = phi_plus_cell(cell, a)
        assert all(b.width <= d.width for b, d in zip(box, direct))
        assert box[0].width < direct[0].width


class TestF:
    """Test F and its derivatives."""

    def test_trivial_zero(self):
        F = F_map(ivec([0.0, 0.0, 0.0, 0.0]), INTERVAL)
        assert all(x == Interval(0.0) for x in F)

    def test_small_at_published_zero(self):
        assert np.max(np.abs(F_map(PUBLISHED_A_BAR, FLOAT))) < 1e-13

    def test_float_inside_interval(self, rng):
        for _ in range(100):
            a = np.array(PUBLISHED_A_BAR) + rng.uniform(-1e-3, 1e-3, 4)
            Fi = F_map(ivec(a.tolist()), INTERVAL)
            Ff = F_map(a, FLOAT)
            for enclosure, value in zip(Fi, Ff):
                assert contains(enclosure, value, 1e-15)

    def test_perturbed_is_nonzero(self):
        a = np.array(PUBLISHED_A_BAR) + np.array([1e-3, 0.0, 0.0, 0.0])
        assert np.max(np.abs(F_map(a, FLOAT))) > 1e-6

    def test_jacobian_column_at_zero_duration(self):
        DF = DF_map(ivec([0.0, 0.1, 0.2, 0.3]), INTERVAL)
        for i in range(4):
            assert contains(DF[i, 1], 2.0 * (i == 1), 1e-14)

    def test_jacobian_against_differences(self):
        a = np.array(PUBLISHED_A_BAR)
        DF = DF_map(a, FLOAT)
        h = 1e-6
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            column = (F_map(a + e, FLOAT) - F_map(a - e, FLOAT)) / (2 * h)
            assert np.max(np.abs(column - DF[:, k])) < 1e-8

    def test_jacobian_invertible(self):
        assert np.isfinite(np.linalg.cond(DF_map(PUBLISHED_A_BAR, FLOAT)))

    def test_interval_jacobian_contains_float(self):
        a = PUBLISHED_A_BAR
        DFi = DF_map(ivec(list(a)), INTERVAL)
        DFf = DF_map(a, FLOAT)
        for i in range(4):
            for j in range(4):
                assert contains(DFi[i, j], DFf[i, j], 1e-13)

    def test_mixed_slice_at_zero_duration(self):
        second = D2F_contraction(ivec([0.0, 0.1, 0.2, 0.3]))
        # P D P^-1 e2 = M e2
        for i, value in enumerate(M[:, 1]):
            assert contains(second.mixed[2][i], value, 1e-12)
        assert set(second.mixed) == {2, 3, 4}

    def test_second_derivatives_against_differences(self):
        a = np.array(PUBLISHED_A_BAR)
        second = D2F_contraction(a, FLOAT)
        h = 1e-4
        e1 = np.array([h, 0.0, 0.0, 0.0])
        d11 = (F_map(a + e1, FLOAT) - 2 * F_map(a, FLOAT) + F_map(a - e1, FLOAT)) / h**2
        assert np.max(np.abs(d11 - second.d11)) < 1e-5
        for k in (2, 3, 4):
            ek = np.zeros(4)
            ek[k - 1] = h
            d1k = (
                F_map(a + e1 + ek, FLOAT)
                - F_map(a + e1 - ek, FLOAT)
                - F_map(a - e1 + ek, FLOAT)
                + F_map(a - e1 - ek, FLOAT)
            ) / (4 * h**2)
            assert np.max(np.abs(d1k - second.mixed[k])) < 1e-5

    def test_pure_a_derivatives_vanish(self):
        # F is affine in (a2, a3, a4)
        a = np.array(PUBLISHED_A_BAR)
        h = 1e-3
        e2 = np.array([0.0, h, 0.0, 0.0])
        e3 = np.array([0.0, 0.0, h, 0.0])
        d23 = (
            F_map(a + e2 + e3, FLOAT)
            - F_map(a + e2 - e3, FLOAT)
            - F_map(a - e2 + e3, FLOAT)
            + F_map(a - e2 - e3, FLOAT)
        ) / (4 * h**2)
        assert np.max(np.abs(d23)) < 1e-6
