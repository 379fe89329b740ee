"""
Tests for interval arithmetic.
"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from pwproof.errors import IntervalDomainError, IntervalError, IntervalOverflowError
from pwproof.exact import interval_matrix, problem_data
from pwproof.interval import (
    Interval,
    imat,
    imat_det,
    imat_identity,
    imat_inf_norm,
    imat_mid,
    imat_mul,
    imat_vec,
    iv_abs,
    iv_add,
    iv_contains,
    iv_div,
    iv_exp,
    iv_hull,
    iv_intersect,
    iv_intersects,
    iv_mag,
    iv_mul,
    iv_neg,
    iv_sub,
    iv_subset,
    ivec,
    ivec_inf_norm,
)

N_CASES = 100_000

OPS = {
    "add": (iv_add, lambda p, q: p + q),
    "sub": (iv_sub, lambda p, q: p - q),
    "mul": (iv_mul, lambda p, q: p * q),
    "div": (iv_div, lambda p, q: p / q),
}


def random_floats(rng, n):
    """Floats of both signs spread over many binades."""
    mantissa = rng.uniform(-1.0, 1.0, n)
    exponent = rng.integers(-60, 60, n)
    return [math.ldexp(float(m), int(e)) for m, e in zip(mantissa, exponent)]


def contains(x, q):
    return Fraction(x.lo) <= q <= Fraction(x.hi)


class TestConstruction:
    """Test interval validation and accessors."""

    def test_degenerate(self):
        x = Interval(2.5)
        assert x.lo == x.hi == 2.5
        assert x.is_degenerate

    def test_rejects_empty(self):
        with pytest.raises(IntervalError):
            Interval(2.0, 1.0)

    def test_rejects_nan(self):
        with pytest.raises(IntervalError):
            Interval(float("nan"), 1.0)

    def test_rejects_infinite(self):
        with pytest.raises(IntervalOverflowError):
            Interval(0.0, math.inf)

    def test_from_fraction_dyadic_is_exact(self):
        x = Interval.from_fraction(Fraction(1, 2))
        assert x == Interval(0.5)

    def test_from_fraction_third(self):
        x = Interval.from_fraction(Fraction(1, 3))
        assert contains(x, Fraction(1, 3))
        assert x.hi == math.nextafter(x.lo, math.inf)

    def test_hex_round_trip(self):
        x = Interval(0.1, 0.3)
        assert Interval.from_hex(x.hex()) == x

    def test_accessors(self):
        x = Interval(-3.0, 1.0)
        assert x.mid == -1.0
        assert x.rad == 2.0
        assert x.width == 4.0
        assert x.mag == 3.0
        assert x.mig == 0.0
        assert Interval(2.0, 5.0).mig == 2.0

    def test_membership(self):
        x = Interval(1.0, 2.0)
        assert 1.5 in x
        assert Fraction(3, 2) in x
        assert 2.5 not in x
        assert Interval(1.2, 1.8) in x


class TestArithmetic:
    """Test the basic operations."""

    def test_exact_sum_stays_degenerate(self):
        assert Interval(1.0) + Interval(2.0) == Interval(3.0)

    def test_inexact_sum_widens_one_ulp(self):
        x = Interval(0.1) + Interval(0.2)
        assert x.hi == math.nextafter(x.lo, math.inf)
        assert contains(x, Fraction(0.1) + Fraction(0.2))

    def test_mixed_operands(self):
        x = 1 + Interval(0.5) * 2 - Fraction(1, 2)
        assert x == Interval(1.5)
        assert 0 + Interval(1.0) == Interval(1.0)

    def test_division_by_zero_interval(self):
        with pytest.raises(IntervalDomainError):
            Interval(1.0) / Interval(-1.0, 1.0)

    def test_division_third(self):
        x = Interval(1.0) / Interval(3.0)
        assert contains(x, Fraction(1, 3))

    def test_overflow(self):
        big = Interval(1.7e308)
        with pytest.raises(IntervalOverflowError):
            big + big

    def test_abs(self):
        assert iv_abs(Interval(-2.0, 1.0)) == Interval(0.0, 2.0)
        assert iv_abs(Interval(-2.0, -1.0)) == Interval(1.0, 2.0)

    def test_contains(self):
        x = Interval(-1.0, 2.0)
        assert iv_contains(x, -1.0)
        assert iv_contains(x, 2.0)
        assert iv_contains(x, 0.5)
        assert not iv_contains(x, math.nextafter(2.0, math.inf))
        assert not iv_contains(x, -3.0)

    def test_mag(self):
        assert iv_mag(Interval(-3.0, 2.0)) == 3.0
        assert iv_mag(Interval(0.5, 4.0)) == 4.0
        assert iv_mag(Interval(0.0)) == 0.0

    def test_hull_and_intersection(self):
        x, y = Interval(0.0, 2.0), Interval(1.0, 3.0)
        assert iv_hull(x, y) == Interval(0.0, 3.0)
        assert iv_intersect(x, y) == Interval(1.0, 2.0)
        assert iv_intersect(x, Interval(5.0, 6.0)) is None
        assert iv_intersects(x, y)
        assert iv_subset(Interval(0.5, 1.0), x)

    def test_product_of_signed_intervals(self):
        x = Interval(-1.0, 2.0) * Interval(-3.0, 4.0)
        assert x == Interval(-6.0, 8.0)


class TestContainment:
    """Random containment and width checks against exact rationals."""

    @pytest.mark.parametrize("name", list(OPS))
    def test_degenerate_operands(self, name):
        op, exact = OPS[name]
        rng = np.random.default_rng(1234)
        xs = random_floats(rng, N_CASES)
        ys = random_floats(rng, N_CASES)
        for a, b in zip(xs, ys):
            if name == "div" and b == 0.0:
                continue
            result = op(Interval(a), Interval(b))
            q = exact(Fraction(a), Fraction(b))
            assert contains(result, q), (name, a.hex(), b.hex())
            # One rounding step at most
            assert result.hi == result.lo or result.hi == math.nextafter(
                result.lo, math.inf
            )

    @pytest.mark.parametrize("name", list(OPS))
    def test_interval_operands(self, name):
        op, exact = OPS[name]
        rng = np.random.default_rng(99)
        for _ in range(10_000):
            a, b = sorted(random_floats(rng, 2))
            c, d = sorted(random_floats(rng, 2))
            if name == "div" and c <= 0.0 <= d:
                continue
            result = op(Interval(a, b), Interval(c, d))
            for p in (Fraction(a), Fraction(b), (Fraction(a) + Fraction(b)) / 2):
                for q in (Fraction(c), Fraction(d)):
                    assert contains(result, exact(p, q))

    @pytest.mark.parametrize("name", list(OPS))
    def test_inclusion_monotone(self, name):
        op, _ = OPS[name]
        rng = np.random.default_rng(7)
        for _ in range(N_CASES):
            lo, hi = sorted(random_floats(rng, 2))
            inner = Interval(*sorted(rng.uniform(lo, hi, 2).tolist()))
            outer = Interval(lo, hi)
            z = Interval(*sorted(rng.uniform(0.5, 3.0, 2).tolist()))
            assert iv_subset(op(inner, z), op(outer, z))

    def test_negation(self):
        rng = np.random.default_rng(5)
        for _ in range(N_CASES // 10):
            a, b = sorted(random_floats(rng, 2))
            x = iv_neg(Interval(a, b))
            assert x == Interval(-b, -a)
            for p in (Fraction(a), Fraction(b), (Fraction(a) + Fraction(b)) / 2):
                assert contains(x, -p)
            assert iv_neg(x) == Interval(a, b)


class TestExp:
    """Test the exponential enclosure."""

    def test_zero(self):
        assert iv_exp(Interval(0.0)) == Interval(1.0)

    def test_contains_high_precision_value(self):
        mpmath.mp.dps = 50
        rng = np.random.default_rng(5)
        for x in rng.uniform(-10.0, 10.0, 10_000).tolist():
            y = iv_exp(Interval(x))
            true = mpmath.exp(mpmath.mpf(x))
            assert mpmath.mpf(y.lo) <= true <= mpmath.mpf(y.hi)

    def test_width_control(self):
        rng = np.random.default_rng(6)
        for x in rng.uniform(-10.0, 10.0, 10_000).tolist():
            y = iv_exp(Interval(x))
            assert y.hi - y.lo <= 8 * math.ulp(y.mid)

    def test_wide_argument(self):
        mpmath.mp.dps = 50
        y = iv_exp(Interval(-1.0, 1.0))
        assert mpmath.mpf(y.lo) <= mpmath.exp(-1)
        assert mpmath.exp(1) <= mpmath.mpf(y.hi)

    def test_monotone_bounds(self):
        rng = np.random.default_rng(8)
        xs = np.sort(rng.uniform(-20.0, 20.0, 2000)).tolist()
        uppers = [iv_exp(Interval(x)).hi for x in xs]
        lowers = [iv_exp(Interval(x)).lo for x in xs]
        assert uppers == sorted(uppers)
        assert lowers == sorted(lowers)

    def test_domain(self):
        with pytest.raises(IntervalDomainError):
            iv_exp(Interval(61.0))
        with pytest.raises(IntervalDomainError):
            iv_exp(Interval(-61.0, 0.0))

    def test_extreme_arguments(self):
        mpmath.mp.dps = 50
        for x in (-60.0, 60.0):
            y = iv_exp(Interval(x))
            assert mpmath.mpf(y.lo) <= mpmath.exp(x) <= mpmath.mpf(y.hi)


class TestMatrices:
    """Test vector and matrix helpers."""

    def test_vector_norm(self):
        assert ivec_inf_norm(ivec([1.0, -2.0, 0.0, 0.5])) == 2.0

    def test_matrix_norm(self):
        A = imat([[1.0, -2.0], [0.5, 0.25]])
        assert imat_inf_norm(A) == 3.0

    def test_identity_product(self):
        A = imat([[1.0, 2.0], [3.0, 4.0]])
        assert (imat_identity(2) @ A == A).all()

    def test_imat_mul_identity(self):
        A = imat([[1.0, -2.0, 0.5], [3.0, 0.25, 4.0], [-1.0, 0.0, 2.0]])
        assert (imat_mul(imat_identity(3), A) == A).all()
        assert (imat_mul(A, imat_identity(3)) == A).all()

    def test_imat_mul_contains_float_product(self):
        rng = np.random.default_rng(11)
        A = rng.uniform(-1.0, 1.0, (4, 4))
        B = rng.uniform(-1.0, 1.0, (4, 4))
        C = imat_mul(A, B)
        for i in range(4):
            for j in range(4):
                q = sum(Fraction(A[i, k]) * Fraction(B[k, j]) for k in range(4))
                assert contains(C[i, j], q)

    def test_imat_vec_vandermonde_column(self):
        P = interval_matrix(problem_data().P)
        v = imat_vec(P, [1.0, 0.0, 0.0, 0.0])
        assert list(v) == [Interval(1.0), Interval(-4.0), Interval(16.0), Interval(-64.0)]

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            imat_mul(np.eye(2), np.eye(3))
        with pytest.raises(ValueError):
            imat_vec(np.eye(4), [1.0, 2.0])

    def test_mid(self):
        A = imat([[Interval(1.0, 3.0), 0.0], [0.0, 1.0]])
        assert np.array_equal(imat_mid(A), np.array([[2.0, 0.0], [0.0, 1.0]]))

    def test_det_diagonal(self):
        A = imat(np.diag([2.0, 3.0, 4.0, 0.5]))
        assert imat_det(A) == Interval(12.0)

    def test_det_laplace_fallback(self):
        # Zero leading pivot forces the expansion path
        A = imat([[0.0, 1.0], [1.0, 0.0]])
        assert imat_det(A) == Interval(-1.0)

    def test_det_contains_exact(self):
        A = imat([[4.0, 1.0, 0.5], [1.0, 3.0, 0.25], [0.5, 0.25, 2.0]])
        exact = np.linalg.det(np.array([[4.0, 1.0, 0.5], [1.0, 3.0, 0.25], [0.5, 0.25, 2.0]]))
        d = imat_det(A)
        assert d.lo - 1e-12 <= exact <= d.hi + 1e-12
