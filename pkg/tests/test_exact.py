"""
Tests for the exact problem data.
"""

from fractions import Fraction

import numpy as np
import pytest

from pwproof.errors import ExactDataError
from pwproof.exact import (
    ProblemData,
    build_problem_data,
    interval_matrix,
    rational_identity,
    rational_matmul,
    rational_matvec,
    rational_to_interval,
)
from pwproof.interval import Interval


@pytest.fixture(scope="module")
def data():
    return build_problem_data()


class TestProblemData:
    """Test the exact identities and entries."""

    def test_identities(self, data):
        eye = rational_identity(4)
        assert rational_matmul(data.M, data.Minv) == eye
        assert rational_matmul(data.P, data.Pinv) == eye

    def test_diagonalization(self, data):
        D = tuple(
            tuple(data.lam[i] if i == j else Fraction(0) for j in range(4))
            for i in range(4)
        )
        assert rational_matmul(data.M, data.P) == rational_matmul(data.P, D)

    def test_entries(self, data):
        assert data.Minv[0][3] == Fraction(-1, 24)
        assert data.Pinv[0][1] == Fraction(-11, 6)
        assert data.lam == (-4, -3, -2, -1)
        assert data.b == (0, 0, 0, -1)
        assert data.trace_M == -10

    def test_eigenvector(self, data):
        column = tuple(row[0] for row in data.P)
        assert rational_matvec(data.M, column) == tuple(-4 * x for x in column)
        assert rational_matvec(data.M, column) == (-4, 16, -64, 256)

    def test_derived_vectors(self, data):
        assert data.Minv_b == (Fraction(1, 24), 0, 0, 0)
        assert rational_matvec(data.P, data.Pinv_b) == data.b

    def test_bad_data_detected(self, data):
        bad_minv = ((Fraction(-50, 24),) * 4,) + data.Minv[1:]
        broken = ProblemData(**{**data.__dict__, "Minv": bad_minv})
        with pytest.raises(ExactDataError):
            broken.check()


class TestRationalToInterval:
    """Test conversion of rationals to enclosures."""

    def test_dyadic(self):
        assert rational_to_interval(Fraction(1, 2)) == Interval(0.5)

    def test_third(self):
        x = rational_to_interval(Fraction(1, 3))
        assert not x.is_degenerate
        assert Fraction(x.lo) < Fraction(1, 3) < Fraction(x.hi)

    def test_minv_entry(self):
        x = rational_to_interval(Fraction(-50, 24))
        assert Fraction(x.lo) <= Fraction(-25, 12) <= Fraction(x.hi)
        assert x.hi == np.nextafter(x.lo, np.inf)

    def test_interval_product_contains_identity(self, data):
        product = interval_matrix(data.P) @ interval_matrix(data.Pinv)
        for i in range(4):
            for j in range(4):
                assert float(i == j) in product[i, j]
