"""
Tests for mesh positivity, the full orbit and the reference integration.
"""

import numpy as np
import pytest

from pwproof.errors import ProofFailure
from pwproof.flow import FLOAT, phi_plus
from pwproof.interval import Interval, ivec
from pwproof.orbit import (
    PeriodicOrbit,
    build_full_orbit,
    cells_frame,
    mesh_cells,
    simulate_switching,
    verify_positivity,
)


def parabola(cell, a):
    """phi1 = t (1 - t), phi2 = 1 - 2 t on [0, 1]."""
    return ivec([cell - cell * cell, 1 - 2 * cell, 0.0, 0.0])


def wrong_slope(cell, a):
    """Same phi1, but a slope of the wrong sign."""
    return ivec([cell - cell * cell, 2 * cell - 1, 0.0, 0.0])


class TestMesh:
    """Test the mesh construction."""

    def test_coverage(self):
        L = Interval(1.4, 1.4000000000001)
        cells = mesh_cells(L, 300)
        assert len(cells) == 300
        assert cells[0].lo == 0.0
        assert cells[-1].hi >= L.hi
        for left, right in zip(cells, cells[1:]):
            assert right.lo <= left.hi


class TestVerifyPositivity:
    """Test the three-phase positivity check."""

    def test_default_mesh(self, segment):
        assert 1 < segment.k1 < segment.k2 < 300
        assert len(segment.cells) == 300

    def test_middle_cells_positive(self, segment):
        for k in range(segment.k1, segment.k2 + 1):
            assert segment.enclosures[k - 1][0].lo > 0.0

    def test_flanks(self, segment):
        for k in range(1, segment.k1):
            assert segment.enclosures[k - 1][1].lo > 0.0
        for k in range(segment.k2 + 1, 301):
            assert segment.enclosures[k - 1][1].hi < 0.0

    def test_cells_cover_half_period(self, segment):
        assert segment.cells[0].lo == 0.0
        assert segment.cells[-1].hi >= segment.L_enclosure.hi

    def test_coarse_mesh_fails(self, box):
        with pytest.raises(ProofFailure) as info:
            verify_positivity(box, box[0], 3)
        assert info.value.stage == "positivity"
        assert 1 <= info.value.diagnostics["cell"] <= 3
        assert len(info.value.diagnostics["enclosure"]) == 4

    def test_manufactured_system(self):
        seg = verify_positivity(ivec([1.0, 0.0, 0.0, 0.0]), Interval(1.0), 20, enclose=parabola)
        assert seg.k1 == 2
        assert 2 < seg.k2 < 20

    def test_manufactured_failure(self):
        with pytest.raises(ProofFailure) as info:
            verify_positivity(
                ivec([1.0, 0.0, 0.0, 0.0]), Interval(1.0), 20, enclose=wrong_slope
            )
        assert info.value.diagnostics["cell"] == 1
        assert "left flank" in info.value.diagnostics["reason"]

    def test_parallel_matches_serial(self, box, segment):
        parallel = verify_positivity(box, box[0], 300, workers=2)
        assert (parallel.k1, parallel.k2) == (segment.k1, segment.k2)
        for a, b in zip(parallel.enclosures, segment.enclosures):
            assert all(x == y for x, y in zip(a, b))

    def test_cells_frame(self, segment):
        frame = cells_frame(segment)
        assert len(frame) == 300
        assert list(frame.columns[:3]) == ["k", "t_lo", "t_hi"]
        assert set(frame["phase"]) == {"left", "middle", "right"}
        assert (frame["x1_lo"][frame["phase"] == "middle"] > 0).all()


class TestPeriodicOrbit:
    """Test the full orbit built from the half orbit."""

    def test_crossing_points(self, segment, a_bar):
        orbit = build_full_orbit(segment, a_bar)
        for x, y in zip(orbit.a_plus, orbit.a_minus):
            assert x == -y
        assert a_bar[1] in orbit.a_plus[1]
        assert orbit.a_plus[0] == Interval(0.0)

    def test_half_period_symmetry(self, a_bar, rng):
        orbit = PeriodicOrbit.from_center(a_bar)
        L = orbit.half_period
        for t in rng.uniform(0.0, 2 * L, 20).tolist():
            assert np.allclose(orbit.state(t + L), -orbit.state(t), atol=1e-10)

    def test_periodic(self, a_bar):
        orbit = PeriodicOrbit.from_center(a_bar)
        L = orbit.half_period
        assert np.allclose(orbit.state(2 * L), orbit.state(0.0), atol=1e-10)
        assert np.allclose(orbit.state(L), -orbit.state(0.0), atol=1e-10)

    def test_state_matches_half_orbit(self, a_bar):
        orbit = PeriodicOrbit.from_center(a_bar)
        assert np.array_equal(orbit.state(0.3), phi_plus(0.3, a_bar, FLOAT))


class TestSimulateSwitching:
    """Test the reference integration of the switching system."""

    def test_returns_to_start(self, a_bar):
        x0 = np.array([0.0, a_bar[1], a_bar[2], a_bar[3]])
        run = simulate_switching(x0, crossings=2)
        assert len(run.times) == 2
        assert run.times[0] == pytest.approx(a_bar[0], abs=1e-6)
        assert run.elapsed == pytest.approx(2 * a_bar[0], abs=1e-6)
        assert np.max(np.abs(run.states[-1] - x0)) < 1e-6
        assert np.max(np.abs(run.states[0] + x0)) < 1e-6

    def test_no_crossing(self):
        # x1 starts at 1/24 and moves like -t^4/12 at first
        run = simulate_switching([1 / 24, 0.0, 0.0, 0.0], crossings=1, t_max=0.1)
        assert run.times == []
