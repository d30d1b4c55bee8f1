import math

import numpy as np
import pytest

from scalocal import (
    Curve,
    PointSet,
    ScaleGrid,
    UnsupportedRankError,
    dithered_entropy,
    entropy_sweep,
    phase_standard_error,
    uniform_points,
)

TWO_POINTS = PointSet(np.array([[0.1], [0.9]]), L=1.0)


class TestScaleGrid:
    def test_logspaced_counts(self):
        grid = ScaleGrid.logspaced(1e-3, 10**0.5, 8)
        assert len(grid) == 29
        assert grid.scales[0] == pytest.approx(1e-3)
        assert grid.scales[-1] == pytest.approx(10**0.5)

    def test_log_uniform_within_tolerance(self):
        grid = ScaleGrid.logspaced(1e-4, 20.0, 5)
        steps = np.diff(np.log(grid.scales))
        assert np.max(np.abs(steps - steps.mean())) <= 1e-12 * steps.mean()

    def test_rejects_non_log_uniform(self):
        with pytest.raises(ValueError):
            ScaleGrid(np.array([1.0, 2.0, 3.0]))

    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError):
            ScaleGrid(np.array([1.0, 1.0, 2.0]))

    def test_singleton_allowed(self):
        grid = ScaleGrid.logspaced(2.0, 2.0, 8)
        assert len(grid) == 1 and grid.log_step == 0.0

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            ScaleGrid.logspaced(0.0, 1.0, 8)
        with pytest.raises(ValueError):
            ScaleGrid.logspaced(2.0, 1.0, 8)


class TestCurve:
    def test_length_check(self):
        grid = ScaleGrid.logspaced(0.1, 1.0, 2)
        with pytest.raises(ValueError):
            Curve(q=0.0, grid=grid, values=np.zeros(2), kind="entropy", source="analytic")
        with pytest.raises(ValueError):
            Curve(q=0.0, grid=grid, values=np.zeros(len(grid)), kind="wrong", source="analytic")


class TestDitheredEntropy:
    def test_single_point_zero(self):
        ps = PointSet(np.array([[0.3, 0.8]]), L=1.0)
        for q in (0.0, 2.0, 5.0):
            for scale in (1e-3, 0.4, 30.0):
                assert dithered_entropy(ps, q, scale, 8, 2) == 0.0

    def test_two_point_matches_dense_phase_average(self):
        # Oracle: <M>_phi = 1 + split fraction; dense phi sweep gives the
        # split fraction directly, independent of the stratified sequence.
        n_phi = 100_000
        phis = (np.arange(n_phi) + 0.5) / n_phi
        split = np.floor(0.1 + phis) != np.floor(0.9 + phis)
        oracle = math.log(1.0 + split.mean())
        assert oracle == pytest.approx(math.log(1.8), abs=2e-5)
        s = dithered_entropy(TWO_POINTS, 0.0, 1.0, 4096, 17)
        assert abs(math.exp(s) - 1.8) <= 1.0 / 4096 + 1e-12

    def test_two_point_discretization_bound(self):
        for dithers in (4, 16, 64):
            for scale in (0.8, 1.0, 1.6):
                s = dithered_entropy(TWO_POINTS, 0.0, scale, dithers, 5)
                expected = 1.0 + 0.8 / scale
                assert abs(math.exp(s) - expected) <= 1.0 / dithers + 1e-12

    def test_plateau_exact_below_min_separation(self):
        # below half the minimum pair distance every phase yields N singleton
        # bins, so the entropy equals log N for every rank
        ps = uniform_points(50, 2, 1.0, seed=33)
        diff = ps.coords[:, None, :] - ps.coords[None, :, :]
        dist = np.sqrt((diff**2).sum(-1))
        np.fill_diagonal(dist, np.inf)
        scale = 0.49 * dist.min()
        for q in (0.0, 2.0, 5.0):
            s = dithered_entropy(ps, q, scale, 8, 4)
            assert s == pytest.approx(math.log(50), rel=1e-12)

    def test_rejects_bad_args(self):
        with pytest.raises(UnsupportedRankError):
            dithered_entropy(TWO_POINTS, 1.0, 0.5, 4, 0)
        with pytest.raises(ValueError):
            dithered_entropy(TWO_POINTS, 0.0, 0.0, 4, 0)
        with pytest.raises(ValueError):
            dithered_entropy(TWO_POINTS, 0.0, 0.5, 0, 0)


class TestEntropySweep:
    def test_matches_single_scale_calls(self):
        ps = uniform_points(300, 2, 1.0, seed=6)
        grid = ScaleGrid.logspaced(0.03, 0.3, 4)
        curves = entropy_sweep(ps, [0.0, 2.0], grid, 8, seed=9)
        for curve in curves:
            for i, scale in enumerate(grid.scales):
                direct = dithered_entropy(ps, curve.q, scale, 8, seed=9)
                assert curve.values[i] == direct

    def test_bitwise_deterministic(self):
        ps = uniform_points(200, 2, 1.0, seed=1)
        grid = ScaleGrid.logspaced(0.01, 1.0, 4)
        a = entropy_sweep(ps, [0.0, 5.0], grid, 6, seed=3)
        b = entropy_sweep(ps, [0.0, 5.0], grid, 6, seed=3)
        for x, y in zip(a, b):
            assert np.array_equal(x.values, y.values)
            assert np.array_equal(x.phase_spread, y.phase_spread)

    def test_thread_count_does_not_change_values(self, monkeypatch):
        ps = uniform_points(200, 2, 1.0, seed=1)
        grid = ScaleGrid.logspaced(0.01, 1.0, 4)
        serial = entropy_sweep(ps, [0.0], grid, 6, seed=3)
        monkeypatch.setenv("SCALOCAL_THREADS", "4")
        threaded = entropy_sweep(ps, [0.0], grid, 6, seed=3)
        assert np.array_equal(serial[0].values, threaded[0].values)

    def test_large_scale_entropy_vanishes(self):
        # single huge bin swallows everything: S -> 0 well above the boundary
        ps = uniform_points(100, 2, 1.0, seed=12)
        grid = ScaleGrid.logspaced(200.0, 200.0, 1)
        (curve,) = entropy_sweep(ps, [0.0], grid, 1024, seed=7)
        assert 0.0 <= curve.values[0] <= 0.02

    def test_intermediate_scale_matches_continuum_reference(self):
        # e = 0.1 L with dense points: compare to the closed-form
        # 2 log(L/e) + 2 log(1 + e/L); voids are negligible at occupancy 500.
        # Tolerance 0.01 covers phase noise at J=16 (seen < 0.004 over seeds).
        ps = uniform_points(50_000, 2, 1.0, seed=7)
        expected = 2.0 * (math.log(10.0) + math.log(1.1))
        s = dithered_entropy(ps, 0.0, 0.1, 16, seed=11)
        assert s == pytest.approx(expected, abs=0.01)

    def test_rank_ordering_single_phase(self):
        # one phase is a plain partition, so Renyi ordering is exact
        ps = uniform_points(400, 2, 1.0, seed=21)
        grid = ScaleGrid.logspaced(0.02, 0.5, 4)
        curves = entropy_sweep(ps, [0.0, 2.0, 5.0], grid, 1, seed=2)
        s0, s2, s5 = (c.values for c in curves)
        assert np.all(s0 >= s2 - 1e-9)
        assert np.all(s2 >= s5 - 1e-9)

    def test_rank_ordering_dithered(self):
        ps = uniform_points(400, 2, 1.0, seed=21)
        grid = ScaleGrid.logspaced(0.02, 0.5, 4)
        curves = entropy_sweep(ps, [0.0, 2.0, 5.0], grid, 8, seed=2)
        se = [phase_standard_error(c, 8) for c in curves]
        for (hi, lo) in ((0, 1), (1, 2)):
            slack = 3.0 * np.sqrt(se[hi] ** 2 + se[lo] ** 2)
            assert np.all(curves[hi].values >= curves[lo].values - slack)

    def test_statistical_monotonicity_in_scale(self):
        ps = uniform_points(2000, 2, 1.0, seed=5)
        grid = ScaleGrid.logspaced(0.01, 1.0, 6)
        (curve,) = entropy_sweep(ps, [0.0], grid, 16, seed=8)
        se = phase_standard_error(curve, 16)
        for i in range(len(grid) - 1):
            slack = 3.0 * math.hypot(se[i], se[i + 1])
            assert curve.values[i + 1] <= curve.values[i] + slack

    def test_scale_covariance_of_curves(self):
        ps = uniform_points(300, 2, 1.0, seed=13)
        grid = ScaleGrid.logspaced(0.05, 0.5, 4)
        base = entropy_sweep(ps, [0.0, 2.0], grid, 4, seed=6)
        lam = 2.0
        scaled_ps = PointSet(lam * ps.coords, lam * ps.L)
        scaled_grid = ScaleGrid(lam * grid.scales)
        scaled = entropy_sweep(scaled_ps, [0.0, 2.0], scaled_grid, 4, seed=6)
        for a, b in zip(base, scaled):
            assert np.array_equal(a.values, b.values)

    def test_phase_spread_populated(self):
        ps = uniform_points(100, 2, 1.0, seed=2)
        grid = ScaleGrid.logspaced(0.05, 0.5, 4)
        (curve,) = entropy_sweep(ps, [2.0], grid, 8, seed=1)
        assert curve.phase_spread is not None
        assert np.all(curve.phase_spread >= 0.0)

    def test_empty_ranks_rejected(self):
        ps = uniform_points(10, 1, 1.0, seed=0)
        with pytest.raises(ValueError):
            entropy_sweep(ps, [], ScaleGrid.logspaced(0.1, 1.0, 2), 4, seed=0)
