"""Dithered grid partitions of point sets and their sparse bin occupancies.

A partition at scale ``e`` covers the embedding space with axis-aligned boxes
of per-axis width ``e_i``, translated by a per-axis phase in units of the bin
width.  Only occupied bins are stored, so memory stays O(N) even when the
nominal grid has (L/e)^d cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import UnsupportedRankError

__all__ = [
    "PointSet",
    "PhaseVector",
    "OccupancyMap",
    "assign_bins",
    "phase_sequence",
    "correlation_integral",
    "validate_rank",
]

# Keeps the phase-offset stream independent of point-generation streams that
# may share the same user-facing seed.
_PHASE_STREAM_KEY = 0x0FA5E


def validate_rank(q: float) -> float:
    """Return ``q`` as a float, rejecting ranks outside q >= 0, q != 1."""
    q = float(q)
    if not np.isfinite(q) or q < 0.0 or q == 1.0:
        raise UnsupportedRankError(
            f"unsupported rank q={q!r}: supported ranks are q >= 0 with q != 1"
        )
    return q


@dataclass(frozen=True)
class PointSet:
    """N points in the d-dimensional box [0, L]^d.

    Parameters
    ----------
    coords : (N, d) array of floats, every entry in [0, L].
    L : positive side length of the support, in the same units as coords.
    """

    coords: np.ndarray
    L: float

    def __post_init__(self):
        coords = np.atleast_2d(np.asarray(self.coords, dtype=np.float64))
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "L", float(self.L))
        if coords.ndim != 2:
            raise ValueError("coords must be a 2-D array of shape (N, d)")
        if coords.shape[0] < 1 or coords.shape[1] < 1:
            raise ValueError("point set needs N >= 1 points and d >= 1 axes")
        if not self.L > 0:
            raise ValueError(f"support side L must be positive, got {self.L}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coords contain non-finite values")
        if coords.min() < 0.0 or coords.max() > self.L:
            raise ValueError(
                f"coordinates must lie in [0, {self.L}]; found range "
                f"[{coords.min()}, {coords.max()}]"
            )

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True)
class PhaseVector:
    """Per-axis grid translation phases, each in [0, 1) bin widths."""

    phases: np.ndarray

    def __post_init__(self):
        phases = np.atleast_1d(np.asarray(self.phases, dtype=np.float64))
        object.__setattr__(self, "phases", phases)
        if phases.ndim != 1 or phases.size < 1:
            raise ValueError("phases must be a 1-D array with one entry per axis")
        if np.any(phases < 0.0) or np.any(phases >= 1.0):
            raise ValueError("each phase must lie in [0, 1)")

    @property
    def d(self) -> int:
        return self.phases.size


@dataclass(frozen=True)
class OccupancyMap:
    """Sparse occupancy of one (scale, phase) partition.

    ``bin_coords`` holds the integer grid coordinates of the occupied bins,
    one row per bin; ``counts`` holds the matching positive point counts.
    Void bins are never stored, and the counts sum to the size of the source
    point set.
    """

    widths: np.ndarray
    phase: PhaseVector
    bin_coords: np.ndarray
    counts: np.ndarray

    @property
    def n_occupied(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {
            tuple(int(v) for v in key): int(c)
            for key, c in zip(self.bin_coords, self.counts)
        }


def _unique_rows_with_counts(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unique rows of an integer (N, d) array plus multiplicities."""
    n, d = idx.shape
    mins = idx.min(axis=0)
    shifted = idx - mins
    spans = shifted.max(axis=0).astype(np.int64) + 1
    if d == 1:
        uniq, counts = np.unique(shifted[:, 0], return_counts=True)
        return uniq[:, None] + mins, counts
    if float(np.prod(spans, dtype=np.float64)) >= 2.0**62:
        # grid too large for a single int64 key; fall back to row-wise unique
        uniq, counts = np.unique(idx, axis=0, return_counts=True)
        return uniq, counts
    lin = shifted[:, 0].astype(np.int64)
    for axis in range(1, d):
        lin = lin * spans[axis] + shifted[:, axis]
    uniq_lin, counts = np.unique(lin, return_counts=True)
    keys = np.empty((uniq_lin.size, d), dtype=np.int64)
    rem = uniq_lin
    for axis in range(d - 1, 0, -1):
        keys[:, axis] = rem % spans[axis]
        rem = rem // spans[axis]
    keys[:, 0] = rem
    return keys + mins, counts


def assign_bins(points: PointSet, scale, phase: PhaseVector) -> OccupancyMap:
    """Assign every point to a bin of the phased grid at the given scale.

    The bin index along axis i is ``floor((x_i + phi_i * e_i) / e_i)``, i.e.
    bins are half-open intervals shifted by the phase, so points sitting
    exactly at ``L`` land in a regular bin and indices are never negative.

    Parameters
    ----------
    points : the point set to bin.
    scale : scalar or length-d sequence of positive per-axis bin widths.
    phase : per-axis phases in [0, 1); must match the point dimension.

    Returns
    -------
    OccupancyMap with only the occupied bins stored.
    """
    widths = np.asarray(scale, dtype=np.float64)
    if widths.ndim == 0:
        widths = np.full(points.d, float(widths))
    if widths.shape != (points.d,):
        raise ValueError(
            f"scale must be a scalar or length-{points.d} sequence, got shape {widths.shape}"
        )
    if not np.all(np.isfinite(widths)) or np.any(widths <= 0.0):
        raise ValueError("bin widths must be positive and finite")
    if phase.d != points.d:
        raise ValueError(f"phase has {phase.d} axes but points have {points.d}")
    idx = np.floor((points.coords + phase.phases * widths) / widths).astype(np.int64)
    bin_coords, counts = _unique_rows_with_counts(idx)
    return OccupancyMap(widths=widths, phase=phase, bin_coords=bin_coords, counts=counts)


def phase_sequence(count: int, d: int, seed: int) -> list[PhaseVector]:
    """Deterministic stratified dithering phases.

    The phase of sample j on axis i is ``((j + 0.5) / count + r_i) mod 1``
    with per-axis offsets ``r_i`` drawn once from a counter-based generator
    keyed on ``seed``.  Each axis therefore covers [0, 1) uniformly as the
    sample count grows, without a d-fold Cartesian blow-up, and the sequence
    depends only on (count, d, seed).
    """
    count = int(count)
    if count < 1:
        raise ValueError(f"dither count must be >= 1, got {count}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(_PHASE_STREAM_KEY,))
    rng = np.random.Generator(np.random.Philox(ss))
    offsets = rng.random(d)
    strata = (np.arange(count, dtype=np.float64) + 0.5) / count
    return [PhaseVector((s + offsets) % 1.0) for s in strata]


def correlation_integral(occ: OccupancyMap, q: float, n_points: int) -> float:
    """Sum of bin probabilities raised to the q-th power.

    Probabilities are bin count over ``n_points``.  For q = 0 the sum equals
    the number of occupied bins.
    """
    q = validate_rank(q)
    n_points = int(n_points)
    if n_points != occ.total:
        raise ValueError(
            f"n_points={n_points} does not match the occupancy total {occ.total}"
        )
    p = occ.counts / float(n_points)
    return float(np.sum(p**q))
