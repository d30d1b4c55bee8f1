"""Curves derived from entropy: information, scale-local dimension, transport."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import Curve
from .exceptions import CurveMismatchError

__all__ = ["CurvePair", "information", "dimension_curve", "dimension_transport"]

_GRID_RTOL = 1e-12


def _grids_match(a, b) -> bool:
    if len(a.scales) != len(b.scales):
        return False
    return bool(np.all(np.abs(a.scales - b.scales) <= _GRID_RTOL * a.scales))


@dataclass(frozen=True)
class CurvePair:
    """A reference curve and an object curve on the same rank and grid."""

    reference: Curve
    obj: Curve

    def __post_init__(self):
        if self.reference.q != self.obj.q:
            raise CurveMismatchError(
                f"rank mismatch: reference q={self.reference.q}, object q={self.obj.q}"
            )
        if not _grids_match(self.reference.grid, self.obj.grid):
            raise CurveMismatchError("reference and object scale grids differ")
        if self.reference.kind != "entropy" or self.obj.kind != "entropy":
            raise CurveMismatchError("information is defined on entropy curves")


def information(pair: CurvePair) -> Curve:
    """Reference entropy minus object entropy, pointwise on the shared grid.

    Positive where the object is more correlated (smaller effective bin
    count) than the reference.
    """
    ref, obj = pair.reference, pair.obj
    values = ref.values - obj.values
    if ref.phase_spread is not None and obj.phase_spread is not None:
        spread = np.sqrt(ref.phase_spread**2 + obj.phase_spread**2)
    elif obj.phase_spread is not None:
        spread = obj.phase_spread.copy()
    elif ref.phase_spread is not None:
        spread = ref.phase_spread.copy()
    else:
        spread = None
    source = "monte-carlo" if "monte-carlo" in (ref.source, obj.source) else "analytic"
    return Curve(q=obj.q, grid=obj.grid, values=values, kind="information",
                 source=source, phase_spread=spread)


def _log_slope(values: np.ndarray, scales: np.ndarray) -> np.ndarray:
    """Second-order slope d(values)/d(log scale) on the stored grid.

    Central differences at interior points, one-sided second-order stencils
    at the endpoints.
    """
    return np.gradient(values, np.log(scales), edge_order=2)


def _propagate_spread(spread: np.ndarray | None, log_step: float) -> np.ndarray | None:
    """Uncertainty of the difference stencil, assuming independent scales."""
    if spread is None:
        return None
    n = spread.size
    h = log_step
    out = np.empty_like(spread)
    v = spread**2
    out[1:-1] = np.sqrt(v[:-2] + v[2:]) / (2.0 * h)
    out[0] = np.sqrt(9.0 * v[0] + 16.0 * v[1] + v[2]) / (2.0 * h)
    out[n - 1] = np.sqrt(9.0 * v[n - 1] + 16.0 * v[n - 2] + v[n - 3]) / (2.0 * h)
    return out


def dimension_curve(entropy: Curve) -> Curve:
    """Scale-local dimension, the negative log-scale slope of entropy."""
    if entropy.kind != "entropy":
        raise ValueError(f"dimension is derived from an entropy curve, got {entropy.kind!r}")
    if len(entropy.grid) < 3:
        raise ValueError("dimension needs a grid of at least 3 scales")
    values = -_log_slope(entropy.values, entropy.grid.scales)
    spread = _propagate_spread(entropy.phase_spread, entropy.grid.log_step)
    return Curve(q=entropy.q, grid=entropy.grid, values=values, kind="dimension",
                 source=entropy.source, phase_spread=spread)


def dimension_transport(info: Curve) -> Curve:
    """Dimension moved to smaller scales: object minus reference dimension.

    Computed as the log-scale slope of the information curve with the same
    stencil as ``dimension_curve``, so it equals
    ``dimension_curve(object) - dimension_curve(reference)`` pointwise.
    Positive where correlation adds dimension at smaller scales (e.g.
    cluster interiors), negative where it removes dimension at larger
    scales.
    """
    if info.kind != "information":
        raise ValueError(f"transport is derived from an information curve, got {info.kind!r}")
    if len(info.grid) < 3:
        raise ValueError("transport needs a grid of at least 3 scales")
    values = _log_slope(info.values, info.grid.scales)
    spread = _propagate_spread(info.phase_spread, info.grid.log_step)
    return Curve(q=info.q, grid=info.grid, values=values, kind="transport",
                 source=info.source, phase_spread=spread)
