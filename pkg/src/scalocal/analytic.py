"""Closed-form entropy and dimension references for bounded uniform measures.

Two references are provided at every scale e, rank q, dimension count d and
support side L:

* the continuum bounded uniform distribution (``bud_*``), the maximum-entropy
  measure on [0, L]^d, and
* its N-point random realization (``brud_*``), which corrects the continuum
  form for the fraction of void bins of a Poisson point set and therefore
  plateaus at log N below the typical point separation.

All logarithms are natural.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import Curve, ScaleGrid
from .partition import validate_rank

__all__ = [
    "ReferenceSpec",
    "bud_entropy_axis",
    "bud_entropy",
    "bud_occupancy_factor",
    "brud_entropy",
    "bud_dimension_axis",
    "bud_dimension",
    "brud_dimension",
    "reference_entropy_curve",
    "reference_dimension_curve",
]

# below this mean occupancy, log(1 - exp(-mu)) is evaluated by series to
# avoid cancellation
_SMALL_OCCUPANCY = 1e-8


@dataclass(frozen=True)
class ReferenceSpec:
    """Parameters of a bounded-uniform reference.

    ``n`` absent means the continuum measure; ``n`` present selects the
    N-point realization.
    """

    d: int
    L: float
    q: float
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "q", validate_rank(self.q))
        if self.d < 1:
            raise ValueError(f"dimension count must be >= 1, got {self.d}")
        if not self.L > 0:
            raise ValueError(f"support side must be positive, got {self.L}")
        if self.n is not None:
            object.__setattr__(self, "n", int(self.n))
            if self.n < 1:
                raise ValueError(f"point count must be >= 1, got {self.n}")


def _check_scale(scale) -> np.ndarray:
    arr = np.asarray(scale, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("scale must be positive and finite")
    return arr


def _maybe_scalar(arr: np.ndarray, scalar_in: bool):
    return float(arr) if scalar_in else arr


def bud_entropy_axis(scale, L: float, q: float):
    """Continuum bounded-uniform entropy per degree of freedom.

    For e <= L this is ``log(L/e) + log(1 + a e/L) / (1 - q)`` and for
    e >= L it is ``log(1 + a L/e) / (1 - q)``, with ``a = (1-q)/(1+q)``.
    The two branches agree at e = L.  Vectorized over ``scale``.
    """
    q = validate_rank(q)
    if not float(L) > 0:
        raise ValueError(f"support side must be positive, got {L}")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    x = np.atleast_1d(arr) / L
    a = (1.0 - q) / (1.0 + q)
    # clip each branch to its own domain; np.where evaluates both
    x_lo = np.minimum(x, 1.0)
    x_hi = np.maximum(x, 1.0)
    lower = -np.log(x_lo) + np.log1p(a * x_lo) / (1.0 - q)
    upper = np.log1p(a / x_hi) / (1.0 - q)
    out = np.where(x <= 1.0, lower, upper)
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def bud_entropy(scale, spec: ReferenceSpec):
    """Continuum bounded-uniform entropy of a d-dimensional support.

    A scalar ``scale`` is applied isotropically (d equal per-axis terms); a
    length-d sequence gives the anisotropic sum of per-axis terms.
    """
    if spec.n is not None:
        raise ValueError("continuum entropy takes a spec without a point count; "
                         "use brud_entropy for the N-point reference")
    arr = _check_scale(scale)
    if arr.ndim == 0:
        return spec.d * bud_entropy_axis(float(arr), spec.L, spec.q)
    if arr.shape != (spec.d,):
        raise ValueError(
            f"anisotropic scale must have one width per axis ({spec.d}), got shape {arr.shape}"
        )
    return float(np.sum(bud_entropy_axis(arr, spec.L, spec.q)))


def _mean_occupancy(scale, spec: ReferenceSpec) -> np.ndarray:
    """Mean bin occupancy n * (e/L)^d, saturating at n above the boundary."""
    x = np.minimum(np.atleast_1d(_check_scale(scale)) / spec.L, 1.0)
    return spec.n * x**spec.d


def _log_occupied_fraction(mu: np.ndarray) -> np.ndarray:
    """log(1 - exp(-mu)), series-expanded below _SMALL_OCCUPANCY."""
    mu = np.atleast_1d(np.asarray(mu, dtype=np.float64))
    out = np.empty_like(mu)
    small = mu < _SMALL_OCCUPANCY
    out[small] = np.log(mu[small]) - 0.5 * mu[small]
    out[~small] = np.log(-np.expm1(-mu[~small]))
    return out


def bud_occupancy_factor(scale, spec: ReferenceSpec):
    """Fraction of non-void bins, 1 - exp(-mu), for the N-point reference."""
    if spec.n is None:
        raise ValueError("occupancy factor needs a point count on the reference spec")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    out = -np.expm1(-_mean_occupancy(arr, spec))
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def brud_entropy(scale, spec: ReferenceSpec):
    """Entropy of the N-point bounded uniform reference at isotropic scale.

    The continuum entropy plus the log of the occupied-bin fraction; the
    small-scale limit is log N and the large-scale limit is 0.
    """
    if spec.n is None:
        raise ValueError("N-point entropy needs a point count on the reference spec")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    base = spec.d * np.atleast_1d(bud_entropy_axis(arr, spec.L, spec.q))
    out = base + _log_occupied_fraction(_mean_occupancy(arr, spec))
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def bud_dimension_axis(scale, L: float, q: float):
    """Scale-local dimension of the continuum reference per degree of freedom.

    The negative log-scale derivative of ``bud_entropy_axis``: with
    ``a = (1-q)/(1+q)`` and ``x = e/L`` it equals
    ``1 - (a x)/((1 + a x)(1 - q))`` below the boundary and
    ``(a/x)/((1 + a/x)(1 - q))`` above it, both 1/2 at e = L.
    """
    q = validate_rank(q)
    if not float(L) > 0:
        raise ValueError(f"support side must be positive, got {L}")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    x = np.atleast_1d(arr) / L
    a = (1.0 - q) / (1.0 + q)
    x_lo = np.minimum(x, 1.0)
    x_hi = np.maximum(x, 1.0)
    lower = 1.0 - (a * x_lo) / (1.0 + a * x_lo) / (1.0 - q)
    upper = (a / x_hi) / (1.0 + a / x_hi) / (1.0 - q)
    out = np.where(x <= 1.0, lower, upper)
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def bud_dimension(scale, spec: ReferenceSpec):
    """Total continuum dimension, d per-axis terms at isotropic scale."""
    if spec.n is not None:
        raise ValueError("continuum dimension takes a spec without a point count; "
                         "use brud_dimension for the N-point reference")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    out = spec.d * np.atleast_1d(bud_dimension_axis(arr, spec.L, spec.q))
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def _occupancy_dimension_term(scale, spec: ReferenceSpec) -> np.ndarray:
    """Dimension removed by void bins: d * mu * exp(-mu) / (1 - exp(-mu)).

    Zero above the boundary scale, where the mean occupancy is constant.
    Evaluated as mu / expm1(mu), which is stable for both small and large mu.
    """
    arr = np.atleast_1d(_check_scale(scale))
    mu = _mean_occupancy(arr, spec)
    out = np.zeros_like(mu)
    below = np.atleast_1d(arr / spec.L) <= 1.0
    with np.errstate(over="ignore"):
        ratio = mu[below] / np.expm1(mu[below])
    out[below] = spec.d * ratio
    return out


def brud_dimension(scale, spec: ReferenceSpec):
    """Scale-local dimension of the N-point reference at isotropic scale.

    The continuum dimension minus the void-bin occupancy term; approaches d
    at intermediate scales and 0 both below the point-separation scale and
    far above the boundary.
    """
    if spec.n is None:
        raise ValueError("N-point dimension needs a point count on the reference spec")
    arr = _check_scale(scale)
    scalar_in = arr.ndim == 0
    out = spec.d * np.atleast_1d(bud_dimension_axis(arr, spec.L, spec.q))
    out = out - _occupancy_dimension_term(arr, spec)
    return _maybe_scalar(out if not scalar_in else out[0], scalar_in)


def reference_entropy_curve(grid: ScaleGrid, spec: ReferenceSpec) -> Curve:
    """Analytic entropy curve on a grid, continuum or N-point per the spec."""
    if spec.n is None:
        values = spec.d * np.atleast_1d(bud_entropy_axis(grid.scales, spec.L, spec.q))
    else:
        values = np.atleast_1d(brud_entropy(grid.scales, spec))
    return Curve(q=spec.q, grid=grid, values=values, kind="entropy", source="analytic")


def reference_dimension_curve(grid: ScaleGrid, spec: ReferenceSpec) -> Curve:
    """Analytic dimension curve on a grid, continuum or N-point per the spec."""
    if spec.n is None:
        values = np.atleast_1d(bud_dimension(grid.scales, spec))
    else:
        values = np.atleast_1d(brud_dimension(grid.scales, spec))
    return Curve(q=spec.q, grid=grid, values=values, kind="dimension", source="analytic")
