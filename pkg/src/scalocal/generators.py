"""Reproducible synthetic point sets: uniform boxes, cluster hierarchies.

All generators draw from numpy's Philox counter-based generator, so a given
seed reproduces the same point set bit-for-bit on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .partition import PointSet

__all__ = [
    "HierarchySpec",
    "uniform_points",
    "hierarchy_points",
    "condensation_sequence",
]


def _rng(seed) -> np.random.Generator:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class HierarchySpec:
    """Two-tier cluster hierarchy parameters.

    ``n0`` cluster sites are placed uniformly at random, inset by half a
    cluster width so clusters stay inside the support; each site carries
    ``n1`` points spread uniformly over an axis-aligned cube of side
    ``delta1`` centered on it.
    """

    n0: int
    n1: int
    delta1: float
    L: float
    d: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "n0", int(self.n0))
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "delta1", float(self.delta1))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "d", int(self.d))
        if self.n0 < 1 or self.n1 < 1:
            raise ValueError("site and per-site point counts must be >= 1")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not self.L > 0:
            raise ValueError("support side must be positive")
        if not 0.0 < self.delta1 <= self.L:
            raise ValueError(
                f"cluster width must satisfy 0 < delta1 <= L, got delta1={self.delta1}, L={self.L}"
            )


def uniform_points(n: int, d: int, L: float, seed: int) -> PointSet:
    """N independent uniform points in [0, L]^d, deterministic per seed."""
    n = int(n)
    if n < 1:
        raise ValueError(f"point count must be >= 1, got {n}")
    if int(d) < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if not float(L) > 0:
        raise ValueError(f"support side must be positive, got {L}")
    coords = _rng(seed).random((n, int(d))) * float(L)
    return PointSet(coords=coords, L=float(L))


def _clustered_coords(rng, per_site, width, L, d) -> np.ndarray:
    """Site centers first, then one offset block per point, all from ``rng``."""
    n0 = per_site.size
    sites = width / 2.0 + rng.random((n0, d)) * (L - width)
    offsets = (rng.random((int(per_site.sum()), d)) - 0.5) * width
    return np.repeat(sites, per_site, axis=0) + offsets


def hierarchy_points(spec: HierarchySpec) -> PointSet:
    """Two-tier cluster hierarchy with n0 * n1 points in [0, L]^d."""
    per_site = np.full(spec.n0, spec.n1)
    coords = _clustered_coords(_rng(spec.seed), per_site, spec.delta1, spec.L, spec.d)
    return PointSet(coords=coords, L=spec.L)


def condensation_sequence(
    n_total: int,
    site_counts,
    delta1: float,
    L: float,
    d: int,
    seed: int,
) -> list[PointSet]:
    """Hierarchies of fixed total multiplicity over a range of site counts.

    Each member distributes ``n_total`` points over its site count; when the
    division is not exact the remainder is handed out one extra point per
    site in site order.  Members draw from independent child streams of the
    seed, so the list is reproducible as a whole.
    """
    n_total = int(n_total)
    if n_total < 1:
        raise ValueError(f"total point count must be >= 1, got {n_total}")
    site_counts = [int(s) for s in site_counts]
    if not site_counts:
        raise ValueError("at least one site count is required")
    if any(s < 1 for s in site_counts):
        raise ValueError("site counts must be >= 1")
    delta1 = float(delta1)
    L = float(L)
    d = int(d)
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not L > 0:
        raise ValueError("support side must be positive")
    if not 0.0 < delta1 <= L:
        raise ValueError(
            f"cluster width must satisfy 0 < delta1 <= L, got delta1={delta1}, L={L}"
        )
    children = np.random.SeedSequence(int(seed)).spawn(len(site_counts))
    members = []
    for child, n0 in zip(children, site_counts):
        base, rem = divmod(n_total, n0)
        per_site = np.full(n0, base)
        per_site[:rem] += 1
        coords = _clustered_coords(_rng(child), per_site, delta1, L, d)
        members.append(PointSet(coords=coords, L=L))
    return members
