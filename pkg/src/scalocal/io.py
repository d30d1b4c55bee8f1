"""Point-set files and delimited curve output.

Point-set files are plain text: a single self-describing header line

    # scalocal-points v1 d=<d> n=<N> L=<L>

followed by one whitespace-separated coordinate row per point.  Floats are
written with 17 significant digits so a save/load round trip is bit-exact.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .entropy import Curve, phase_standard_error
from .exceptions import PointFileError
from .partition import PointSet

__all__ = [
    "save_points",
    "load_points",
    "QResult",
    "write_curves_csv",
    "write_curves_json",
    "CSV_COLUMNS",
]

POINT_FORMAT_TAG = "scalocal-points v1"

_HEADER_RE = re.compile(
    r"^#\s*scalocal-points\s+v1\s+d=(\d+)\s+n=(\d+)\s+L=([^\s]+)\s*$"
)

CSV_COLUMNS = [
    "scale",
    "log10_scale_over_L",
    "q",
    "S",
    "S_stderr",
    "S_ref",
    "I",
    "d_q",
    "transport",
]


def save_points(path, points: PointSet) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# {POINT_FORMAT_TAG} d={points.d} n={points.n} L={points.L:.17g}\n")
        np.savetxt(fh, points.coords, fmt="%.17g", delimiter=" ")


def load_points(path) -> PointSet:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
        match = _HEADER_RE.match(header)
        if not match:
            raise PointFileError(
                f"{path}:1: expected header '# {POINT_FORMAT_TAG} d=<d> n=<N> L=<L>'"
            )
        d = int(match.group(1))
        n = int(match.group(2))
        try:
            L = float(match.group(3))
        except ValueError:
            raise PointFileError(f"{path}:1: unparseable support side {match.group(3)!r}")
        if d < 1 or n < 1 or not (math.isfinite(L) and L > 0):
            raise PointFileError(f"{path}:1: invalid header values d={d} n={n} L={L}")
        coords = np.empty((n, d))
        row = 0
        for lineno, line in enumerate(fh, start=2):
            stripped = line.strip()
            if not stripped:
                continue
            if row >= n:
                raise PointFileError(f"{path}:{lineno}: more than the declared {n} points")
            fields = stripped.split()
            if len(fields) != d:
                raise PointFileError(
                    f"{path}:{lineno}: expected {d} coordinates, found {len(fields)}"
                )
            try:
                coords[row] = [float(v) for v in fields]
            except ValueError:
                raise PointFileError(f"{path}:{lineno}: unparseable coordinate in {stripped!r}")
            row += 1
        if row != n:
            raise PointFileError(f"{path}: declared {n} points but found {row}")
    bad = np.where((coords < 0.0) | (coords > L) | ~np.isfinite(coords))
    if bad[0].size:
        lineno = int(bad[0][0]) + 2
        raise PointFileError(
            f"{path}:{lineno}: coordinate {coords[bad[0][0], bad[1][0]]!r} outside [0, {L}]"
        )
    return PointSet(coords=coords, L=L)


@dataclass
class QResult:
    """All curves produced for one rank."""

    q: float
    entropy: Curve | None = None
    reference: Curve | None = None
    information: Curve | None = None
    dimension: Curve | None = None
    transport: Curve | None = None

    def grid(self):
        for curve in (self.entropy, self.reference, self.dimension):
            if curve is not None:
                return curve.grid
        raise ValueError("result holds no curves")


def _fmt(value) -> str:
    return "" if value is None else f"{value:.12g}"


def write_curves_csv(fh, results: list[QResult], L: float, dithers: int,
                     log_base: str = "natural") -> None:
    """Stable delimited schema, one row per (q, scale), ordered by (q, scale).

    Entropy-like columns (S, S_stderr, S_ref, I) honor ``log_base``;
    dimension and transport are slopes of log against log and are
    base-independent.  Missing curves leave their columns empty.
    """
    conv = 1.0 / math.log(10.0) if log_base == "base10" else 1.0
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for res in sorted(results, key=lambda r: r.q):
        grid = res.grid()
        stderr = None
        if res.entropy is not None:
            stderr = phase_standard_error(res.entropy, dithers)
        for i, scale in enumerate(grid.scales):
            cells = [
                _fmt(scale),
                _fmt(math.log10(scale / L)),
                _fmt(res.q),
                _fmt(conv * res.entropy.values[i] if res.entropy is not None else None),
                _fmt(conv * stderr[i] if stderr is not None else None),
                _fmt(conv * res.reference.values[i] if res.reference is not None else None),
                _fmt(conv * res.information.values[i] if res.information is not None else None),
                _fmt(res.dimension.values[i] if res.dimension is not None else None),
                _fmt(res.transport.values[i] if res.transport is not None else None),
            ]
            fh.write(",".join(cells) + "\n")


def _curve_payload(curve: Curve | None) -> dict | None:
    if curve is None:
        return None
    return {
        "kind": curve.kind,
        "source": curve.source,
        "values": curve.values.tolist(),
        "phase_spread": None if curve.phase_spread is None else curve.phase_spread.tolist(),
    }


def write_curves_json(fh, results: list[QResult], L: float, dithers: int,
                      config_dict: dict | None = None,
                      input_meta: dict | None = None) -> None:
    """Full-precision JSON output carrying the analysis config for provenance."""
    results = sorted(results, key=lambda r: r.q)
    payload = {
        "format": "scalocal-curves v1",
        "config": config_dict,
        "input": input_meta,
        "L": L,
        "dithers": dithers,
        "results": [
            {
                "q": res.q,
                "scales": res.grid().scales.tolist(),
                "entropy": _curve_payload(res.entropy),
                "reference": _curve_payload(res.reference),
                "information": _curve_payload(res.information),
                "dimension": _curve_payload(res.dimension),
                "transport": _curve_payload(res.transport),
            }
            for res in results
        ],
    }
    json.dump(payload, fh, indent=2, sort_keys=False)
    fh.write("\n")
