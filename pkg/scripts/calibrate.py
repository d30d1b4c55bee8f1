"""Calibration sweeps behind the frozen tolerances in tests/test_acceptance.py.

Runs each statistical acceptance check over a range of seeds and prints the
observed extremes, so the frozen floors can be audited or re-derived.
Usage: python3 scripts/calibrate.py [n_seeds]
"""

import math
import sys

import numpy as np

from scalocal import (
    CurvePair,
    ReferenceSpec,
    ScaleGrid,
    dimension_curve,
    dimension_transport,
    entropy_sweep,
    hierarchy_points,
    information,
    phase_standard_error,
    reference_entropy_curve,
    uniform_points,
    brud_dimension,
    condensation_sequence,
    HierarchySpec,
)

N_SEEDS = int(sys.argv[1]) if len(sys.argv) > 1 else 10
GRID = ScaleGrid.logspaced(1e-3, 10**0.5, 8)
DITHERS = 16


def plateau_scan():
    print("== criterion 1: plateau at e=1e-4, N=50000, J=16 ==")
    target = math.log(50_000)
    grid = ScaleGrid.logspaced(1e-4, 1e-4, 8)
    for seed in range(N_SEEDS):
        ps = uniform_points(50_000, 2, 1.0, seed=seed)
        curves = entropy_sweep(ps, [0.0, 2.0, 5.0], grid, DITHERS, seed=100 + seed)
        devs = [c.values[0] - target for c in curves]
        print(f"  seed {seed}: dev q0={devs[0]:+.2e} q2={devs[1]:+.2e} q5={devs[2]:+.2e}")


def fig3_scan():
    print("== criterion 2: |S0_mc - S0_brud| vs 3*SE over the fig-3 grid ==")
    worst_excess = []
    for seed in range(N_SEEDS):
        ps = uniform_points(50_000, 2, 1.0, seed=seed)
        (curve,) = entropy_sweep(ps, [0.0], GRID, DITHERS, seed=100 + seed)
        spec = ReferenceSpec(d=2, L=1.0, q=0.0, n=50_000)
        ref = reference_entropy_curve(GRID, spec)
        diff = np.abs(curve.values - ref.values)
        se3 = 3.0 * phase_standard_error(curve, DITHERS)
        over = diff - se3
        idx = int(np.argmax(over))
        worst_excess.append(diff[np.argmax(over)])
        print(f"  seed {seed}: max|diff|={diff.max():.4f} "
              f"max(diff-3SE)={over.max():+.4f} at log10(e)={math.log10(GRID.scales[idx]):+.2f} "
              f"(diff there {diff[idx]:.4f})")
    print(f"  -> max |diff| where 3SE insufficient: {max(worst_excess):.4f}")


def info_scan():
    print("== criterion 3: I_2, I_5 significance bands ==")
    logs = np.log10(GRID.scales)
    band = (logs >= -2.6) & (logs <= -2.1)
    tail = logs > -1.5
    for seed in range(N_SEEDS):
        ps = uniform_points(50_000, 2, 1.0, seed=seed)
        curves = entropy_sweep(ps, [2.0, 5.0], GRID, DITHERS, seed=100 + seed)
        for curve in curves:
            spec = ReferenceSpec(d=2, L=1.0, q=curve.q, n=50_000)
            ref = reference_entropy_curve(GRID, spec)
            info = information(CurvePair(reference=ref, obj=curve))
            se = phase_standard_error(curve, DITHERS)
            ratio = np.abs(info.values) / np.maximum(se, 1e-300)
            print(f"  seed {seed} q={curve.q:g}: band max ratio={ratio[band].max():8.1f}  "
                  f"tail max ratio={ratio[tail].max():8.2f}  tail max |I|={np.abs(info.values[tail]).max():.4f}")


def large_scale_scan():
    print("== criterion 4: S0 at e=10L ==")
    expected = 2.0 * math.log1p(0.1)
    grid = ScaleGrid.logspaced(10.0, 10.0, 1)
    for seed in range(N_SEEDS):
        ps = uniform_points(50_000, 2, 1.0, seed=seed)
        (curve,) = entropy_sweep(ps, [0.0], grid, DITHERS, seed=100 + seed)
        se = phase_standard_error(curve, DITHERS)[0]
        print(f"  seed {seed}: S0={curve.values[0]:.4f} expected={expected:.4f} "
              f"|diff|/SE={abs(curve.values[0]-expected)/se:.2f} below 0.25: {curve.values[0] < 0.25}")


def fig4_scan():
    print("== criterion 5: fig-4 hierarchy dimension bands ==")
    grid = ScaleGrid.logspaced(1e-5, 10**0.5, 8)
    site_spec = ReferenceSpec(d=2, L=1.0, q=0.0, n=100)
    cluster_spec = ReferenceSpec(d=2, L=0.001, q=0.0, n=100)
    site_ref = brud_dimension(grid.scales, site_spec)
    cluster_ref = brud_dimension(grid.scales, cluster_spec)
    site_band = site_ref > 1.5
    cluster_band = cluster_ref > 1.5
    print(f"  site band scales: {grid.scales[site_band]}")
    print(f"  cluster band scales: {grid.scales[cluster_band]}")
    for seed in range(N_SEEDS):
        spec = HierarchySpec(n0=100, n1=100, delta1=0.001, L=1.0, d=2, seed=seed)
        ps = hierarchy_points(spec)
        (curve,) = entropy_sweep(ps, [0.0], grid, DITHERS, seed=100 + seed)
        dim = dimension_curve(curve)
        site_err = np.abs(dim.values[site_band] - site_ref[site_band]).max()
        cluster_err = np.abs(dim.values[cluster_band] - cluster_ref[cluster_band]).max()
        plateau_dev = abs(curve.values[0] - math.log(10_000))
        print(f"  seed {seed}: site band err={site_err:.4f} cluster band err={cluster_err:.4f} "
              f"plateau dev={plateau_dev:.2e}")


def fig5_scan():
    print("== criterion 6: condensation transport peaks ==")
    grid = ScaleGrid.logspaced(1e-4, 10**0.5, 8)
    logs = np.log10(grid.scales)
    sub_cluster = logs < math.log10(0.03)
    for seed in range(N_SEEDS):
        members = condensation_sequence(10_000, [3000, 1000, 300], 0.03, 1.0, 2, seed=seed)
        peaks = []
        sig3000 = None
        for n0, ps in zip([3000, 1000, 300], members):
            (curve,) = entropy_sweep(ps, [0.0], grid, DITHERS, seed=100 + seed)
            spec = ReferenceSpec(d=2, L=1.0, q=0.0, n=10_000)
            ref = reference_entropy_curve(grid, spec)
            info = information(CurvePair(reference=ref, obj=curve))
            transport = dimension_transport(info)
            se = phase_standard_error(transport, DITHERS)
            peak = transport.values[sub_cluster].max()
            peaks.append(peak)
            if n0 == 3000:
                ratio = transport.values[sub_cluster] / np.maximum(se[sub_cluster], 1e-300)
                sig3000 = ratio.max()
        mono = peaks[0] < peaks[1] < peaks[2]
        print(f"  seed {seed}: peaks {peaks[0]:.3f} {peaks[1]:.3f} {peaks[2]:.3f} "
              f"monotone={mono} sig3000={sig3000:.1f}")


if __name__ == "__main__":
    plateau_scan()
    fig3_scan()
    info_scan()
    large_scale_scan()
    fig4_scan()
    fig5_scan()
