"""Report figures rendered next to the delimited curve output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_report"]

_LINESTYLES = ["--", ":", "-.", (0, (3, 1, 1, 1, 1, 1))]


def _style():
    plt.rcParams.update({
        "figure.dpi": 110,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "font.size": 9,
        "legend.fontsize": 8,
        "axes.titlesize": 10,
    })


def _has_entropy(res) -> bool:
    return res.entropy is not None or res.reference is not None


def render_report(results, L: float, path, title: str | None = None) -> None:
    """Render the curves of an analysis run into a single PNG.

    One panel per curve kind present across ``results`` (a list of
    ``io.QResult``), plotted against log10(scale / L).  Monte Carlo entropy
    gets its analytic reference overlaid when available.
    """
    _style()
    panels = []
    if any(_has_entropy(res) for res in results):
        panels.append(("entropy", "entropy  S_q"))
    for attr, label in (
        ("information", "information  I_q"),
        ("dimension", "dimension  d_q"),
        ("transport", "dimension transport"),
    ):
        if any(getattr(res, attr) is not None for res in results):
            panels.append((attr, label))
    if not panels:
        raise ValueError("no curves to plot")

    ncols = 2 if len(panels) > 1 else 1
    nrows = math.ceil(len(panels) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(5.2 * ncols, 3.6 * nrows), squeeze=False)
    flat = axes.ravel()

    results = sorted(results, key=lambda r: r.q)
    for ax, (attr, label) in zip(flat, panels):
        for k, res in enumerate(results):
            style = _LINESTYLES[k % len(_LINESTYLES)]
            if attr == "entropy":
                if res.entropy is not None:
                    x = np.log10(res.entropy.grid.scales / L)
                    ax.plot(x, res.entropy.values, linestyle=style, label=f"q={res.q:g}")
                if res.reference is not None:
                    xr = np.log10(res.reference.grid.scales / L)
                    ax.plot(xr, res.reference.values, "-", color="0.25", lw=1.0,
                            label=f"reference q={res.q:g}")
                continue
            curve = getattr(res, attr)
            if curve is not None:
                x = np.log10(curve.grid.scales / L)
                ax.plot(x, curve.values, linestyle=style, label=f"q={res.q:g}")
        ax.set_xlabel("log10(scale / L)")
        ax.set_ylabel(label)
        ax.legend(loc="best")
    for ax in flat[len(panels):]:
        ax.set_visible(False)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
