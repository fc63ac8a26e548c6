"""Median/IQR line plots (SVG) from sweep rows.

Aggregation happens here, at plot time, from raw per-trial rows: one curve
per (method x varying-grid-label) group, median line with an interquartile
band. The plotted data is also returned so callers (and tests) can inspect
exactly what was drawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib
import numpy as np
from matplotlib.figure import Figure

_METRIC_BY_KIND = {
    "fig1_frobV_vs_m": "frob_v",
    "fig2_frobV_vs_p": "frob_v",
    "fig3_linf_vs_p": "linf_u",
    "fig4_xerr_vs_p": "x_err_per_entry",
    "fig5_noise": "linf_u",
}
_X_BY_KIND = {"fig1_frobV_vs_m": "m"}
_AXIS_LABELS = {
    "linf_u": "l-inf error in u (sign-invariant)",
    "frob_v": "Frobenius error in V",
    "x_err_per_entry": "Frobenius error in X per entry",
    "p": "columns p",
    "m": "reflector count m",
}


@dataclass(frozen=True)
class PlotCurve:
    label: str
    x_name: str
    metric: str
    xs: tuple[float, ...]
    median: tuple[float, ...]
    q25: tuple[float, ...]
    q75: tuple[float, ...]


def _infer_axes(rows) -> tuple[str, str]:
    kind = rows[0].experiment_kind if rows else "custom"
    x_name = _X_BY_KIND.get(kind)
    if x_name is None:
        ps = {r.p for r in rows}
        ms = {r.m for r in rows}
        x_name = "m" if len(ms) > 1 and len(ps) <= 1 else "p"
    metric = _METRIC_BY_KIND.get(kind)
    if metric is None:
        metric = "linf_u" if any(r.linf_u is not None for r in rows) else "frob_v"
    return x_name, metric


def _curve_key(row, x_name: str, varying: list[str]):
    parts = [row.method]
    for field in varying:
        if field == x_name:
            continue
        value = getattr(row, field if field != "snr" else "snr_db")
        if field == "theta":
            parts.append(f"theta={value:g}")
        elif field == "snr":
            parts.append("noiseless" if value is None else f"snr={value:g}dB")
        elif field == "m":
            parts.append(f"m={value}")
        elif field == "p":
            parts.append(f"p={value}")
    return " ".join(parts)


def aggregate_curves(rows, x_name: str | None = None, metric: str | None = None) -> list[PlotCurve]:
    """Group rows into median/IQR curves; rows with a missing metric are skipped."""
    rows = list(rows)
    if not rows:
        return []
    inferred_x, inferred_metric = _infer_axes(rows)
    x_name = x_name or inferred_x
    metric = metric or inferred_metric

    varying = []
    if len({r.theta for r in rows}) > 1:
        varying.append("theta")
    if len({r.snr_db for r in rows}) > 1:
        varying.append("snr")
    if len({r.m for r in rows}) > 1:
        varying.append("m")
    if len({r.p for r in rows}) > 1:
        varying.append("p")

    grouped: dict[str, dict[float, list[float]]] = {}
    for row in rows:
        value = getattr(row, metric)
        if value is None:
            continue
        label = _curve_key(row, x_name, varying)
        x = float(getattr(row, x_name))
        grouped.setdefault(label, {}).setdefault(x, []).append(value)

    curves = []
    for label in sorted(grouped):
        xs = sorted(grouped[label])
        med, lo, hi = [], [], []
        for x in xs:
            vals = np.asarray(grouped[label][x])
            med.append(float(np.median(vals)))
            lo.append(float(np.percentile(vals, 25)))
            hi.append(float(np.percentile(vals, 75)))
        curves.append(
            PlotCurve(label, x_name, metric, tuple(xs), tuple(med), tuple(lo), tuple(hi))
        )
    return curves


def write_plot(rows, path, title: str | None = None) -> list[PlotCurve]:
    """Render the curves to a self-contained SVG; returns what was plotted."""
    curves = aggregate_curves(rows)
    with matplotlib.rc_context({"svg.hashsalt": "housedl", "svg.fonttype": "path"}):
        fig = Figure(figsize=(6.4, 4.4))
        ax = fig.add_subplot()
        for curve in curves:
            (line,) = ax.plot(curve.xs, curve.median, marker="o", label=curve.label)
            ax.fill_between(curve.xs, curve.q25, curve.q75, alpha=0.2, color=line.get_color())
        x_name = curves[0].x_name if curves else "p"
        metric = curves[0].metric if curves else ""
        ax.set_xlabel(_AXIS_LABELS.get(x_name, x_name))
        ax.set_ylabel(_AXIS_LABELS.get(metric, metric))
        if title:
            ax.set_title(title)
        if curves:
            ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    return curves
