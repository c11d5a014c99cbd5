"""The four figure kinds and their renderer.

Every figure is a pure function of the trace directories named in the
FigureSpec: the same inputs produce byte-identical PNG output.  No
pyplot state is used; each render builds its own Figure on an Agg
canvas.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .errors import PlotError
from .traces import TraceDir, load_trace_dir

KINDS = ("tracking", "soa_fan", "switch_hist", "mitigation")

PALETTE = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple",
           "tab:brown", "tab:pink", "tab:olive", "tab:cyan")


@dataclass(frozen=True)
class FigureSpec:
    """A figure request: what to draw, from which runs, to which file."""

    kind: str
    traces: tuple
    out: Path

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotError(f"unknown figure kind {self.kind!r}; "
                            f"expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "traces", tuple(self.traces))
        if not self.traces:
            raise PlotError("a figure needs at least one trace directory")
        object.__setattr__(self, "out", Path(self.out))


def render(spec: FigureSpec) -> Path:
    """Render the requested figure and return the written path."""
    dirs = [load_trace_dir(p) for p in spec.traces]
    cadences = sorted({d.dt_s for d in dirs})
    if len(cadences) > 1:
        raise PlotError("traces disagree on control cadence: "
                        + ", ".join(f"{c:g}s" for c in cadences))

    fig = Figure(figsize=_FIGSIZE[spec.kind](len(dirs)), dpi=110)
    FigureCanvasAgg(fig)
    _DRAW[spec.kind](fig, dirs)
    spec.out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out, format="png", metadata={"Software": "plotkit"})
    return spec.out


def _report_series(d: TraceDir, key: str, need: str, hint: str):
    if d.report is None:
        raise PlotError(f"{d.path} has no metrics_report.json; "
                        f"the {need} figure needs it")
    value = d.report.get(key)
    if value is None:
        raise PlotError(f"{d.path}: metrics report has no {key}; "
                        f"the {need} figure needs {hint}")
    return np.asarray(value, dtype=float)


# per-unit series are written by the run itself; recomputing metrics on
# a trace without per-unit columns drops them
PER_UNIT_HINT = ("a report carrying per-unit series (a metrics recompute "
                 "on a slim trace drops them)")


def _draw_tracking(fig, dirs):
    axes = np.atleast_1d(fig.subplots(len(dirs), 1, sharex=True))
    for ax, d in zip(axes, dirs):
        hours = d.table["time_s"].to_numpy() / 3600.0
        floor = d.table["locked_on_w"].to_numpy() / 1e6
        ceiling = floor + d.table["available_w"].to_numpy() / 1e6
        ax.fill_between(hours, 0.0, floor, color="0.80", lw=0,
                        label="locked on")
        ax.fill_between(hours, floor, ceiling, color="0.92", lw=0,
                        label="available")
        ax.plot(hours, d.table["target_w"].to_numpy() / 1e6,
                color="tab:red", lw=1.2, label="target")
        ax.plot(hours, d.table["agg_w"].to_numpy() / 1e6,
                color="tab:blue", lw=0.8, label="fleet")
        ax.set_ylabel("MW")
        ax.set_title(d.label, fontsize=9, loc="left")
    axes[0].legend(loc="upper right", fontsize=8, ncols=4)
    axes[-1].set_xlabel("hour of day")
    fig.suptitle("target tracking")


def _draw_soa_fan(fig, dirs):
    ax = fig.subplots()
    for i, d in enumerate(dirs):
        avg = _report_series(d, "avg_soa", "soa_fan", PER_UNIT_HINT)
        lo = _report_series(d, "soa_lo", "soa_fan", PER_UNIT_HINT)
        hi = _report_series(d, "soa_hi", "soa_fan", PER_UNIT_HINT)
        hours = d.table["time_s"].to_numpy() / 3600.0
        color = PALETTE[i % len(PALETTE)]
        ax.fill_between(hours, lo, hi, color=color, alpha=0.20, lw=0)
        ax.plot(hours, avg, color=color, lw=2.2, label=d.label)
    ax.axhline(1.0, color="0.4", ls=":", lw=0.8)
    ax.axhline(-1.0, color="0.4", ls=":", lw=0.8)
    ax.set_xlabel("hour of day")
    ax.set_ylabel("state of air")
    ax.legend(loc="upper right", fontsize=8)
    fig.suptitle("comfort envelope and fleet average")


def _draw_switch_hist(fig, dirs):
    series = []
    for d in dirs:
        hist = _report_series(d, "switching_hist", "switch_hist",
                              PER_UNIT_HINT)
        series.append((d.label, hist, None))
    for d in dirs:
        if d.report is not None and d.report.get("uncontrolled_switching_hist"):
            unc = np.asarray(d.report["uncontrolled_switching_hist"], float)
            series.append(("uncontrolled", unc, "0.5"))
            break
    else:
        raise PlotError("none of the traces carries an uncontrolled "
                        "switching histogram for the reference bars")

    length = max(h.size for _, h, _ in series)
    padded = [np.pad(h, (0, length - h.size)) for _, h, _ in series]
    nonzero = np.flatnonzero(np.sum(padded, axis=0))
    if nonzero.size == 0:
        raise PlotError("no switching recorded in these traces")
    lo, hi = int(nonzero[0]), int(nonzero[-1])

    ax = fig.subplots()
    x = np.arange(lo, hi + 1)
    width = 0.8 / len(series)
    for i, ((label, _, color), hist) in enumerate(zip(series, padded)):
        offset = -0.4 + width * (i + 0.5)
        ax.bar(x + offset, hist[lo:hi + 1], width=width, label=label,
               color=color if color else PALETTE[i % len(PALETTE)])
    ax.set_xlabel("switching cycles per unit per day")
    ax.set_ylabel("units")
    ax.legend(loc="upper right", fontsize=8)
    fig.suptitle("daily switching distribution")


def _draw_mitigation(fig, dirs):
    reference = next((d for d in dirs if d.uncontrolled is not None), None)
    if reference is None:
        raise PlotError("the mitigation figure needs uncontrolled.csv "
                        "next to at least one trace")

    top, bottom = fig.subplots(2, 1)
    raw_hours = reference.uncontrolled["time_s"].to_numpy() / 3600.0
    raw = reference.uncontrolled["tie_w"].to_numpy() / 1e6
    if not np.isfinite(raw).all():
        raise PlotError(f"{reference.path}: uncontrolled tie-line series is "
                        "not finite; mitigation figures need tie-line runs")
    top.plot(raw_hours, raw, color="0.6", lw=0.7, label="uncontrolled")
    for i, d in enumerate(dirs):
        smooth = d.table["tie_w"].to_numpy() / 1e6
        if not np.isfinite(smooth).all():
            raise PlotError(f"{d.path}: tie-line series is not finite; "
                            "mitigation figures need tie-line runs")
        top.plot(d.table["time_s"].to_numpy() / 3600.0, smooth,
                 color=PALETTE[i % len(PALETTE)], lw=1.0, label=d.label)
    top.axhline(raw.max(), color="0.3", ls="--", lw=0.8)
    top.axhline(raw.min(), color="0.3", ls="--", lw=0.8)
    top.set_ylabel("tie-line MW")
    top.legend(loc="upper right", fontsize=8)

    for i, d in enumerate(dirs):
        ctrl = _report_series(d, "fluctuation_controlled", "mitigation",
                              "tie-line mitigation runs")
        unc = _report_series(d, "fluctuation_uncontrolled", "mitigation",
                             "tie-line mitigation runs")
        start = float(d.report["warmup_s"])
        step = float(d.report["dt_s"])
        hours = (start + np.arange(ctrl.size) * step) / 3600.0
        if d is reference:
            bottom.plot(hours, unc, color="0.6", lw=0.8, label="uncontrolled")
        bottom.plot(hours, ctrl, color=PALETTE[i % len(PALETTE)], lw=0.8,
                    label=d.label)
    bottom.set_xlabel("hour of day")
    bottom.set_ylabel("fluctuation rate")
    bottom.legend(loc="upper right", fontsize=8)
    fig.suptitle("tie-line smoothing")


_DRAW = {
    "tracking": _draw_tracking,
    "soa_fan": _draw_soa_fan,
    "switch_hist": _draw_switch_hist,
    "mitigation": _draw_mitigation,
}

_FIGSIZE = {
    "tracking": lambda n: (9.0, 1.0 + 2.2 * n),
    "soa_fan": lambda n: (9.0, 5.0),
    "switch_hist": lambda n: (10.0, 5.0),
    "mitigation": lambda n: (9.0, 7.0),
}
