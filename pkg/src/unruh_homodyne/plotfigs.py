"""Figure rendering from the sweep CSVs produced by the cli module.

This is a thin presentation layer: it never recomputes physics, it only reads
the standard CSV columns and draws one curve per file. Rendering is
deterministic for identical inputs (fixed style, Agg backend, no timestamps).
Requires matplotlib, which the core package deliberately does not.
"""

from __future__ import annotations

import argparse
import csv
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cli import CSV_HEADER
from .errors import SchemaError, UsageError

EXPECTED_COLUMNS = tuple(CSV_HEADER.split(","))

# Per-figure presentation: axis labels, which column is plotted, how the
# legend names each curve, log-vs-linear x axis, and extremum markers.
_FIGURE_STYLES = {
    2: dict(x="u", y="i_norm", x_label="emission offset u", log_x=False,
            y_label="local-oscillator strength", legend_key="k_cut",
            legend_fmt="k_cut = {:g}", mark=None),
    3: dict(x="u", y="v_bar", x_label="emission offset u", log_x=False,
            y_label="normalized variance", legend_key="k_cut",
            legend_fmt="k_cut = {:g}", mark=None),
    4: dict(x="k_cut", y="snr_gain", x_label="low-frequency cutoff k_cut",
            log_x=True, y_label="SNR gain", legend_key="u",
            legend_fmt="u = {:.4g}", mark="max"),
    5: dict(x="k_cut", y="snr_gain", x_label="low-frequency cutoff k_cut",
            log_x=True, y_label="SNR gain", legend_key="u",
            legend_fmt="u = {:.4g}", mark="max"),
    6: dict(x="k_cut", y="v_c", x_label="low-frequency cutoff k_cut",
            log_x=True, y_label="conditional variance", legend_key="u",
            legend_fmt="u = {:.4g}", mark="min"),
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: ordered input CSVs and output image path."""

    figure_id: int
    input_csvs: tuple
    output_image: str
    x_label: str = ""
    y_label: str = ""
    legend: tuple = ()

    def __post_init__(self):
        if self.figure_id not in _FIGURE_STYLES:
            raise UsageError(
                f"unknown figure id {self.figure_id}; "
                f"choose from {sorted(_FIGURE_STYLES)}")
        if not self.input_csvs:
            raise UsageError("input_csvs must be non-empty")
        if self.legend and len(self.legend) != len(self.input_csvs):
            raise UsageError("legend must have one entry per input CSV")


def load_curve(path):
    """Read one sweep CSV into a dict of float arrays keyed by column name.

    Raises SchemaError (naming the offending column) on header or cell
    mismatch, and on a file holding no data rows.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header "
                              f"{CSV_HEADER!r}")
        if tuple(header) != EXPECTED_COLUMNS:
            missing = [c for c in EXPECTED_COLUMNS if c not in header]
            extra = [c for c in header if c not in EXPECTED_COLUMNS]
            bad = (missing or extra or ["(column order)"])[0]
            raise SchemaError(f"{path}: header mismatch on column {bad!r}",
                              column=bad)
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    numeric = EXPECTED_COLUMNS[:-1]  # trailing 'note' column is free text
    data = {name: np.empty(len(rows)) for name in numeric}
    for i, row in enumerate(rows):
        if len(row) != len(EXPECTED_COLUMNS):
            raise SchemaError(f"{path}: row {i + 2} has {len(row)} fields, "
                              f"expected {len(EXPECTED_COLUMNS)}")
        for name, cell in zip(numeric, row):
            try:
                data[name][i] = float(cell)
            except ValueError:
                raise SchemaError(
                    f"{path}: row {i + 2} column {name!r} is not numeric: "
                    f"{cell!r}", column=name)
    return data


def _finite_mask(x, y):
    return np.isfinite(x) & np.isfinite(y)


def render_figure(spec: FigureSpec) -> str:
    """Draw one curve per input CSV and write the image; returns its path.

    nan rows (failed sweep points) are dropped; a single warning reports how
    many were skipped across all curves.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    style = _FIGURE_STYLES[spec.figure_id]
    curves = [load_curve(p) for p in spec.input_csvs]

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    skipped = 0
    for idx, data in enumerate(curves):
        x, y = data[style["x"]], data[style["y"]]
        mask = _finite_mask(x, y)
        skipped += int(np.size(mask) - np.count_nonzero(mask))
        x, y = x[mask], y[mask]
        if spec.legend:
            label = spec.legend[idx]
        else:
            label = style["legend_fmt"].format(data[style["legend_key"]][0])
        line, = ax.plot(x, y, lw=1.4, label=label)
        if style["mark"] and len(y):
            j = int(np.argmax(y)) if style["mark"] == "max" else int(np.argmin(y))
            ax.plot([x[j]], [y[j]], marker="o", ms=5, mfc="none",
                    color=line.get_color())
    if skipped:
        warnings.warn(f"skipped {skipped} non-finite rows across "
                      f"{len(curves)} curves", stacklevel=2)
    if style["log_x"]:
        ax.set_xscale("log")
    ax.set_xlabel(spec.x_label or style["x_label"])
    ax.set_ylabel(spec.y_label or style["y_label"])
    # fixed location: deterministic and avoids the loc="best" layout pass
    ax.legend(frameon=False, fontsize=9, loc="upper right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = Path(spec.output_image)
    fig.savefig(out, metadata={"Software": None} if out.suffix == ".png" else None)
    plt.close(fig)
    return str(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="render",
        description="Render a multi-curve figure from sweep CSVs")
    ap.add_argument("--figure", type=int, required=True, help="figure id (2-6)")
    ap.add_argument("--csv", nargs="+", required=True, help="input CSVs, one per curve")
    ap.add_argument("--out", type=str, required=True, help="output image path")
    ap.add_argument("--x-label", type=str, default="")
    ap.add_argument("--y-label", type=str, default="")
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    try:
        spec = FigureSpec(figure_id=ns.figure, input_csvs=tuple(ns.csv),
                          output_image=ns.out, x_label=ns.x_label,
                          y_label=ns.y_label)
        path = render_figure(spec)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
