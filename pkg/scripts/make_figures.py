#!/usr/bin/env python3
"""Regenerate all figure-data CSVs and, when matplotlib is available, render
the corresponding images.

Usage:
    python scripts/make_figures.py --out ./figs [--ids 2 3 4 5 6] [--no-render]
"""

import argparse
import sys
from pathlib import Path

from unruh_homodyne import cli


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=str, default="figs")
    ap.add_argument("--ids", type=int, nargs="+", default=sorted(cli.FIGURES))
    ap.add_argument("--no-render", action="store_true",
                    help="write CSVs only, skip image rendering")
    ns = ap.parse_args(argv)

    outdir = Path(ns.out)
    outdir.mkdir(parents=True, exist_ok=True)

    render = None
    if not ns.no_render:
        try:
            from unruh_homodyne.plotfigs import FigureSpec, render_figure
            render = (FigureSpec, render_figure)
        except ImportError:
            print("matplotlib not installed; writing CSVs only", file=sys.stderr)

    for fig_id in ns.ids:
        code = cli.main(["figure", "--id", str(fig_id), "--out", str(outdir)])
        if code != 0:
            return code
        if render is not None:
            FigureSpec, render_figure = render
            n = len(cli.FIGURES[fig_id]["curves"])
            csvs = tuple(str(outdir / f"fig{fig_id}_curve{i}.csv")
                         for i in range(1, n + 1))
            image = render_figure(FigureSpec(
                figure_id=fig_id, input_csvs=csvs,
                output_image=str(outdir / f"fig{fig_id}.png")))
            print(image)
    return 0


if __name__ == "__main__":
    sys.exit(main())
