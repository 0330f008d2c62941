"""Command-line front end: point evaluation, sweeps, optimization, figure data,
and oracle comparison, with CSV/JSON output.

Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error. Sweep and
figure rows are computed by a worker pool over input indices (capped by the
UNRUH_THREADS environment variable) and written by a single writer in input
order, so output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from pathlib import Path

from . import oracle as oracle_mod
from .channel_math import ChannelParams
from .errors import ChannelError, DomainError, UsageError
from .observables import DetectorConfig, compute_observables
from .optimizer import find_optimal_cutoff
from .quadrature import QuadratureConfig

CSV_HEADER = "u,delta,k_cut,i_norm,i_err,v_bar,v_err,snr_gain,v_c,note"

FIGURES = {
    # figure id -> (sweep axis, fixed values per curve, curve axis spec)
    2: dict(axis="u", metric_label="i_norm", curves=[("k_cut", 1e-5), ("k_cut", 1e-3), ("k_cut", 0.1)]),
    3: dict(axis="u", metric_label="v_bar", curves=[("k_cut", 0.01), ("k_cut", 0.05), ("k_cut", 0.1)]),
    4: dict(axis="kcut", metric_label="snr_gain", curves=[("u", 0.0), ("u", math.pi), ("u", 2 * math.pi)]),
    5: dict(axis="kcut", metric_label="snr_gain", curves=[("u", math.pi / 2), ("u", 3 * math.pi / 2), ("u", 5 * math.pi / 2)]),
    6: dict(axis="kcut", metric_label="v_c", curves=[("u", 0.0), ("u", math.pi / 2), ("u", math.pi), ("u", 2 * math.pi), ("u", 3 * math.pi)]),
}
# Sweep ranges for figure regeneration; u-range covers the pre-horizon
# plateau, the straddling oscillations, and the post-horizon decay.
FIG_U_STEPS = 600
FIG_KCUT_RANGE = (0.01, 1.0)
FIG_KCUT_STEPS = 60


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.17g}"


def _worker_count() -> int:
    cap = os.environ.get("UNRUH_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise UsageError(f"UNRUH_THREADS must be an integer, got {cap!r}")
    return n


def _params_from(ns) -> ChannelParams:
    # invalid values supplied on the command line are usage errors, not
    # numerical failures
    try:
        return ChannelParams(u=ns.u, delta=ns.delta,
                             alpha=complex(ns.alpha_re, ns.alpha_im),
                             beta=ns.beta, phi=ns.phi)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _quad_from(ns) -> QuadratureConfig:
    try:
        return QuadratureConfig(rel_tol=ns.rel_tol, abs_tol=ns.abs_tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _detector_from(ns) -> DetectorConfig:
    try:
        return DetectorConfig(k_cut=ns.kcut, quad=_quad_from(ns))
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj, stream=None) -> None:
    json.dump(obj, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _row(u, delta, k_cut, quad):
    """One sweep row; failures become nan metrics plus a note."""
    try:
        params = ChannelParams(u=u, delta=delta)
        obs = compute_observables(params, DetectorConfig(k_cut=k_cut, quad=quad))
        return (u, delta, k_cut, obs.i_norm, obs.i_err, obs.v_bar, obs.v_err,
                obs.snr_gain, obs.v_c, "")
    except ChannelError as exc:
        nan = math.nan
        return (u, delta, k_cut, nan, nan, nan, nan, nan, nan,
                str(exc).replace(",", ";").replace("\n", " "))


def _write_rows(path: Path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v
                              for v in row) + "\n")


def _axis_values(lo, hi, steps, scale):
    import numpy as np
    if steps < 2:
        raise UsageError(f"sweeps need at least 2 axis steps, got {steps}")
    if not lo < hi:
        raise UsageError(f"axis range must satisfy min < max, got [{lo}, {hi}]")
    if scale == "log":
        if not lo > 0:
            raise UsageError("log axis scale requires axis_min > 0")
        return list(np.geomspace(lo, hi, steps))
    return list(np.linspace(lo, hi, steps))


def _sweep_rows(axis, values, ns, quad):
    if axis == "u":
        jobs = [(u, ns.delta, ns.kcut) for u in values]
    else:
        jobs = [(ns.u, ns.delta, k) for k in values]
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        return list(pool.map(lambda j: _row(*j, quad), jobs))


def cmd_point(ns) -> int:
    params = _params_from(ns)
    obs = compute_observables(params, _detector_from(ns))
    out = {"command": "point",
           "inputs": {"u": ns.u, "delta": ns.delta, "k_cut": ns.kcut,
                      "alpha_re": ns.alpha_re, "alpha_im": ns.alpha_im,
                      "beta": ns.beta, "phi": ns.phi},
           "quadrature": {"rel_tol": ns.rel_tol, "abs_tol": ns.abs_tol},
           **asdict(obs)}
    _emit(out)
    return 0


def cmd_sweep(ns) -> int:
    values = _axis_values(ns.axis_min, ns.axis_max, ns.axis_steps, ns.axis_scale)
    rows = _sweep_rows(ns.sweep_axis, values, ns, _quad_from(ns))
    _write_rows(Path(ns.out), rows)
    return 0


def cmd_optimize(ns) -> int:
    metric = {"snr": "snr_gain", "cv": "conditional_variance"}[ns.metric]
    res = find_optimal_cutoff(_params_from(ns), metric,
                              search_lo=ns.search_lo, search_hi=ns.search_hi,
                              x_tol=ns.xtol, quad=_quad_from(ns))
    out = {"command": "optimize", "metric": metric,
           "u": ns.u, "delta": ns.delta,
           "k_opt": res.k_opt, "metric_at_opt": res.metric_at_opt,
           "bracket_lo": res.bracket_lo, "bracket_hi": res.bracket_hi,
           "converged": res.converged, "note": res.note}
    if metric == "snr_gain":
        out["unruh_ratio"] = 2.0 * math.pi * res.k_opt
    _emit(out)
    return 0


def cmd_figure(ns) -> int:
    if ns.id not in FIGURES:
        raise UsageError(f"unknown figure id {ns.id}; choose from {sorted(FIGURES)}")
    spec = FIGURES[ns.id]
    outdir = Path(ns.out)
    outdir.mkdir(parents=True, exist_ok=True)
    quad = _quad_from(ns)
    delta = ns.delta
    written = []
    for idx, (fixed_name, fixed_value) in enumerate(spec["curves"], start=1):
        if spec["axis"] == "u":
            values = _axis_values(-3.0 * delta, delta, FIG_U_STEPS, "linear")
            jobs = [(u, delta, fixed_value) for u in values]
        else:
            values = _axis_values(*FIG_KCUT_RANGE, FIG_KCUT_STEPS, "log")
            jobs = [(fixed_value, delta, k) for k in values]
        with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            rows = list(pool.map(lambda j: _row(*j, quad), jobs))
        path = outdir / f"fig{ns.id}_curve{idx}.csv"
        _write_rows(path, rows)
        written.append(str(path))
    _emit({"command": "figure", "figure_id": ns.id, "files": written})
    return 0


def cmd_oracle(ns) -> int:
    params = _params_from(ns)
    det = _detector_from(ns)
    cfg = oracle_mod.OracleConfig(k_so=ns.kso, grid_s=ns.grid_s, grid_d=ns.grid_d)
    obs = compute_observables(params, det)
    i_triple, v_triple = oracle_mod.strength_and_variance_triple(params, det, cfg)
    i_exact = oracle_mod.lo_strength_exact(params, det, cfg)
    vbar_triple = v_triple / i_triple
    dev_i = abs(i_triple - obs.i_norm) / obs.i_norm
    dev_v = abs(vbar_triple - obs.v_bar) / obs.v_bar
    dev_exact = abs(i_exact - obs.i_norm) / obs.i_norm
    _emit({"command": "oracle",
           "inputs": {"u": ns.u, "delta": ns.delta, "k_cut": ns.kcut,
                      "k_so": ns.kso},
           "reduced": {"i_norm": obs.i_norm, "v_bar": obs.v_bar},
           "triple": {"i_norm": i_triple, "v_bar": vbar_triple},
           "exact": {"i_norm": i_exact},
           "rel_deviation": {"i_triple": dev_i, "v_bar_triple": dev_v,
                             "i_exact": dev_exact},
           "pass": bool(dev_i <= 1e-4 and dev_v <= 1e-4)})
    return 0


def _add_channel_flags(p):
    p.add_argument("--u", type=float, default=0.0, help="emission offset k_so(t-x)")
    p.add_argument("--delta", type=float, default=10.0, help="packet sharpness k_so/sigma")
    p.add_argument("--kcut", type=float, default=0.1, help="low-frequency cutoff")
    p.add_argument("--alpha-re", type=float, default=1.0)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=1e3)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--spec", type=str, default=None,
                   help="JSON run-spec file; explicit flags override its values")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="unruh-homodyne",
        description="Observables of coherent-state homodyne communication "
                    "across a Rindler horizon")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate all observables at one point")
    _add_channel_flags(p)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="sweep a metric along u or k_cut into CSV")
    _add_channel_flags(p)
    p.add_argument("--axis", dest="sweep_axis", choices=("u", "kcut"), default="u")
    p.add_argument("--min", dest="axis_min", type=float, required=True)
    p.add_argument("--max", dest="axis_max", type=float, required=True)
    p.add_argument("--steps", dest="axis_steps", type=int, required=True)
    p.add_argument("--scale", dest="axis_scale", choices=("linear", "log"),
                   default="linear")
    p.add_argument("--out", type=str, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="find the cutoff extremizing a metric")
    _add_channel_flags(p)
    p.add_argument("--metric", choices=("snr", "cv"), required=True)
    p.add_argument("--lo", dest="search_lo", type=float, default=0.01)
    p.add_argument("--hi", dest="search_hi", type=float, default=1.0)
    p.add_argument("--xtol", type=float, default=1e-4)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("figure", help="regenerate figure-data CSVs")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--delta", type=float, default=10.0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--spec", type=str, default=None)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("oracle", help="compare reduced path against brute-force oracles")
    _add_channel_flags(p)
    p.add_argument("--kso", type=float, default=200.0)
    p.add_argument("--grid-s", type=int, default=4001)
    p.add_argument("--grid-d", type=int, default=2001)
    p.set_defaults(func=cmd_oracle)

    return ap


def _apply_spec_file(ns, argv) -> None:
    """Fill run-spec file values into the namespace for flags not given on argv."""
    if getattr(ns, "spec", None) is None:
        return
    try:
        with open(ns.spec, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read run-spec file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"run-spec file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise UsageError("run-spec file must hold a JSON object")
    given = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(ns, attr):
            raise UsageError(f"unknown run-spec key {key!r}")
        if f"--{key.replace('_', '-')}" in given:
            continue  # explicit flag wins
        setattr(ns, attr, value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
        _apply_spec_file(ns, argv)
        return ns.func(ns)
    except UsageError as exc:
        _emit({"error": {"kind": "usage", "message": str(exc)}}, sys.stderr)
        return 2
    except ChannelError as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}},
              sys.stderr)
        return 1
    except OSError as exc:
        _emit({"error": {"kind": "io", "message": str(exc)}}, sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
