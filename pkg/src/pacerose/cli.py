"""Command-line pipeline: hist, fit, simulate, predict.

Configuration precedence is CLI flags over config-file entries over
defaults; the defaults reproduce the standard preprocessing setup (K=8,
32 bins, drop the slowest 10% and fastest 5% of paces, major road classes,
point-symmetric network).

Exit codes: 0 ok, 2 input error, 3 insufficient data, 4 numerical or
model-compatibility error. Output files are written atomically (temp file
plus rename).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields, replace

import numpy as np

from .angles import AngularHistogram, bin_index, build_histogram
from .errors import (
    DegenerateTripError,
    InputFormatError,
    InsufficientDataError,
    NumericalError,
    PaceroseError,
    SpecMismatchError,
)
from .estimator import ols_fit, report_rows, significance_mask
from .features import ModelSpec, build_design_matrix
from .ingest import (
    FilterPolicy,
    network_orientation_histogram,
    pace,
    parse_network,
    parse_trips,
    percentile_filter,
    trip_direction,
)
from .model import (
    expected_sign_report,
    load_model,
    predict_pace,
    reconstruct_curve,
    save_model,
)
from .rose_svg import curve_svg, rose_svg
from .synth import (
    generate_paces,
    sample_directions,
    scenario_from_dict,
    scenario_manifest,
    trip_csv_lines,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INSUFFICIENT = 3
EXIT_NUMERICAL = 4

SIGNIFICANCE_LEVEL = 0.05

HIST_HEADER = "bin,center_rad,value"

__all__ = ["RunConfig", "main"]


@dataclass
class RunConfig:
    """Resolved run configuration; defaults mirror the standard setup."""

    trips: str | None = None
    network: str | None = None
    network_hist: str | None = None
    demand_hist: str | None = None
    scenario: str | None = None
    model: str | None = None
    k_max: int = 8
    bins: int = 32
    lower_cut: float = 0.05
    upper_cut: float = 0.10
    class_filter: str = "motorway,trunk,primary,secondary"
    point_symmetric: bool = True
    length_weighted: bool = False
    compass: bool = False
    lonlat: bool = False
    demand_from: str = "all"
    output_dir: str = "."
    seed: int | None = None
    strict_rank: bool = False
    mask_curves: bool = True
    baseline: str = "none"
    curve_grid: int = 256
    dump_design: bool = False


_BOOL_VALUES = {
    "true": True, "1": True, "yes": True, "on": True,
    "false": False, "0": False, "no": False, "off": False,
}


def _coerce(name: str, value: str):
    for f in fields(RunConfig):
        if f.name != name:
            continue
        if f.type in ("bool",):
            v = _BOOL_VALUES.get(value.lower())
            if v is None:
                raise InputFormatError(f"config key {name}: not a boolean: {value!r}")
            return v
        if f.type in ("int",):
            return int(value)
        if f.type in ("int | None",):
            return None if value.lower() == "none" else int(value)
        if f.type in ("float",):
            return float(value)
        return value
    raise InputFormatError(f"unknown config key {name!r}")


def _parse_config_file(path: str) -> dict:
    data = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputFormatError(
                    f"config line {lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            key = key.strip()
            try:
                data[key] = _coerce(key, value.strip())
            except ValueError as exc:
                raise InputFormatError(
                    f"config line {lineno}: bad value for {key}: {exc}"
                ) from exc
    return data


def resolve_config(args: argparse.Namespace) -> tuple:
    """Merge defaults, config file, and explicit CLI flags.

    Returns (config, explicitly_set_names).
    """
    provided = {k: v for k, v in vars(args).items()
                if k not in ("command", "config", "theta", "degrees", "func")
                and v is not None}
    cfg = RunConfig()
    config_path = getattr(args, "config", None)
    file_keys = {}
    if config_path:
        file_keys = _parse_config_file(config_path)
        cfg = replace(cfg, **file_keys)
    cfg = replace(cfg, **provided)
    return cfg, set(provided) | set(file_keys)


def _format_float(x: float) -> str:
    return repr(float(x))


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_histogram_csv(path: str, hist: AngularHistogram):
    centers = hist.bin_centers()
    lines = [HIST_HEADER]
    for i, (c, v) in enumerate(zip(centers, hist.values)):
        lines.append(f"{i},{_format_float(c)},{_format_float(v)}")
    _write_atomic(path, "\n".join(lines) + "\n")


def _read_histogram_csv(path: str, bins: int) -> AngularHistogram:
    values = {}
    with open(path, encoding="utf-8") as f:
        header = None
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line
                if header.lower() != HIST_HEADER:
                    raise InputFormatError(
                        f"{path}: expected header {HIST_HEADER!r}"
                    )
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise InputFormatError(f"{path} row {lineno}: expected 3 fields")
            try:
                values[int(parts[0])] = float(parts[2])
            except ValueError as exc:
                raise InputFormatError(f"{path} row {lineno}: {exc}") from exc
    if header is None:
        raise InputFormatError(f"{path}: empty histogram file")
    if sorted(values) != list(range(bins)):
        raise InputFormatError(
            f"{path}: expected bin indices 0..{bins - 1}, got {len(values)} rows"
        )
    arr = np.array([values[i] for i in range(bins)])
    total = arr.sum()
    if total <= 0.0:
        raise InputFormatError(f"{path}: histogram values sum to zero")
    return AngularHistogram(bins, arr / total, normalized=True)


def _load_trips(cfg: RunConfig):
    if not cfg.trips:
        raise InputFormatError("no trip file given (--trips)")
    with open(cfg.trips, encoding="utf-8") as f:
        trips = parse_trips(f, lonlat=cfg.lonlat)
    if not trips:
        raise InputFormatError("no trips")
    directions = []
    paces = []
    skipped = 0
    for t in trips:
        try:
            directions.append(trip_direction(t, compass=cfg.compass))
        except DegenerateTripError:
            skipped += 1
            continue
        paces.append(pace(t))
    if skipped:
        log.warning("skipped %d degenerate trip(s)", skipped)
    if not directions:
        raise InputFormatError("no trips")
    return np.array(directions), np.array(paces)


def _load_network_histogram(cfg: RunConfig) -> AngularHistogram:
    if cfg.network_hist:
        return _read_histogram_csv(cfg.network_hist, cfg.bins)
    if not cfg.network:
        raise InputFormatError(
            "need a network input (--network or --network-hist)"
        )
    class_filter = {c.strip() for c in cfg.class_filter.split(",") if c.strip()}
    with open(cfg.network, encoding="utf-8") as f:
        segments = parse_network(f, class_filter=class_filter, lonlat=cfg.lonlat)
    return network_orientation_histogram(
        segments,
        bins=cfg.bins,
        length_weighted=cfg.length_weighted,
        compass=cfg.compass,
    )


def _demand_histogram(cfg: RunConfig, directions, kept) -> AngularHistogram:
    if cfg.demand_hist:
        return _read_histogram_csv(cfg.demand_hist, cfg.bins)
    source = directions if cfg.demand_from == "all" else directions[kept]
    return build_histogram(source, bin_count=cfg.bins)


def _filter_indices(cfg: RunConfig, paces):
    policy = FilterPolicy(cfg.lower_cut, cfg.upper_cut)
    return percentile_filter(list(paces), policy)


def cmd_hist(cfg: RunConfig) -> int:
    directions, paces = _load_trips(cfg)
    kept = _filter_indices(cfg, paces)
    demand = _demand_histogram(cfg, directions, kept)
    network = _load_network_histogram(cfg)

    sums = np.zeros(cfg.bins)
    counts = np.zeros(cfg.bins, dtype=int)
    for i in kept:
        j = bin_index(float(directions[i]), cfg.bins)
        sums[j] += paces[i]
        counts[j] += 1
    means = np.where(counts > 0, sums / np.maximum(counts, 1), math.nan)

    out = cfg.output_dir
    _write_histogram_csv(os.path.join(out, "demand_hist.csv"), demand)
    _write_histogram_csv(os.path.join(out, "network_hist.csv"), network)
    centers = demand.bin_centers()
    lines = ["bin,center_rad,mean_pace,n_trips"]
    for i in range(cfg.bins):
        lines.append(
            f"{i},{_format_float(centers[i])},{_format_float(means[i])},"
            f"{counts[i]}"
        )
    _write_atomic(os.path.join(out, "pace_by_direction.csv"),
                  "\n".join(lines) + "\n")

    _write_atomic(os.path.join(out, "demand_rose.svg"),
                  rose_svg(demand.values, "trip-direction frequencies"))
    _write_atomic(os.path.join(out, "network_rose.svg"),
                  rose_svg(network.values, "road-orientation frequencies"))
    pace_values = np.where(counts > 0, means, 0.0)
    _write_atomic(os.path.join(out, "pace_rose.svg"),
                  rose_svg(pace_values, "mean pace by direction (s/km)"))
    print(f"histograms written to {out}")
    return EXIT_OK


def _summary_text(fit) -> str:
    return (
        f"n_samples: {fit.n_samples}\n"
        f"r_squared: {fit.r_squared:.3f}\n"
        f"f_statistic: {fit.f_statistic:.3f}\n"
        f"prob_f: {fit.prob_f:.3f}\n"
        f"rank: {fit.rank}\n"
        f"parameters: {fit.parameter_count}\n"
    )


def _report_csv(fit) -> str:
    lines = ["name,coefficient,std_err,t_value,p_value,significant_5pct"]
    for name, coef, se, t, p, sig in report_rows(fit, SIGNIFICANCE_LEVEL):
        lines.append(
            f"{name},{_format_float(coef)},{_format_float(se)},"
            f"{_format_float(t)},{_format_float(p)},{str(sig).lower()}"
        )
    return "\n".join(lines) + "\n"


def _curve_csv(curve) -> str:
    lines = ["offset_rad,value"]
    for t, v in zip(curve.offsets, curve.values):
        lines.append(f"{_format_float(t)},{_format_float(v)}")
    return "\n".join(lines) + "\n"


def cmd_fit(cfg: RunConfig) -> int:
    directions, paces = _load_trips(cfg)
    kept = _filter_indices(cfg, paces)
    demand = _demand_histogram(cfg, directions, kept)
    network = _load_network_histogram(cfg)
    spec = ModelSpec(
        k_max=cfg.k_max,
        bins=cfg.bins,
        network_point_symmetric=cfg.point_symmetric,
    )
    X, y = build_design_matrix(paces[kept], directions[kept], demand,
                               network, spec)
    fit = ols_fit(
        X, y,
        column_names=spec.column_names,
        rank_policy="strict" if cfg.strict_rank else "min_norm",
    )

    out = cfg.output_dir
    _write_atomic(os.path.join(out, "fit_report.csv"), _report_csv(fit))
    _write_atomic(os.path.join(out, "summary.txt"), _summary_text(fit))

    mask = significance_mask(fit, SIGNIFICANCE_LEVEL) if cfg.mask_curves else None
    curves = {}
    for kind in ("alpha", "beta"):
        curve = reconstruct_curve(
            fit.column_names, fit.coefficients, mask=mask, kind=kind,
            grid_size=cfg.curve_grid,
        )
        curves[kind] = curve
        _write_atomic(os.path.join(out, f"{kind}_curve.csv"), _curve_csv(curve))
        plot_values = curve.values
        title = f"{kind} influence curve"
        if cfg.baseline == "min":
            plot_values = curve.values - curve.values.min()
            title += " (baseline: minimum)"
        _write_atomic(os.path.join(out, f"{kind}_curve.svg"),
                      curve_svg(curve.offsets, plot_values, title))

    sign_text = expected_sign_report(curves["alpha"], curves["beta"])
    _write_atomic(os.path.join(out, "sign_report.txt"), sign_text + "\n")
    save_model(os.path.join(out, "model.json"), fit, spec, demand, network)

    if cfg.dump_design:
        lines = [",".join(spec.column_names + ("pace",))]
        for row, target in zip(X, y):
            lines.append(",".join(_format_float(v) for v in row)
                         + f",{_format_float(target)}")
        _write_atomic(os.path.join(out, "design_matrix.csv"),
                      "\n".join(lines) + "\n")

    sys.stdout.write(_summary_text(fit))
    print(sign_text)
    if fit.dependent_columns:
        print("note: rank-deficient design resolved by the minimum-norm "
              "convention; dependent columns: "
              + ", ".join(fit.dependent_columns))
    print(f"fit outputs written to {out}")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    if not cfg.scenario:
        raise InputFormatError("simulate needs --scenario")
    try:
        with open(cfg.scenario, encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid scenario JSON: {exc}") from exc
    scenario = scenario_from_dict(payload)
    if cfg.seed is not None:
        scenario = replace(scenario, seed=cfg.seed)

    directions = sample_directions(scenario)
    paces, n_clamped = generate_paces(directions, scenario)

    out = cfg.output_dir
    _write_atomic(os.path.join(out, "trips.csv"),
                  "\n".join(trip_csv_lines(directions, paces)) + "\n")
    manifest = scenario_manifest(scenario, n_clamped)
    _write_atomic(os.path.join(out, "manifest.json"),
                  json.dumps(manifest, indent=1) + "\n")
    _write_histogram_csv(os.path.join(out, "demand_hist.csv"),
                         scenario.demand_hist)
    _write_histogram_csv(os.path.join(out, "network_hist.csv"),
                         scenario.network_hist)
    print(f"{scenario.n_trips} trips written to {out} "
          f"(seed {scenario.seed}, {n_clamped} clamped)")
    return EXIT_OK


def cmd_predict(cfg: RunConfig, thetas, degrees: bool,
                explicit: set) -> int:
    if not cfg.model:
        raise InputFormatError("predict needs --model")
    fit, spec, demand, network = load_model(cfg.model)
    for key, value in (("k_max", spec.k_max), ("bins", spec.bins),
                       ("point_symmetric", spec.network_point_symmetric)):
        if key in explicit and getattr(cfg, key) != value:
            raise SpecMismatchError(
                f"--{key.replace('_', '-')} {getattr(cfg, key)} does not "
                f"match the model ({value})"
            )
    for raw in thetas:
        try:
            value = float(raw)
        except ValueError:
            raise InputFormatError(f"bad direction value {raw!r}") from None
        theta = math.radians(value) if degrees else value
        print(_format_float(predict_pace(theta, demand, network, fit, spec)))
    return EXIT_OK


def _add_common_options(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--trips", help="trip CSV path")
    p.add_argument("--network", help="network edge CSV path")
    p.add_argument("--network-hist", dest="network_hist",
                   help="precomputed network histogram CSV")
    p.add_argument("--demand-hist", dest="demand_hist",
                   help="precomputed demand histogram CSV")
    p.add_argument("--k", dest="k_max", type=int, help="max harmonic degree")
    p.add_argument("--bins", type=int, help="circular bin count")
    p.add_argument("--lower-cut", dest="lower_cut", type=float,
                   help="fraction of fastest paces to drop")
    p.add_argument("--upper-cut", dest="upper_cut", type=float,
                   help="fraction of slowest paces to drop")
    p.add_argument("--class-filter", dest="class_filter",
                   help="comma-separated road classes to keep")
    p.add_argument("--point-symmetric", dest="point_symmetric",
                   action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--length-weighted", dest="length_weighted",
                   action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--compass", action=argparse.BooleanOptionalAction,
                   default=None,
                   help="treat raw bearings as compass (0=N, clockwise)")
    p.add_argument("--lonlat", action=argparse.BooleanOptionalAction,
                   default=None, help="coordinates are lon/lat degrees")
    p.add_argument("--demand-from", dest="demand_from",
                   choices=("all", "filtered"),
                   help="build d() from all trips or post-filter trips")
    p.add_argument("--output-dir", dest="output_dir", help="output directory")
    p.add_argument("--seed", type=int, help="seed override for simulate")
    p.add_argument("--strict-rank", dest="strict_rank",
                   action=argparse.BooleanOptionalAction, default=None,
                   help="fail on rank-deficient designs instead of min-norm")
    p.add_argument("--mask", dest="mask_curves",
                   action=argparse.BooleanOptionalAction, default=None,
                   help="restrict curves to 5%%-significant terms")
    p.add_argument("--baseline", choices=("none", "min"),
                   help="curve plot baseline")
    p.add_argument("--curve-grid", dest="curve_grid", type=int,
                   help="points per reconstructed curve")
    p.add_argument("--dump-design", dest="dump_design",
                   action=argparse.BooleanOptionalAction, default=None,
                   help="also write the design matrix CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacerose",
        description="Directional congestion regression from angular "
                    "histograms of demand and road orientation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("hist", "write angular histograms and rose diagrams"),
        ("fit", "fit the regression and write report, curves, model"),
        ("simulate", "generate synthetic trips from a scenario file"),
        ("predict", "predict pace for directions from a fitted model"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_options(p)
        if name == "simulate":
            p.add_argument("--scenario", help="scenario JSON path")
        if name == "predict":
            p.add_argument("--model", help="model.json written by fit")
            p.add_argument("--theta", action="append", default=None,
                           help="direction (repeatable)")
            p.add_argument("--degrees", action="store_true", default=False,
                           help="interpret --theta values as degrees")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg, explicit = resolve_config(args)
        if args.command == "hist":
            return cmd_hist(cfg)
        if args.command == "fit":
            return cmd_fit(cfg)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "predict":
            thetas = args.theta or []
            if not thetas:
                raise InputFormatError("predict needs at least one --theta")
            return cmd_predict(cfg, thetas, args.degrees, explicit)
        raise InputFormatError(f"unknown command {args.command!r}")
    except (InputFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PaceroseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
