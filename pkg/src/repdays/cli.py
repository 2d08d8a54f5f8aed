"""Command-line pipeline: synth / ingest / distances / cluster / metrics / sweep / report.

Stages hand off through files in the output directory, so the expensive
distance matrix is computed once and reused by clustering and the K sweep:

    synth      -> synthetic.csv, labels.json
    ingest     -> dataset.json, exclusions.json
    distances  -> distances.csv
    cluster    -> model.json
    metrics    -> metrics.json, metrics.csv
    sweep      -> sweep.csv, sweep.json
    report     -> report.json, report.csv, report.svg

Every option can come from a ``key=value`` config file (same names as the
flags, without the leading dashes); explicit flags win over the config
file.  Exit codes: 0 success, 1 invalid configuration or malformed input,
2 missing upstream artifact (the error JSON on stderr names the file).
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from pathlib import Path

from . import clustering, ingest, metrics, report, synth
from .data import load_dataset, save_dataset
from .dtw import distance_matrix, load_distance_matrix, save_distance_matrix
from .ingest import FormatError

SYNTH_CSV = "synthetic.csv"
LABELS_FILE = "labels.json"
DATASET_FILE = "dataset.json"
EXCLUSIONS_FILE = "exclusions.json"
DISTANCES_FILE = "distances.csv"
MODEL_FILE = "model.json"
METRICS_JSON = "metrics.json"
METRICS_CSV = "metrics.csv"
SWEEP_CSV = "sweep.csv"
SWEEP_JSON = "sweep.json"


class ConfigError(ValueError):
    pass


class MissingArtifactError(Exception):
    def __init__(self, path: Path):
        super().__init__(f"missing upstream artifact: {path}")
        self.path = path


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse usage problems are config problems
        raise ConfigError(message)


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_k_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ConfigError(f"K range must look like a..b, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"bad K range {text!r}") from exc


def _parse_weights(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(cell) for cell in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad weights {text!r}") from exc


def _parse_date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError as exc:
        raise ConfigError(f"bad date {text!r}") from exc


def read_config(path: str | Path) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment, blank lines skipped."""
    p = Path(path)
    if not p.exists():
        raise MissingArtifactError(p)
    cfg = {}
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        cfg[key.strip()] = value.strip()
    return cfg


def _resolve(ns, cfg: dict[str, str], key: str, parse, default=None):
    flag_value = getattr(ns, key.replace("-", "_"), None)
    if flag_value is not None:
        return flag_value
    if key in cfg:
        return parse(cfg[key])
    return default


def _out_dir(ns, cfg) -> Path:
    out = Path(_resolve(ns, cfg, "out", str, "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(path: Path) -> Path:
    if not path.exists():
        raise MissingArtifactError(path)
    return path


def _canonical_method(method: str | None, linkage: str | None) -> str:
    if method is None:
        raise ConfigError("a method is required (kmeans, ahc, ahc-complete, ahc-average)")
    if method == "kmeans":
        if linkage is not None:
            raise ConfigError("linkage only applies to ahc methods")
        return "kmeans"
    if method == "ahc":
        return f"ahc-{linkage or 'average'}"
    if method in ("ahc-complete", "ahc-average"):
        implied = method.removeprefix("ahc-")
        if linkage is not None and linkage != implied:
            raise ConfigError(f"method {method} conflicts with linkage {linkage}")
        return method
    raise ConfigError(f"unknown method {method!r}")


def _announce(paths) -> None:
    for p in paths:
        print(p)


def cmd_synth(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    seed = _resolve(ns, cfg, "seed", int, 0)
    days = _resolve(ns, cfg, "days", int, 730)
    wind = _resolve(ns, cfg, "wind", _parse_bool, False)
    start = _resolve(ns, cfg, "start", _parse_date, dt.date(2023, 1, 1))
    config = synth.default_config(seed=seed, n_days=days, include_wind=wind, start_date=start)
    result = synth.generate(config)
    synth.write_csv(result, out / SYNTH_CSV)
    synth.write_labels(result, out / LABELS_FILE)
    _announce([out / SYNTH_CSV, out / LABELS_FILE])
    return 0


def cmd_ingest(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    source = Path(_resolve(ns, cfg, "input", str, str(out / SYNTH_CSV)))
    _require(source)
    normalize = _resolve(ns, cfg, "normalize", _parse_bool, True)
    with open(source, encoding="utf-8", newline="") as fh:
        parsed = ingest.parse_csv(fh)
    ds, exclusions = ingest.build_days(parsed.records, parsed.variable_names)
    if normalize:
        ds = ingest.normalize(ds)
    save_dataset(ds, out / DATASET_FILE)
    ingest.save_exclusions(exclusions, out / EXCLUSIONS_FILE)
    _announce([out / DATASET_FILE, out / EXCLUSIONS_FILE])
    if parsed.row_errors:
        print(f"skipped {len(parsed.row_errors)} malformed rows", file=sys.stderr)
    return 0


def cmd_distances(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    ds = load_dataset(_require(out / DATASET_FILE))
    weights = _resolve(ns, cfg, "weights", _parse_weights)
    window = _resolve(ns, cfg, "window", int)
    dm = distance_matrix(ds, weights=weights, window=window)
    save_distance_matrix(dm, out / DISTANCES_FILE)
    _announce([out / DISTANCES_FILE])
    return 0


def _load_matching_model(out: Path, ds):
    model, dates = clustering.load_model(_require(out / MODEL_FILE))
    if dates != ds.dates:
        raise ConfigError("model dates do not match the dataset")
    return model


def cmd_cluster(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    method = _canonical_method(
        _resolve(ns, cfg, "method", str), _resolve(ns, cfg, "linkage", str)
    )
    k = _resolve(ns, cfg, "k", int)
    if k is None:
        raise ConfigError("--k is required for clustering")
    ds = load_dataset(_require(out / DATASET_FILE))
    if method == "kmeans":
        seed = _resolve(ns, cfg, "seed", int, 0)
        restarts = _resolve(ns, cfg, "restarts", int, clustering.DEFAULT_RESTARTS)
        model = clustering.kmeans(ds, k, seed=seed, restarts=restarts)
    else:
        dm = load_distance_matrix(_require(out / DISTANCES_FILE))
        if dm.dates is not None and dm.dates != ds.dates:
            raise ConfigError("distance matrix dates do not match the dataset")
        history = clustering.ahc(dm, method.removeprefix("ahc-"))
        model = clustering.cut(history, k, ds)
    clustering.save_model(model, ds.dates, out / MODEL_FILE)
    _announce([out / MODEL_FILE])
    return 0


def cmd_metrics(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    ds = load_dataset(_require(out / DATASET_FILE))
    model = _load_matching_model(out, ds)
    weights = _resolve(ns, cfg, "weights", _parse_weights)
    window = _resolve(ns, cfg, "window", int)
    rep = metrics.evaluate(ds, model, weights=weights, window=window)
    metrics.report_to_json(rep, out / METRICS_JSON)
    header = "method,K,SS,CS,CH,DB,silhouette"
    row = ",".join(
        [rep.method, str(rep.K)]
        + [repr(float(v)) for v in (rep.ss, rep.cs, rep.ch, rep.db, rep.silhouette)]
    )
    (out / METRICS_CSV).write_text(header + "\n" + row + "\n", encoding="utf-8")
    _announce([out / METRICS_JSON, out / METRICS_CSV])
    return 0


def cmd_sweep(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    ds = load_dataset(_require(out / DATASET_FILE))
    dm = load_distance_matrix(_require(out / DISTANCES_FILE))
    method = _resolve(ns, cfg, "method", str)
    if method is None:
        methods = clustering.METHODS
    else:
        methods = (_canonical_method(method, _resolve(ns, cfg, "linkage", str)),)
    k_range = _resolve(ns, cfg, "k-range", _parse_k_range, (2, 20))
    seed = _resolve(ns, cfg, "seed", int, 0)
    restarts = _resolve(ns, cfg, "restarts", int, clustering.DEFAULT_RESTARTS)
    weights = _resolve(ns, cfg, "weights", _parse_weights)
    window = _resolve(ns, cfg, "window", int)
    ms = metrics.sweep(
        ds, dm, methods, k_range, seed=seed, restarts=restarts, weights=weights, window=window
    )
    metrics.sweep_to_csv(ms, out / SWEEP_CSV)
    metrics.sweep_to_json(ms, out / SWEEP_JSON)
    _announce([out / SWEEP_CSV, out / SWEEP_JSON])
    return 0


def cmd_report(ns, cfg) -> int:
    out = _out_dir(ns, cfg)
    ds = load_dataset(_require(out / DATASET_FILE))
    model = _load_matching_model(out, ds)
    representative = _resolve(ns, cfg, "representative", str, "centroid")
    denormalize = _resolve(ns, cfg, "denormalize", _parse_bool, False)
    dm = None
    if representative == "medoid":
        dm = load_distance_matrix(_require(out / DISTANCES_FILE))
    rep = report.build_report(
        model, ds, dm=dm, representative=representative, denormalize=denormalize
    )
    paths = report.write_report_files(rep, out, ds)
    _announce(paths)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="repdays", description="Representative-day scenario toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--out", help="output directory (default: current directory)")
        p.add_argument("--seed", type=int, help="PRNG seed; all randomness flows from it")
        return p

    p = add("synth", cmd_synth, "generate a seeded synthetic dataset")
    p.add_argument("--days", type=int, help="number of days (default 730)")
    p.add_argument("--wind", action="store_true", default=None, help="include a wind variable")
    p.add_argument("--start", type=_parse_date, help="first calendar date (ISO)")

    p = add("ingest", cmd_ingest, "parse hourly CSV into complete normalized days")
    p.add_argument("--input", help="CSV path (default: <out>/synthetic.csv)")
    p.add_argument(
        "--no-normalize", dest="normalize", action="store_false", default=None,
        help="keep raw units instead of global min-max scaling",
    )

    p = add("distances", cmd_distances, "compute the pairwise DTW distance matrix")
    p.add_argument("--weights", type=_parse_weights, help="per-variable weights v1,v2,...")
    p.add_argument("--window", type=int, help="warping band half-width")

    p = add("cluster", cmd_cluster, "fit one clustering model at a fixed K")
    p.add_argument("--method", help="kmeans, ahc, ahc-complete, or ahc-average")
    p.add_argument("--linkage", choices=("complete", "average"), help="ahc linkage")
    p.add_argument("--k", type=int, help="number of clusters")
    p.add_argument("--restarts", type=int, help="kmeans restarts (default 8)")

    p = add("metrics", cmd_metrics, "validation metrics for the fitted model")
    p.add_argument("--weights", type=_parse_weights, help="per-variable weights v1,v2,...")
    p.add_argument("--window", type=int, help="warping band half-width")

    p = add("sweep", cmd_sweep, "metrics for every method over a K range")
    p.add_argument("--method", help="restrict to one method (default: all three)")
    p.add_argument("--linkage", choices=("complete", "average"))
    p.add_argument("--k-range", type=_parse_k_range, help="K range a..b (default 2..20)")
    p.add_argument("--restarts", type=int, help="kmeans restarts (default 8)")
    p.add_argument("--weights", type=_parse_weights, help="per-variable weights v1,v2,...")
    p.add_argument("--window", type=int, help="warping band half-width")

    p = add("report", cmd_report, "emit JSON/CSV/SVG scenario report")
    p.add_argument("--representative", choices=("centroid", "medoid"))
    p.add_argument(
        "--denormalize", action="store_true", default=None,
        help="report representative profiles in raw units",
    )
    return parser


def _fail(payload: dict, code: int) -> int:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = read_config(ns.config) if ns.config else {}
        return ns.func(ns, cfg)
    except MissingArtifactError as exc:
        return _fail({"error": str(exc), "file": str(exc.path)}, 2)
    except (ConfigError, FormatError, ValueError) as exc:
        return _fail({"error": str(exc)}, 1)


if __name__ == "__main__":
    sys.exit(main())
