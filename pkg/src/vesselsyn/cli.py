"""Command-line interface: compress, eval, compare and tune.

Exit codes: 0 on success, 2 for usage or configuration problems (bad flags,
missing files, malformed config, unknown vessel type), 1 for runtime
failures.  All numeric output is written with fixed 6-decimal formatting so
repeated runs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .evaluation import Metrics, compute_metrics, evaluate_config
from .ga import GaHyperParams, cross_validate
from .ingest import ParseReport, VesselTrack, load_records, partition_tracks
from .noise import NoiseFilterConfig, filter_dataset
from .presets import FITNESS_PRESETS
from .synopses import CriticalPoint, SynopsisConfig, compress_track, write_synopsis_csv


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _round6(value: float) -> float:
    return round(float(value), 6)


def _config_dict(cfg: SynopsisConfig) -> dict:
    return {
        key: (value if key == "buffer_size" else _round6(value))
        for key, value in cfg.to_dict().items()
    }


def _metrics_dict(metrics: Metrics) -> dict:
    return {
        "rmse_m": _round6(metrics.rmse_m),
        "ratio": _round6(metrics.ratio),
        "noiseless_count": metrics.noiseless_count,
        "critical_count": metrics.critical_count,
    }


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_config(path: str | None) -> SynopsisConfig:
    if path is None:
        return SynopsisConfig()
    if not os.path.exists(path):
        raise CliError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise CliError(f"config file {path} must hold a JSON object")
    try:
        return SynopsisConfig.from_dict(data)
    except ValueError as exc:
        raise CliError(f"config file {path}: {exc}")


def _load_dataset(args: argparse.Namespace) -> tuple[list[VesselTrack], ParseReport, int]:
    if not os.path.exists(args.input):
        raise CliError(f"input file not found: {args.input}")
    records, report = load_records(args.input, has_header=args.header)
    if report.rejected_count:
        print(f"note: rejected {report.rejected_count} malformed input rows", file=sys.stderr)
    tracks = partition_tracks(records)
    noise_cfg = NoiseFilterConfig.disabled() if args.no_noise_filter else NoiseFilterConfig()
    clean, dropped = filter_dataset(tracks, noise_cfg)
    if dropped:
        print(f"note: noise filter dropped {dropped} reports", file=sys.stderr)
    if not clean:
        raise CliError("no usable reports in input", code=1)
    return clean, report, dropped


def _compress_all(tracks: Sequence[VesselTrack], cfg: SynopsisConfig) -> tuple[dict[int, list[CriticalPoint]], list[CriticalPoint]]:
    synopses = {t.mmsi: compress_track(t, cfg) for t in tracks}
    flat: list[CriticalPoint] = []
    for mmsi in sorted(synopses):
        flat.extend(synopses[mmsi])
    return synopses, flat


def cmd_compress(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    clean, report, dropped = _load_dataset(args)
    synopses, flat = _compress_all(clean, cfg)
    metrics = compute_metrics(clean, synopses)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "synopsis.csv"), "w", encoding="utf-8") as fh:
        write_synopsis_csv(flat, fh)
    _write_json(
        os.path.join(args.out, "metrics.json"),
        {
            "input": args.input,
            "config": _config_dict(cfg),
            **_metrics_dict(metrics),
            "rows_rejected_parse": report.rejected_count,
            "reports_rejected_filter": dropped,
        },
    )
    print(
        f"compressed {metrics.noiseless_count} reports to {metrics.critical_count} critical points "
        f"(ratio {metrics.ratio:.6f}, rmse {metrics.rmse_m:.6f} m)"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    clean, _, _ = _load_dataset(args)
    metrics = evaluate_config(clean, cfg)
    print(json.dumps({"config": _config_dict(cfg), **_metrics_dict(metrics)}, indent=2, sort_keys=True))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg_a = _load_config(args.config_a)
    cfg_b = _load_config(args.config_b)
    clean, _, _ = _load_dataset(args)
    metrics_a = evaluate_config(clean, cfg_a)
    metrics_b = evaluate_config(clean, cfg_b)
    os.makedirs(args.out, exist_ok=True)
    _write_json(
        os.path.join(args.out, "comparison.json"),
        {
            "input": args.input,
            "a": {"config": _config_dict(cfg_a), **_metrics_dict(metrics_a)},
            "b": {"config": _config_dict(cfg_b), **_metrics_dict(metrics_b)},
        },
    )
    with open(os.path.join(args.out, "plot.csv"), "w", encoding="utf-8") as fh:
        fh.write("config,metric,value\n")
        for label, metrics in (("a", metrics_a), ("b", metrics_b)):
            fh.write(f"{label},rmse_m,{metrics.rmse_m:.6f}\n")
            fh.write(f"{label},ratio,{metrics.ratio:.6f}\n")
    print(
        f"a: rmse {metrics_a.rmse_m:.6f} m ratio {metrics_a.ratio:.6f} | "
        f"b: rmse {metrics_b.rmse_m:.6f} m ratio {metrics_b.ratio:.6f}"
    )
    return 0


def _resolve_scoring(args: argparse.Namespace) -> tuple[str | None, float, float]:
    explicit = args.r is not None or args.n is not None
    if args.preset and explicit:
        raise CliError("pass either --preset or --r/--n, not both")
    if explicit:
        if args.r is None or args.n is None:
            raise CliError("--r and --n must be given together")
        return None, args.r, args.n
    preset_name = args.preset or args.type
    preset = FITNESS_PRESETS.get(preset_name)
    if preset is None:
        known = ", ".join(sorted(FITNESS_PRESETS))
        raise CliError(
            f"no scoring preset named {preset_name!r} (known: {known}); "
            "pick one with --preset or give --r and --n explicitly"
        )
    return preset.name, preset.r, preset.n


def cmd_tune(args: argparse.Namespace) -> int:
    clean, _, _ = _load_dataset(args)
    wanted = args.type.lower()
    selected = [t for t in clean if t.vessel_type == wanted]
    if not selected:
        available = ", ".join(sorted({t.vessel_type for t in clean})) or "none"
        raise CliError(f"no tracks of vessel type {wanted!r} in input (available: {available})")
    preset_name, r, n = _resolve_scoring(args)
    hp = GaHyperParams(
        r=r,
        n=n,
        population_size=args.population,
        max_generations=args.generations,
        stagnation_limit=args.stagnation,
        rng_seed=args.seed,
    )
    try:
        result = cross_validate(selected, args.k, hp)
    except ValueError as exc:
        raise CliError(str(exc))

    os.makedirs(args.out, exist_ok=True)
    _write_json(
        os.path.join(args.out, "manifest.json"),
        {
            "command": "tune",
            "input": args.input,
            "vessel_type": wanted,
            "preset": preset_name,
            "r": _round6(r),
            "n": _round6(n),
            "k": args.k,
            "seed": args.seed,
            "population_size": args.population,
            "max_generations": args.generations,
            "stagnation_limit": args.stagnation,
            "noise_filter": not args.no_noise_filter,
            "out": args.out,
        },
    )
    for fold in result.folds:
        fold_dir = os.path.join(args.out, f"fold_{fold.index}")
        os.makedirs(fold_dir, exist_ok=True)
        _write_json(os.path.join(fold_dir, "best_config.json"), _config_dict(fold.config))
        _write_json(
            os.path.join(fold_dir, "report.json"),
            {
                "fold": fold.index,
                "train_mmsis": sorted(fold.train_mmsis),
                "test_mmsis": sorted(fold.test_mmsis),
                "train_fitness": _round6(fold.train_fitness),
                "test_rmse_m": _round6(fold.test_metrics.rmse_m),
                "test_ratio": _round6(fold.test_metrics.ratio),
                "test_score": _round6(fold.test_score),
            },
        )
        with open(os.path.join(fold_dir, "history.csv"), "w", encoding="utf-8") as fh:
            fh.write("generation,best_fitness,mean_fitness,best_rmse,best_ratio\n")
            for row in fold.history:
                fh.write(
                    f"{row.generation},{row.best_fitness:.6f},{row.mean_fitness:.6f},"
                    f"{row.best_rmse:.6f},{row.best_ratio:.6f}\n"
                )
    _write_json(
        os.path.join(args.out, "summary.json"),
        {
            "chosen_fold": result.chosen_index,
            "config": _config_dict(result.chosen.config),
            "folds": [
                {
                    "fold": fold.index,
                    "test_score": _round6(fold.test_score),
                    "test_rmse_m": _round6(fold.test_metrics.rmse_m),
                    "test_ratio": _round6(fold.test_metrics.ratio),
                }
                for fold in result.folds
            ],
        },
    )
    chosen = result.chosen
    print(
        f"tuned {wanted} over {args.k} folds: fold {chosen.index} wins "
        f"(test score {chosen.test_score:.6f}, rmse {chosen.test_metrics.rmse_m:.6f} m, "
        f"ratio {chosen.test_metrics.ratio:.6f})"
    )
    return 0


def _add_common_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="delimited AIS input file")
    parser.add_argument("--header", action="store_true", help="input starts with a header row")
    parser.add_argument(
        "--no-noise-filter", action="store_true", help="skip implausible-report rejection"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vesselsyn",
        description="Compress vessel position streams into annotated critical points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="write the synopsis and its quality metrics")
    _add_common_io(p)
    p.add_argument("--config", help="JSON detection config (defaults when omitted)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("eval", help="print quality metrics for a config")
    _add_common_io(p)
    p.add_argument("--config", help="JSON detection config (defaults when omitted)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="evaluate two configs on the same data")
    _add_common_io(p)
    p.add_argument("--config-a", required=True, help="first JSON detection config")
    p.add_argument("--config-b", required=True, help="second JSON detection config")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("tune", help="evolve a config for one vessel type with k-fold validation")
    _add_common_io(p)
    p.add_argument("--type", required=True, help="vessel type to tune for")
    p.add_argument("--preset", help="scoring preset name (defaults to the vessel type's)")
    p.add_argument("--r", type=float, help="scoring offset in metres")
    p.add_argument("--n", type=float, help="scoring exponent")
    p.add_argument("--k", type=int, default=6, help="number of folds (default 6)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--population", type=int, default=50, help="GA population size")
    p.add_argument("--generations", type=int, default=30, help="GA generation count")
    p.add_argument("--stagnation", type=int, default=10, help="early-stop patience")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_tune)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
