"""Command-line entry point: run a configured experiment and write CSV results.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import warnings
from dataclasses import replace
from importlib import resources
from pathlib import Path

from .config import RunConfig, build_environment, build_policies, load_config
from .exceptions import ConfigError
from .simkit import ExperimentResult, ExperimentSpec, run_experiment

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3
BUNDLED = ("paper6.cfg",)

logger = logging.getLogger("comomab")


def bundled_config(name: str = "paper6.cfg") -> Path:
    return Path(str(resources.files("comomab") / "data" / name))


def _resolve_config(path: str) -> Path:
    p = Path(path)
    if not p.exists() and p.name in BUNDLED and p.parent == Path("."):
        return bundled_config(p.name)
    return p


def _fmt(x) -> str:
    return f"{float(x):.9g}"


def write_results(result: ExperimentResult, out_dir, emit_plots: bool = False) -> list:
    """Write regret, front-fraction and fairness CSVs plus a summary.

    Rows are sorted by (policy id, t); floats carry 9 significant digits.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_id = sorted(result.policies.items())
    written = []

    def table(name, header, rows):
        path = out / name
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        written.append(path)

    table(
        "regret.csv",
        ["t", "policy", "mean_regret", "std_regret"],
        [
            [int(t), pid, _fmt(m), _fmt(s)]
            for pid, r in by_id
            for t, m, s in zip(r.checkpoints, r.mean_regret, r.std_regret)
        ],
    )
    table(
        "spf_fraction.csv",
        ["t", "policy", "mean_fraction", "std_fraction"],
        [
            [int(t), pid, _fmt(m), _fmt(s)]
            for pid, r in by_id
            for t, m, s in zip(r.checkpoints, r.mean_fraction, r.std_fraction)
        ],
    )
    fair_rows = []
    for pid, r in by_id:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            profile = r.fairness
        fair_rows += [[pid, k, _fmt(v)] for k, v in profile.items()]
    table("fairness.csv", ["policy", "spf_action_index", "fraction"], fair_rows)

    spec = result.spec
    aset = spec.env.action_set
    gaps = result.gaps
    lines = [
        f"horizon: {spec.horizon}",
        f"runs: {spec.runs}",
        f"seed: {spec.seed}",
        f"n_actions: {len(aset)}",
        f"n_arms: {aset.n_arms}",
        f"L: {aset.L}",
        f"D: {aset.dimension}",
        f"a_max: {_fmt(aset.a_max)}",
        f"spf_size: {len(gaps.spf_indices)}",
        f"pareto_front_size: {len(gaps.pareto_indices)}",
        f"spf_indices: {' '.join(str(i) for i in sorted(gaps.spf_indices))}",
        f"delta_min: {_fmt(gaps.delta_min)}",
        f"delta_max: {_fmt(gaps.delta_max)}",
        f"theorem1_bound: {_fmt(result.bound())}",
    ]
    for pid, r in by_id:
        lines.append(
            f"policy {pid}: final_mean_regret={_fmt(r.mean_regret[-1])} "
            f"final_mean_fraction={_fmt(r.mean_fraction[-1])}"
        )
    path = out / "summary.txt"
    path.write_text("\n".join(lines) + "\n")
    written.append(path)

    if emit_plots:
        path = out / "plots.gp"
        path.write_text(_gnuplot_script([pid for pid, _ in by_id]))
        written.append(path)
    return written


def _gnuplot_script(policy_ids) -> str:
    def series(col):
        return ", \\\n     ".join(
            f"'< grep \",{pid},\" {{f}}' using 1:{col} with lines title '{pid}'" for pid in policy_ids
        )

    return "\n".join(
        [
            "set datafile separator ','",
            "set terminal pngcairo size 900,600",
            "set key left top",
            "set output 'regret.png'",
            "set xlabel 't'; set ylabel 'Pareto regret'",
            "plot " + series(3).format(f="regret.csv"),
            "set output 'spf_fraction.png'",
            "set ylabel 'fraction of front selections'",
            "plot " + series(3).format(f="spf_fraction.csv"),
            "",
        ]
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="comomab", description=__doc__.splitlines()[0])
    p.add_argument("--config", required=True, help="experiment config file (or bundled paper6.cfg)")
    p.add_argument("--out-dir", default="./out")
    p.add_argument("--seed", type=int, help="override [experiment] seed")
    p.add_argument("--runs", type=int, help="override [experiment] runs")
    p.add_argument("--horizon", type=int, help="override [experiment] horizon")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--emit-plots", action="store_true", help="also write a gnuplot script")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    changes = {}
    for key in ("seed", "runs", "horizon"):
        val = getattr(args, key)
        if val is not None:
            if val < (0 if key == "seed" else 1):
                raise ConfigError(f"--{key}: out of range ({val})")
            changes[key] = val
    return replace(cfg, **changes)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.workers < 1:
            raise ConfigError(f"--workers: must be >= 1, got {args.workers}")
        cfg = _apply_overrides(load_config(_resolve_config(args.config)), args)
        spec = ExperimentSpec(
            env=build_environment(cfg),
            policies=build_policies(cfg),
            horizon=cfg.horizon,
            runs=cfg.runs,
            seed=cfg.seed,
            stride=cfg.checkpoint_stride,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    sys.stdout.write(cfg.to_ini())
    sys.stdout.flush()
    try:
        result = run_experiment(spec, workers=args.workers)
        write_results(result, args.out_dir, emit_plots=args.emit_plots)
    except OSError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - any failure mid-run maps to exit 3
        logger.debug("run failed", exc_info=True)
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
