"""Command-line driver for reproducible experiments and theory reports.

Commands: ``run`` (one batch per policy on one instance), ``gap-sweep`` and
``crowd-sweep`` (the two synthetic-family sweeps, both policies), ``lower-bound``
(width-guided runs on the duplicated-coordinate family), and ``analyze``
(instance geometry and closed-form quantities, no simulation).

Settings resolve as defaults < config file (YAML/JSON) < command-line flags.
Exit codes: 0 on success, 2 for configuration errors, 3 for runtime contract
violations.  Output CSVs are byte-identical across reruns with the same
configuration, including under different parallelism degrees.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np
import yaml

from .environments import duplicated_bernoulli, instance_from_dict, synthetic_family
from .pareto import analyze, cpucb_coefficient, lower_bound_constant, theorem1_bound
from .policies import POLICIES
from .simulation import batch

GAP_SWEEP_DELTAS = (0.12, 0.08, 0.04, 0.02, 0.01)
CROWD_SWEEP_SIZES = (4, 8, 12)
CROWD_SWEEP_DELTA = 0.02
LOWER_BOUND_GAPS = (0.25, 0.125, 0.0625)

DEFAULTS = {
    "horizon": 10_000,
    "runs": 10,
    "seed": 12345,
    "parallelism": 1,
    "diagnostics": False,
    "trajectories": False,
    "policy": ["wgfc", "pareto-ucb1"],
}

SUMMARY_HEADER = [
    "instance_label", "policy", "T", "runs", "regret_mean", "regret_std",
    "cert_rate", "mean_cert_round", "lemma1_violations", "lemma2_violations",
    "lemma3_violations", "omega_holds_rate",
]
SWEEP_HEADER = [
    "delta", "m", "C_PUCB", "pucb_mean", "pucb_std", "wgfc_mean", "wgfc_std", "cert_rate",
]
TRAJECTORY_HEADER = ["round", "mean_cum_regret_wgfc", "mean_cum_regret_pucb", "cert_fraction"]
LOWER_BOUND_HEADER = [
    "delta_sc", "regret_mean", "regret_over_logT", "lower_bound_constant", "theorem1_bound",
]


class ConfigError(Exception):
    pass


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _summary_row(summary) -> list:
    diag = summary.diagnostics
    return [
        summary.instance_label, summary.policy, summary.horizon, summary.runs,
        summary.regret_mean, summary.regret_std, summary.certification_rate,
        summary.mean_certification_round,
        diag.certified_wrong_winner if diag else None,
        diag.gap_exceeds_width if diag else None,
        diag.width_floor_broken if diag else None,
        summary.confidence_event_rate,
    ]


def _cert_fraction(summary) -> np.ndarray:
    frac = np.zeros(summary.horizon)
    for cr in summary.certification_rounds:
        if cr is not None:
            frac[cr - 1 :] += 1.0
    return frac / summary.runs


def _load_config_file(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    return data


def _resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file, and flags; build all instances eagerly."""
    file_cfg = _load_config_file(getattr(args, "config", None))
    cfg: dict = dict(DEFAULTS)
    cfg.update({k: v for k, v in file_cfg.items() if v is not None})
    for key in ("horizon", "runs", "seed", "parallelism", "diagnostics", "trajectories", "out"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value

    if cfg["runs"] < 1:
        raise ConfigError(f"runs must be positive, got {cfg['runs']}")
    if cfg["horizon"] < 1:
        raise ConfigError(f"horizon must be positive, got {cfg['horizon']}")
    if cfg["seed"] < 0:
        raise ConfigError(f"seed must be nonnegative, got {cfg['seed']}")
    if cfg["parallelism"] < 1:
        raise ConfigError(f"parallelism must be positive, got {cfg['parallelism']}")

    policy = getattr(args, "policy", None) or cfg.get("policy", DEFAULTS["policy"])
    if isinstance(policy, str):
        policy = [name.strip() for name in policy.split(",") if name.strip()]
    for name in policy:
        if name not in POLICIES:
            raise ConfigError(f"unknown policy {name!r}, expected one of {sorted(POLICIES)}")
    cfg["policy"] = list(policy)

    out = cfg.get("out") or os.environ.get("MOMAB_OUT_DIR") or "results"
    out_dir = Path(out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir}: {exc}") from exc
    if not os.access(out_dir, os.W_OK):
        raise ConfigError(f"output directory {out_dir} is not writable")
    cfg["out"] = out_dir

    family = dict(file_cfg.get("family", {}))
    cfg["family_arms"] = int(family.get("K", 20))
    cfg["family_objectives"] = int(family.get("d", 2))
    cfg["family_params"] = {
        key: float(family[key]) for key in ("p", "g", "eta", "u") if key in family
    }
    cfg["deltas"] = [float(x) for x in file_cfg.get("deltas", GAP_SWEEP_DELTAS)]
    cfg["crowd_sizes"] = [int(x) for x in file_cfg.get("crowd_sizes", CROWD_SWEEP_SIZES)]
    cfg["crowd_delta"] = float(file_cfg.get("crowd_delta", CROWD_SWEEP_DELTA))
    cfg["scalar_gaps"] = [float(x) for x in file_cfg.get("scalar_gaps", LOWER_BOUND_GAPS)]

    try:
        if args.command in ("run", "analyze"):
            cfg["instance"] = _resolve_instance(args, file_cfg, cfg)
        elif args.command == "gap-sweep":
            cfg["sweep"] = [
                (delta, 1, _family_instance(cfg, delta, 1)) for delta in cfg["deltas"]
            ]
        elif args.command == "crowd-sweep":
            cfg["sweep"] = [
                (cfg["crowd_delta"], m, _family_instance(cfg, cfg["crowd_delta"], m))
                for m in cfg["crowd_sizes"]
            ]
        elif args.command == "lower-bound":
            cfg["lower_bound"] = [
                (gap, duplicated_bernoulli(cfg["family_arms"], cfg["family_objectives"], gap))
                for gap in cfg["scalar_gaps"]
            ]
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid instance configuration: {exc}") from exc
    return cfg


def _family_instance(cfg: dict, delta: float, m: int):
    return synthetic_family(delta, m, cfg["family_arms"], **cfg["family_params"])


def _resolve_instance(args, file_cfg: dict, cfg: dict):
    spec = dict(file_cfg.get("instance", {}))
    for key in ("family", "delta", "m", "delta_sc"):
        value = getattr(args, key, None)
        if value is not None:
            spec[key] = value
    if getattr(args, "arms", None) is not None:
        spec["K"] = args.arms
    if getattr(args, "objectives", None) is not None:
        spec["d"] = args.objectives
    if "means" not in spec:
        spec.setdefault("family", "synthetic")
        if spec["family"] == "synthetic":
            spec.setdefault("delta", 0.12)
            spec.setdefault("m", 1)
        elif spec["family"] == "duplicated":
            spec.setdefault("delta_sc", 0.25)
    return instance_from_dict(spec)


def cmd_run(cfg: dict) -> int:
    instance = cfg["instance"]
    summaries = {}
    for name in cfg["policy"]:
        summaries[name] = batch(
            instance, name, cfg["horizon"], cfg["runs"], cfg["seed"],
            parallelism=cfg["parallelism"], diagnostics=cfg["diagnostics"],
        )
    _write_csv(cfg["out"] / "summary.csv", SUMMARY_HEADER,
               [_summary_row(summaries[name]) for name in cfg["policy"]])
    if cfg["trajectories"]:
        wgfc = summaries.get("wgfc")
        pucb = summaries.get("pareto-ucb1")
        horizon = cfg["horizon"]
        frac = _cert_fraction(wgfc) if wgfc else [None] * horizon
        rows = [
            [
                t + 1,
                wgfc.mean_trajectory[t] if wgfc else None,
                pucb.mean_trajectory[t] if pucb else None,
                frac[t],
            ]
            for t in range(horizon)
        ]
        _write_csv(cfg["out"] / "trajectory.csv", TRAJECTORY_HEADER, rows)
    for name in cfg["policy"]:
        s = summaries[name]
        print(
            f"{s.instance_label} {name}: regret {s.regret_mean:.2f} +/- {s.regret_std:.2f}, "
            f"cert rate {100.0 * s.certification_rate:.1f}%"
        )
    return 0


def _sweep(cfg: dict, csv_name: str, fig_name: str, x_name: str) -> int:
    rows = []
    fig_rows = []
    for delta, m, instance in cfg["sweep"]:
        stats = analyze(instance.means)
        coeff = cpucb_coefficient(stats, instance.n_arms, instance.n_objectives, cfg["horizon"])
        wgfc = batch(instance, "wgfc", cfg["horizon"], cfg["runs"], cfg["seed"],
                     parallelism=cfg["parallelism"], diagnostics=cfg["diagnostics"])
        pucb = batch(instance, "pareto-ucb1", cfg["horizon"], cfg["runs"], cfg["seed"],
                     parallelism=cfg["parallelism"], diagnostics=cfg["diagnostics"])
        rows.append([
            delta, m, coeff.value, pucb.regret_mean, pucb.regret_std,
            wgfc.regret_mean, wgfc.regret_std, wgfc.certification_rate,
        ])
        x = delta if x_name == "delta" else m
        fig_rows.append([x, coeff.value, pucb.regret_mean, wgfc.regret_mean])
        print(
            f"delta={delta:g} m={m}: C_PUCB={coeff.value:.2f} "
            f"pucb={pucb.regret_mean:.2f}+/-{pucb.regret_std:.2f} "
            f"wgfc={wgfc.regret_mean:.2f}+/-{wgfc.regret_std:.2f} "
            f"cert={100.0 * wgfc.certification_rate:.1f}%"
        )
    _write_csv(cfg["out"] / csv_name, SWEEP_HEADER, rows)
    _write_csv(cfg["out"] / fig_name, [x_name, "c_pucb", "pucb_regret", "wgfc_regret"], fig_rows)
    return 0


def cmd_gap_sweep(cfg: dict) -> int:
    return _sweep(cfg, "gap_sweep.csv", "fig1_gap.csv", "delta")


def cmd_crowd_sweep(cfg: dict) -> int:
    return _sweep(cfg, "crowd_sweep.csv", "fig1_crowd.csv", "m")


def cmd_lower_bound(cfg: dict) -> int:
    rows = []
    for gap, instance in cfg["lower_bound"]:
        stats = analyze(instance.means)
        summary = batch(instance, "wgfc", cfg["horizon"], cfg["runs"], cfg["seed"],
                        parallelism=cfg["parallelism"], diagnostics=cfg["diagnostics"])
        rows.append([
            gap,
            summary.regret_mean,
            summary.regret_mean / math.log(cfg["horizon"]),
            lower_bound_constant(instance.n_arms, gap),
            theorem1_bound(stats, instance.n_arms, instance.n_objectives, cfg["horizon"]),
        ])
        print(f"delta_sc={gap:g}: regret {summary.regret_mean:.2f}, "
              f"floor {lower_bound_constant(instance.n_arms, gap):.2f} per log-round")
    _write_csv(cfg["out"] / "lower_bound.csv", LOWER_BOUND_HEADER, rows)
    return 0


def cmd_analyze(cfg: dict) -> int:
    instance = cfg["instance"]
    stats = analyze(instance.means)
    lines = [
        f"instance: {instance.label}",
        f"arms: {instance.n_arms}  objectives: {instance.n_objectives}  "
        f"reward model: {instance.reward_model}",
        f"pareto set: {list(stats.pareto_set)}",
        f"pareto gaps: {[round(float(g), 6) for g in stats.pareto_gaps]}",
        f"delta_max: {stats.delta_max:.6g}  delta_min: "
        + (f"{stats.delta_min:.6g}" if stats.delta_min is not None else "n/a (all arms Pareto-optimal)"),
        f"objective gaps: {[round(float(g), 6) for g in stats.objective_gaps]}",
        f"objective winners: {list(stats.objective_winners)}",
        f"unique winners: {stats.unique_winners}",
    ]
    report = {
        "label": instance.label,
        "pareto_set": list(stats.pareto_set),
        "pareto_gaps": [float(g) for g in stats.pareto_gaps],
        "delta_max": stats.delta_max,
        "delta_min": stats.delta_min,
        "objective_gaps": [float(g) for g in stats.objective_gaps],
        "objective_winners": list(stats.objective_winners),
        "unique_winners": stats.unique_winners,
    }
    if stats.unique_winners:
        coeff = cpucb_coefficient(stats, instance.n_arms, instance.n_objectives, cfg["horizon"])
        bound = theorem1_bound(stats, instance.n_arms, instance.n_objectives, cfg["horizon"])
        lines += [
            f"champion objective: {stats.champion_objective}  champion gap: {stats.champion_gap:.6g}",
            f"regret ceiling at T={cfg['horizon']}: {bound:.6g}",
            f"pareto-ucb1 coefficient at T={cfg['horizon']}: {coeff.value:.6g}"
            + (" (empty dominated set)" if coeff.empty_front_complement else "")
            + f"  exceeds 64: {coeff.exceeds_width_guided_constant}",
        ]
        report.update({
            "champion_objective": stats.champion_objective,
            "champion_gap": stats.champion_gap,
            "theorem1_bound": bound,
            "cpucb_coefficient": coeff.value,
            "cpucb_exceeds_64": coeff.exceeds_width_guided_constant,
        })
    else:
        lines.append("champion-gap quantities suppressed: objectives lack unique winners")
    print("\n".join(lines))
    (cfg["out"] / "analysis.json").write_text(json.dumps(report, indent=2) + "\n")
    return 0


_COMMANDS = {
    "run": cmd_run,
    "gap-sweep": cmd_gap_sweep,
    "crowd-sweep": cmd_crowd_sweep,
    "lower-bound": cmd_lower_bound,
    "analyze": cmd_analyze,
}


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", type=Path, help="YAML/JSON config file")
    sp.add_argument("--seed", type=int, help="base seed for run-seed derivation")
    sp.add_argument("--runs", type=int, help="independent runs per batch")
    sp.add_argument("--horizon", type=int, help="rounds per run")
    sp.add_argument("--out", type=Path, help="output directory (default $MOMAB_OUT_DIR or ./results)")
    sp.add_argument("--diagnostics", action="store_true", default=None,
                    help="enable online confidence/certification checks")
    sp.add_argument("--parallelism", type=int, help="worker processes for batches")


def _add_instance_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--family", choices=["synthetic", "duplicated"])
    sp.add_argument("--delta", type=float, help="synthetic-family crowd gap")
    sp.add_argument("--m", type=int, help="synthetic-family crowd size")
    sp.add_argument("--arms", type=int, help="number of arms")
    sp.add_argument("--objectives", type=int, help="number of objectives (duplicated family)")
    sp.add_argument("--delta-sc", dest="delta_sc", type=float, help="duplicated-family scalar gap")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momab",
        description="Multi-objective bandit experiments with seed-reproducible CSV artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run", help="one batch per policy on one instance")
    _add_common(sp)
    _add_instance_flags(sp)
    sp.add_argument("--policy", help="comma-separated policy names (wgfc, pareto-ucb1)")
    sp.add_argument("--trajectories", action="store_true", default=None,
                    help="also write the per-round trajectory CSV")

    sp = sub.add_parser("gap-sweep", help="vary the crowd gap with one crowd arm, both policies")
    _add_common(sp)

    sp = sub.add_parser("crowd-sweep", help="vary the crowd size at a fixed gap, both policies")
    _add_common(sp)

    sp = sub.add_parser("lower-bound", help="width-guided runs on the duplicated-coordinate family")
    _add_common(sp)

    sp = sub.add_parser("analyze", help="instance geometry and closed-form quantities")
    _add_common(sp)
    _add_instance_flags(sp)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _resolve(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
