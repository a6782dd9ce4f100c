"""Command-line front end: run experiments, list presets, verify the build.

Exit codes: 0 success, 1 validation/config failure, 2 I/O failure,
3 acceptance criterion failure (verify).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import yaml

from . import __version__
from .acceptance import AcceptanceSettings, FAST_SETTINGS, determinism_table, run_acceptance
from .config import apply_scenario_override, apply_sweep_override, load_config
from .engine import run_sweep
from .errors import ConfigError, SimulationError, ValidationError
from .presets import PRESET_NAMES, load_preset, preset_is_pristine, resolve_scenario_ref
from .scenario import AnPartitionDesign, PracticalAmplitude, PrenullDesign, validate

OUTDIR_ENV = "RIS_SECRECY_OUTDIR"

# Convenience aliases for --set so common knobs don't need full paths.
_SET_ALIASES = {
    "gamma": "radio.gamma",
    "tx_power_dbm": "radio.tx_power_dbm",
    "noise_power_dbm": "radio.noise_power_dbm",
    "n_elements": "ris.n_elements",
    "quantization_bits": "ris.quantization_bits",
    "b": "ris.quantization_bits",
    "d_v": "topology.d_v",
    "d_tl": "topology.d_tl",
    "d_te": "topology.d_te",
    "d_tr": "topology.d_tr",
    "mu": "strategy.mu",
    "rho": "strategy.rho",
}


def _parse_set(entry: str) -> tuple[str, object]:
    if "=" not in entry:
        raise ConfigError(f"--set needs key=value, got '{entry}'")
    key, _, raw = entry.partition("=")
    key = key.strip()
    key = _SET_ALIASES.get(key, key)
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise ConfigError(f"--set {key}: bad value ({e})") from e
    return key, value


def _default_outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "results"))


def _out_paths(out: str | None, stem: str) -> tuple[Path, Path]:
    if out and out.endswith(".csv"):
        csv_path = Path(out)
    else:
        csv_path = (Path(out) if out else _default_outdir()) / f"{stem}.csv"
    return csv_path, csv_path.with_suffix(".summary.json")


def _load_ref(ref: str):
    kind, value = resolve_scenario_ref(ref)
    if kind == "preset":
        return value, load_preset(value)
    path = Path(value)
    try:
        return path.stem, load_config(path)
    except OSError as e:
        raise _IoFailure(f"cannot read scenario file '{value}': {e}") from e


class _IoFailure(Exception):
    pass


def cmd_run(args) -> int:
    stem, (scenario, sweep) = _load_ref(args.scenario)
    overrides = [_parse_set(entry) for entry in args.set or []]
    if args.seed is not None:
        overrides.append(("seed", args.seed))
    if args.trials is not None:
        overrides.append(("sweep.trials", args.trials))
    for key, value in overrides:
        if key == "sweep" or key.startswith("sweep."):
            sweep = apply_sweep_override(sweep, key, value)
        else:
            scenario = apply_scenario_override(scenario, key, value)
    validate(scenario)

    started = time.perf_counter()
    table = run_sweep(scenario, sweep, workers=args.workers)
    runtime = time.perf_counter() - started

    csv_path, summary_path = _out_paths(args.out, stem)
    summary = {
        "scenario": args.scenario,
        "scenario_hash": table.metadata["scenario_hash"],
        "tool_version": __version__,
        "seed": table.metadata["seed"],
        "trials": table.metadata["trials"],
        "axis": table.metadata["axis"],
        "crn": table.metadata["crn"],
        "c_target": table.metadata["c_target"],
        "overrides": [f"{k}={v}" for k, v in overrides],
        "rows": len(table.rows),
        "prenull_failures": {f"{r.axis_value}/{r.variant}": r.prenull_failures for r in table.rows},
        "runtime_seconds": round(runtime, 3),
        "csv": str(csv_path),
    }
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_path.write_bytes(table.to_csv().encode("utf-8"))
        summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as e:
        raise _IoFailure(f"cannot write outputs: {e}") from e
    print(f"wrote {csv_path}")
    print(f"wrote {summary_path}")
    print(f"scenario hash {table.metadata['scenario_hash'][:16]}  rows {len(table.rows)}  runtime {runtime:.1f}s")
    return 0


def _describe_strategy(strategy) -> str:
    if isinstance(strategy, PrenullDesign):
        return f"prenull(tol={strategy.tolerance:g}, max_iters={strategy.max_iters}, init={strategy.init})"
    if isinstance(strategy, AnPartitionDesign):
        return f"an_partition(mu={strategy.mu:g}, ref={strategy.an_phase_reference})"
    return "matched"


def cmd_presets(_args) -> int:
    for name in PRESET_NAMES:
        scenario, sweep = load_preset(name)
        t, r = scenario.topology, scenario.radio
        amp = scenario.ris.amplitude
        amp_desc = (
            f"practical(beta_min={amp.beta_min:g}, phi={amp.phi:.6g}, alpha={amp.alpha:g})"
            if isinstance(amp, PracticalAmplitude)
            else "ideal"
        )
        pristine = "" if preset_is_pristine(name) else "  [MODIFIED]"
        print(f"{name}{pristine}")
        print(f"  topology: d_v={t.d_v:g} d_tl={t.d_tl:g} d_te={t.d_te:g} d_tr={t.d_tr:g} m")
        print(
            f"  radio: P={r.tx_power_dbm:g} dBm, noise={r.noise_power_dbm:g} dBm, "
            f"C0={r.c0_db:g} dB, d0={r.d0:g} m, gamma={r.gamma:g}"
        )
        print(f"  ris: N={scenario.ris.n_elements}, amplitude={amp_desc}")
        print(f"  strategy: {_describe_strategy(scenario.strategy)}")
        print(
            f"  sweep: {sweep.axis} over {list(sweep.values)} | "
            f"{len(sweep.variants) or 1} variants | crn={'on' if sweep.crn else 'off'} | "
            f"trials={sweep.trials if sweep.trials is not None else scenario.trials} | seed={scenario.seed}"
        )
        if sweep.variants:
            print(f"  variants: {', '.join(v.label for v in sweep.variants)}")
    return 0


def cmd_verify(args) -> int:
    modified = [name for name in PRESET_NAMES if not preset_is_pristine(name)]
    if modified and not args.allow_modified:
        print(
            f"presets modified: {', '.join(modified)}; refusing to verify (pass --allow-modified to override)",
            file=sys.stderr,
        )
        return 1
    settings = AcceptanceSettings() if args.full else FAST_SETTINGS
    settings = replace(settings, workers=args.workers, seed=args.seed)
    results = run_acceptance(settings)

    # Persist the determinism table so two verify runs can be byte-compared.
    outdir = Path(args.out) if args.out else _default_outdir()
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "verify_determinism.csv").write_bytes(determinism_table(settings, workers=1).encode("utf-8"))
    except OSError as e:
        raise _IoFailure(f"cannot write verify artifact: {e}") from e

    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 3 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-secrecy",
        description="Monte-Carlo secrecy-rate studies for RIS-assisted wiretap channels",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario/sweep file or shipped preset")
    run_p.add_argument("scenario", help="preset name (e.g. presets/fig8a) or path to a scenario file")
    run_p.add_argument("--seed", type=int, default=None)
    run_p.add_argument("--trials", type=int, default=None, help="trials per sweep point")
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a scenario/sweep field")
    run_p.add_argument("--out", default=None, help="output directory or .csv path")
    run_p.set_defaults(func=cmd_run)

    presets_p = sub.add_parser("presets", help="list shipped presets and their frozen parameters")
    presets_p.set_defaults(func=cmd_presets)

    verify_p = sub.add_parser("verify", help="run the acceptance criteria (reduced trials)")
    verify_p.add_argument("--seed", type=int, default=None)
    verify_p.add_argument("--workers", type=int, default=1)
    verify_p.add_argument("--full", action="store_true", help="full desk-scale trial budgets")
    verify_p.add_argument("--allow-modified", action="store_true", help="verify even if preset files were edited")
    verify_p.add_argument("--out", default=None, help="directory for verify artifacts")
    verify_p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        for issue in e.issues:
            print(f"validation: {issue}", file=sys.stderr)
        return 1
    except (ConfigError, SimulationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except _IoFailure as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
