"""Batch command-line front end.

Usage:
    spinstat interferometer --two-s 1 --alpha 1.0 --model dynamical
    spinstat entangle-sweep --two-s 1 --alphas 0:1:0.1
    spinstat exchange-phase --two-s 3 --schedule 0:0.5:4,0.5:1:8.566370614359172
    spinstat all --seed 7 --output-dir out/
    spinstat --config run.json

Every run writes one JSON result envelope (plus a CSV for sweeps) into the
output directory, which defaults to $SPINSTAT_OUTPUT_DIR or ./spinstat-out.
Exit status: 0 if every contracted tolerance passes, 2 if one fails,
1 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import checks
from .dynamics import RotationSchedule
from .errors import EmptyInput, SpinStatError

SCHEMA_VERSION = "1.0"
OUTPUT_ENV = "SPINSTAT_OUTPUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_TOLERANCE = 0, 1, 2

FULL_SWAP = f"0:1:{2 * math.pi!r}"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- formatting


def format_float(x: float) -> str:
    """17 significant digits, scientific notation."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return f"{x:.16e}"


def _encode(obj: Any, indent: int = 0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        return "[" + ", ".join(_encode(v, indent + 1) for v in seq) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return _encode(obj) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(rows: Sequence, columns: Sequence[str] | None = None) -> str:
    """Header plus one row per item, sorted by the first column."""
    if not rows:
        raise EmptyInput("no rows to write")
    dicts = [r.as_row() if hasattr(r, "as_row") else dict(r) for r in rows]
    columns = list(columns or dicts[0].keys())
    dicts.sort(key=lambda d: d[columns[0]])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(columns)
    for d in dicts:
        writer.writerow([format_float(d[c]) if isinstance(d[c], (float, np.floating)) else d[c] for c in columns])
    return buf.getvalue()


def emit_csv(points: Sequence, path, columns: Sequence[str] | None = None) -> None:
    atomic_write(Path(path), csv_text(points, columns))


# ---------------------------------------------------------------- subcommands


@dataclass(frozen=True)
class Param:
    type: Callable
    default: Any
    help: str = ""


@dataclass(frozen=True)
class Subcommand:
    name: str
    params: dict
    run: Callable[[dict, int], checks.SuiteResult]
    csv_columns: tuple | None = None
    help: str = ""


def _schedule_from(params: dict) -> RotationSchedule:
    if params.get("schedule_file"):
        with open(params["schedule_file"], encoding="utf-8") as fh:
            return RotationSchedule.from_json_obj(json.load(fh))
    return RotationSchedule.from_segments(params["schedule"])


def _omega(text: str) -> tuple:
    vals = tuple(float(x) for x in text.split(","))
    if len(vals) != 3:
        raise ValueError(f"omega needs three components, got {text!r}")
    return vals


def _sign(text) -> int:
    v = int(text)
    if v not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return v


def _two_s(text) -> int:
    v = int(text)
    if v < 0:
        raise ValueError("two_s must be >= 0")
    return v


def _model(text: str) -> str:
    if text not in ("dynamical", "mode_relabeling"):
        raise ValueError(f"unknown model {text!r}")
    return text


def _method(text: str) -> str:
    if text not in ("kernel", "dense"):
        raise ValueError(f"unknown method {text!r}")
    return text


def _run_all(params: dict, seed: int) -> checks.SuiteResult:
    parts = {
        "rotation_table": checks.rotation_table(seed, tol=params["rotation_tolerance"]),
        "spin_rep": _merge(checks.spin_rep_suite(k, seed) for k in range(5)),
        "ll_check": checks.ll_suite(seed=seed),
        "schedule_independence": checks.schedule_independence_suite(tolerance=params["phase_tolerance"]),
        "interferometer": checks.interferometer_table(params["phase_tolerance"]),
        "entanglement": checks.entanglement_witness_suite(params["phase_tolerance"]),
        "correlator": checks.correlator_table(),
        "gravito": checks.gravito_table(seed=seed),
    }
    out = checks.SuiteResult()
    for prefix, res in parts.items():
        out.metrics.update({f"{prefix}.{k}": v for k, v in res.metrics.items()})
        out.tolerances.update({f"{prefix}.{k}": v for k, v in res.tolerances.items()})
        out.failures.extend(f"{prefix}.{k}" for k in res.failures)
        out.metrics[f"{prefix}.pass"] = res.passed
    return out


def _merge(results) -> checks.SuiteResult:
    out = checks.SuiteResult()
    for i, res in enumerate(results):
        out.metrics.update({f"2s{i}.{k}": v for k, v in res.metrics.items()})
        out.tolerances.update({f"2s{i}.{k}": v for k, v in res.tolerances.items()})
        out.failures.extend(f"2s{i}.{k}" for k in res.failures)
    return out


SUBCOMMANDS = {
    sc.name: sc
    for sc in [
        Subcommand(
            "ll-check",
            {
                "mass": Param(float, 1.0, "particle mass (hbar = 1)"),
                "n_grid": Param(int, 100, "random (e, p) points for the squaring check"),
                "n_momenta": Param(int, 20, "random momenta for the nullity check"),
                "n_boosts": Param(int, 20, "random boosts for the covariance check"),
                "tolerance": Param(float, 1e-10, "squaring residual tolerance"),
                "condition_tolerance": Param(float, 1e-12, "anticommutation residual tolerance"),
                "boost_tolerance": Param(float, 1e-9, "boost covariance tolerance"),
            },
            lambda p, seed: checks.ll_suite(seed=seed, **p),
            help="matrices, squaring, plane waves and boost covariance of the Galilean equation",
        ),
        Subcommand(
            "spin-rep",
            {
                "two_s": Param(_two_s, 1, "spin as the integer 2S"),
                "n_axes": Param(int, 10, "random axes"),
                "tolerance": Param(float, 1e-10),
            },
            lambda p, seed: checks.spin_rep_suite(p["two_s"], seed, p["n_axes"], p["tolerance"]),
            help="spin operators, D^S rotations, 2 pi phase and the Majorana embedding",
        ),
        Subcommand(
            "exchange-phase",
            {
                "two_s": Param(_two_s, 1, "spin as the integer 2S"),
                "schedule": Param(str, FULL_SWAP, "coaxial segments t0:t1:omega_z,..."),
                "schedule_file": Param(str, "", "JSON file with 'times' (n+1) and 'omegas' (n x 3)"),
                "method": Param(_method, "kernel", "kernel or dense"),
                "tolerance": Param(float, 1e-9),
            },
            lambda p, seed: checks.exchange_suite(p["two_s"], _schedule_from(p), p["method"], p["tolerance"]),
            help="phase acquired by the highest-weight state under a rotation schedule",
        ),
        Subcommand(
            "interferometer",
            {
                "two_s": Param(_two_s, 1, "spin as the integer 2S"),
                "alpha": Param(float, 1.0, "swap fraction in [0, 1]"),
                "model": Param(_model, "dynamical", "dynamical or mode_relabeling"),
                "tolerance": Param(float, 1e-9),
            },
            lambda p, seed: checks.interferometer_suite(p["two_s"], p["alpha"], p["model"], p["tolerance"]),
            help="control-qubit phase and visibility after a controlled rotation",
        ),
        Subcommand(
            "entangle-sweep",
            {
                "two_s": Param(_two_s, 1, "spin as the integer 2S"),
                "alphas": Param(str, "0:1:0.1", "start:stop:step or a comma list"),
                "tolerance": Param(float, 1e-9),
            },
            lambda p, seed: checks.entangle_suite(p["two_s"], checks.parse_grid(p["alphas"]), p["tolerance"]),
            csv_columns=("alpha", "concurrence", "entropy_bits"),
            help="entanglement from partial path swaps over a grid of swap fractions",
        ),
        Subcommand(
            "correlator-check",
            {
                "two_s": Param(_two_s, 1, "spin as the integer 2S"),
                "sign": Param(_sign, -1, "statistics sign of the toy modes (+1 or -1)"),
                "tolerance": Param(float, 1e-10),
            },
            lambda p, seed: checks.correlator_suite(p["two_s"], p["sign"], p["tolerance"]),
            help="exchange chain on the two-mode toy Fock model",
        ),
        Subcommand(
            "gravito-check",
            {
                "omega": Param(_omega, (0.0, 0.0, 1.0), "rotation rate x,y,z"),
                "h": Param(float, 1e-3, "finite-difference step for the curl"),
                "dt": Param(float, 1e-3, "sample spacing for E_g"),
                "tolerance": Param(float, 1e-6),
            },
            lambda p, seed: checks.gravito_suite(p["omega"], p["h"], p["dt"], seed, p["tolerance"]),
            help="finite-difference curl of Omega x r and E_g = -dA_g/dt",
        ),
        Subcommand(
            "all",
            {
                "rotation_tolerance": Param(float, 1e-10),
                "phase_tolerance": Param(float, 1e-9),
            },
            _run_all,
            help="every suite with default parameters",
        ),
    ]
}


@dataclass
class RunConfig:
    subcommand: str
    parameters: dict
    seed: int = 0
    output_dir: str | None = None
    _raw: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_mapping(cls, obj: dict) -> "RunConfig":
        allowed = {"subcommand", "parameters", "seed", "output_dir"}
        unknown = set(obj) - allowed
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        name = obj.get("subcommand")
        if name not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {name!r}")
        params = resolve_parameters(name, obj.get("parameters") or {})
        seed = obj.get("seed", 0)
        if not isinstance(seed, int) or seed < 0:
            raise UsageError("seed must be a non-negative integer")
        return cls(name, params, seed, obj.get("output_dir"))


def resolve_parameters(name: str, given: dict) -> dict:
    schema = SUBCOMMANDS[name].params
    unknown = set(given) - set(schema)
    if unknown:
        raise UsageError(f"unknown parameters for {name}: {sorted(unknown)}")
    out = {}
    for key, param in schema.items():
        raw = given.get(key, param.default)
        try:
            if param.type is _omega and isinstance(raw, (list, tuple)):
                raw = ",".join(str(v) for v in raw)
            out[key] = param.type(raw) if raw is not param.default else param.default
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key}: {exc}") from exc
    return out


def _echo(params: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def output_stem(cfg: RunConfig) -> str:
    if "two_s" in cfg.parameters:
        return f"{cfg.subcommand}_2s{cfg.parameters['two_s']}"
    return cfg.subcommand


def run(cfg: RunConfig) -> int:
    """Execute a validated config, write its artifacts and return the exit code."""
    sub = SUBCOMMANDS[cfg.subcommand]
    result = sub.run(dict(cfg.parameters), cfg.seed)
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "subcommand": cfg.subcommand,
        "parameters_echo": {**_echo(cfg.parameters), "seed": cfg.seed},
        "metrics": result.metrics,
        "pass": result.passed,
        "tolerances": result.tolerances,
        "failures": result.failures,
    }
    outdir = Path(cfg.output_dir or os.environ.get(OUTPUT_ENV) or "spinstat-out")
    stem = output_stem(cfg)
    # render everything before touching the filesystem
    texts = {f"{stem}.json": dumps(envelope)}
    if sub.csv_columns and result.rows:
        texts[f"{stem}.csv"] = csv_text(result.rows, sub.csv_columns)
    for name, text in texts.items():
        atomic_write(outdir / name, text)
    status = "PASS" if result.passed else "FAIL " + ",".join(result.failures)
    print(f"{cfg.subcommand}: {status} -> {outdir / f'{stem}.json'}")
    return EXIT_OK if result.passed else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinstat", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="JSON RunConfig file (replaces the subcommand and flags)")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default 0)")
    parser.add_argument("--output-dir", default=None, help=f"artifact directory (default ${OUTPUT_ENV} or ./spinstat-out)")
    subs = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    for sc in SUBCOMMANDS.values():
        sp = subs.add_parser(sc.name, help=sc.help, description=sc.help)
        for key, param in sc.params.items():
            sp.add_argument("--" + key.replace("_", "-"), dest=key, default=None, help=f"{param.help} (default {param.default})".strip())
        sp.add_argument("--seed", dest="sub_seed", type=int, default=None, help=argparse.SUPPRESS)
        sp.add_argument("--output-dir", dest="sub_output_dir", default=None, help=argparse.SUPPRESS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.sub_seed if getattr(args, "sub_seed", None) is not None else args.seed
    outdir = getattr(args, "sub_output_dir", None) or args.output_dir
    if args.config:
        if args.subcommand:
            raise UsageError("--config cannot be combined with a subcommand")
        try:
            with open(args.config, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        if not isinstance(obj, dict):
            raise UsageError("config must be a JSON object")
        cfg = RunConfig.from_mapping(obj)
        if seed is not None:
            cfg.seed = seed
        if outdir:
            cfg.output_dir = outdir
        return cfg
    if not args.subcommand:
        raise UsageError("a subcommand or --config is required")
    given = {k: getattr(args, k) for k in SUBCOMMANDS[args.subcommand].params if getattr(args, k) is not None}
    return RunConfig(args.subcommand, resolve_parameters(args.subcommand, given), seed or 0, outdir)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.seed < 0:
            raise UsageError("seed must be non-negative")
        return run(cfg)
    except UsageError as exc:
        print(f"spinstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpinStatError, ValueError, OSError) as exc:
        print(f"spinstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
