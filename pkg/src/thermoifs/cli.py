"""Command-line front end.

Exit status: 0 on success, 2 for input errors, 3 for numerical failures,
4 when a request exceeds the enumeration budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import gibbs, hoelder, thermo
from ._tables import check_budget, configured_budget
from .config import load_config, parse_point, RunConfig
from .errors import InputError, ThermoIFSError
from .ifs import validate_ifs

EXIT_CODES = {"input": 2, "numerical": 3, "resource": 4, "error": 1}


def _emit(cfg: RunConfig, args, header, rows, record=None):
    """Render the full output in memory, then write it in one go."""
    fmt = args.format or cfg.output_format
    if fmt == "json":
        body = record if record is not None else [dict(zip(header, r)) for r in rows]
        text = json.dumps(body, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        text = buf.getvalue()
    path = args.out or cfg.output_path
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _depth(cfg, args) -> int:
    return int(args.depth) if args.depth is not None else cfg.depth


def _need_potential(cfg):
    if cfg.potential is None:
        raise InputError("config: 'potential' is required for this command")
    return cfg.potential


def _need_alpha(cfg):
    if cfg.alpha is None:
        raise InputError("config: 'alpha' is required for this command")
    if cfg.alpha <= 0:
        raise InputError("alpha: must be positive")
    return cfg.alpha


def cmd_pressure(cfg, args):
    depth = _depth(cfg, args)
    check_budget(cfg.system, depth)
    pot = thermo.PotentialSpec.scaled(args.t) if args.t is not None else _need_potential(cfg)
    est = thermo.pressure(cfg.system, pot, depth)
    rows = [(n, p) for n, p in est.per_level] + [("final", est.value)]
    record = {"per_level": [{"n": n, "P_n": p} for n, p in est.per_level],
              "value": est.value, "error_indicator": est.error_indicator, "depth": est.depth}
    _emit(cfg, args, ["n", "P_n"], rows, record)


def cmd_beta_curve(cfg, args):
    depth = _depth(cfg, args)
    check_budget(cfg.system, depth)
    if args.steps < 2:
        raise InputError("--steps must be >= 2")
    num = cfg.numerics
    alpha = _need_alpha(cfg)
    bf = thermo.BetaFunction(cfg.system, _need_potential(cfg), alpha, depth,
                             xtol=num["xtol"], maxiter=num["max_iter"])
    delta = thermo.solve_delta(cfg.system, depth, num["xtol"])
    ts = set(np.linspace(args.t_min, args.t_max, args.steps).tolist())
    ts.update((delta, float(alpha)))
    rows = []
    for t in sorted(ts):
        p = bf.point(t)
        rows.append((p.t, p.beta, p.residual))
    _emit(cfg, args, ["t", "beta", "residual"], rows)


def cmd_dimensions(cfg, args):
    depth = _depth(cfg, args)
    check_budget(cfg.system, depth)
    num = cfg.numerics
    report = hoelder.lambda_dimension(cfg.system, _need_potential(cfg), _need_alpha(cfg), depth,
                                      xtol=num["xtol"], h=num["fd_step"],
                                      richardson=num["richardson"])
    record = report.as_record()
    _emit(cfg, args, list(record), [tuple(record.values())], record)


def cmd_staircase(cfg, args):
    level = args.level if args.level is not None else int(cfg.numerics["staircase_level"])
    check_budget(cfg.system, level)
    sample = gibbs.staircase_sample(cfg.system, _need_potential(cfg), level, _depth(cfg, args))
    _emit(cfg, args, ["x", "F_lower", "F_upper"], list(sample.rows()))


def cmd_scan_point(cfg, args):
    num = cfg.numerics
    alpha = _need_alpha(cfg)
    pdepth = cfg.depth
    desc = json.loads(args.point) if args.point not in (None, "block") else (args.point or cfg.point)
    if desc is None:
        raise InputError("scan-point needs --point or a 'point' entry in the config")
    point = parse_point(desc)
    psi = _need_potential(cfg)
    if point == "block":
        point = hoelder.block_point(cfg.system, psi, alpha, tuple(num["block_growth"]), pdepth)
    depth = int(args.depth) if args.depth is not None else int(num["scan_depth"])
    series = hoelder.oscillation_score_series(
        cfg.system, psi, alpha, point, depth, ceiling=float(num["score_ceiling"]),
        min_chain=int(num["min_chain"]), pressure_depth=pdepth)
    chain = set(series.chain)
    flag = series.oscillation_candidate
    header = ["n", "k", "i", "birkhoff_chi", "score", "in_chain", "oscillation_candidate"]
    rows = [(e.level, e.length, e.symbol, e.birkhoff_chi, e.score, int(e in chain), int(flag))
            for e in series.events]
    record = {"oscillation_candidate": flag, "ceiling": series.ceiling,
              "events": [dict(zip(header[:6], r[:6])) for r in rows]}
    _emit(cfg, args, header, rows, record)


def cmd_validate(cfg, args):
    violations = validate_ifs(cfg.system, int(cfg.numerics["grid"]))
    rows = [(v.condition, v.detail) for v in violations]
    record = {"valid": not violations,
              "violations": [{"condition": c, "detail": d} for c, d in rows]}
    _emit(cfg, args, ["condition", "detail"], rows, record)
    if violations:
        raise InputError(f"{len(violations)} condition(s) violated")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run configuration")
    common.add_argument("--depth", type=int, help="enumeration depth (scan-point: symbols)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"))

    parser = argparse.ArgumentParser(prog="thermoifs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pressure", parents=[common], help="P_n per level")
    p.add_argument("--t", type=float, help="use t*phi instead of the config potential")
    p.set_defaults(func=cmd_pressure)

    p = sub.add_parser("beta-curve", parents=[common], help="t, beta_alpha(t) table")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=1.2)
    p.add_argument("--steps", type=int, default=25)
    p.set_defaults(func=cmd_beta_curve)

    p = sub.add_parser("dimensions", parents=[common], help="delta, dim_nu, s, s_0, s_1")
    p.set_defaults(func=cmd_dimensions)

    p = sub.add_parser("staircase", parents=[common], help="distribution function samples")
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("scan-point", parents=[common], help="block scores along a coded point")
    p.add_argument("--point", help='JSON like {"prefix": [0], "tail": [0, 1]} or "block"')
    p.set_defaults(func=cmd_scan_point)

    p = sub.add_parser("validate", parents=[common], help="check the IFS hypotheses")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        with configured_budget(cfg.numerics["budget"]):
            args.func(cfg, args)
    except ThermoIFSError as exc:
        print(f"error[{exc.exit_class}]: {exc}", file=sys.stderr)
        return EXIT_CODES[exc.exit_class]
    except json.JSONDecodeError as exc:
        print(f"error[input]: --point: {exc}", file=sys.stderr)
        return EXIT_CODES["input"]
    return 0


if __name__ == "__main__":
    sys.exit(main())
