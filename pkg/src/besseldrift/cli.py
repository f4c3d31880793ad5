"""Command-line front end.

Exit codes: 0 all checks pass, 1 a statistical check failed, 2 usage error.
Every output embeds the resolved configuration so a run can be repeated
from its own artifact.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import zlib

import numpy as np

from . import identities as ident
from . import randkit as rk
from .bessel_core import (
    besq_path,
    BesselLaw,
    drifted_from_zero,
    drifted_transition_density,
    first_zero_sample,
    last_zero_drifted_sample,
    tau0_sample,
)
from .bridges import bridge0_reject

SEED_ENV = "BESSELDRIFT_SEED"
SAMPLERS = ("besq", "drifted", "tau0", "first_zero", "last_zero", "bridge0")
LAWS = ("g_last", "g_infinity", "drifted_density", "tau0", "lamperti", "absorption")
PROCESS_PARAMS = ("delta", "mu", "x", "t", "grid")
DEFAULTS = {"delta": 1.0, "mu": 1.0, "x": 1.0, "t": 1.0}


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _grid(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated numbers, got {text!r}") from None


def _count(text):
    v = int(float(text))
    if v < 1 or v != float(text):
        raise argparse.ArgumentTypeError(f"n must be a positive integer, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--delta", type=float)
    common.add_argument("--mu", type=float)
    common.add_argument("--x", type=float)
    common.add_argument("--t", type=float)
    common.add_argument("--grid", type=_grid, help="comma-separated times")
    common.add_argument("--n", type=_count, default=None, help="sample size (default 1e5)")
    common.add_argument("--seed", type=int, default=None, help=f"default 42, or ${SEED_ENV}")
    common.add_argument("--alpha", type=float, default=ident.DEFAULT_ALPHA)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = _Parser(prog="besseldrift", description="Exact samplers and equality-in-law checks for Bessel processes with drift.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("name", help="catalog entry or 'all'")
    v.add_argument("--workers", type=int, default=1)
    s = sub.add_parser("sample", parents=[common], help="draw samples to CSV")
    s.add_argument("sampler", choices=SAMPLERS)
    d = sub.add_parser("dist", parents=[common], help="evaluate a CDF or density on a grid")
    d.add_argument("law", choices=LAWS)
    d.add_argument("--ymin", type=float)
    d.add_argument("--ymax", type=float)
    d.add_argument("--points", type=int, default=201)
    return parser


# ---------------------------------------------------------------------------
# output


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    tmp = f"{out}.tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def _csv(config: dict, columns: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    names = list(columns)
    w.writerow(names)
    for row in zip(*(columns[k] for k in names)):
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_table(config: dict, columns: dict) -> str:
    data = {k: [v if isinstance(v, str) else float(v) for v in col] for k, col in columns.items()}
    return json.dumps({"config": config, "data": data}, indent=2) + "\n"


def read_csv(path_or_text: str) -> tuple[dict, dict]:
    """Parse a CSV artifact into ``(config, columns)``."""
    text = open(path_or_text).read() if os.path.exists(path_or_text) else path_or_text
    first, rest = text.split("\n", 1)
    if not first.startswith("# config: "):
        raise ValueError("missing '# config:' header line")
    config = json.loads(first[len("# config: "):])
    rows = list(csv.reader(io.StringIO(rest)))
    header, body = rows[0], rows[1:]
    cols = {h: [r[i] for r in body] for i, h in enumerate(header)}
    return config, cols


def _resolve(args, keys) -> dict:
    return {k: (getattr(args, k) if getattr(args, k) is not None else DEFAULTS[k]) for k in keys}


def _base_config(args) -> dict:
    return {
        "command": args.command,
        "n": args.n if args.n is not None else ident.DEFAULT_N,
        "seed": args.seed if args.seed is not None else _default_seed(),
        "alpha": args.alpha,
        "format": args.format,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    config = _base_config(args)
    config["format"] = args.format or "json"
    config["identity"] = args.name
    given = {k: getattr(args, k) for k in PROCESS_PARAMS if getattr(args, k) is not None}
    if args.name == "all":
        if given:
            raise UsageError("parameter overrides need a single identity, not 'all'")
        cases = [c.with_params(n=config["n"], seed=config["seed"]) for c in ident.catalog()]
    else:
        try:
            base = ident.get_case(args.name)
        except ident.UnknownIdentityError as err:
            raise UsageError(str(err)) from None
        unknown = sorted(set(given) - set(base.params))
        if unknown:
            raise UsageError(f"{args.name} takes {sorted(base.params)}; got unsupported {unknown}")
        try:
            cases = [base.with_params(n=config["n"], seed=config["seed"], **given)]
        except ValueError as err:
            raise UsageError(str(err)) from None
        config["params"] = dict(cases[0].params)
    if not 0 < args.alpha < 1:
        raise UsageError("alpha must lie in (0, 1)")
    try:
        reports = ident.run_suite(cases, alpha=args.alpha, workers=max(1, args.workers))
    except ValueError as err:
        raise UsageError(str(err)) from None

    if config["format"] == "csv":
        cols = {"name": [], "check": [], "statistic": [], "p_value": [], "decision": []}
        for r in reports:
            for label, stat in r.statistic.items():
                p = r.p_value[label]
                cols["name"].append(r.name)
                cols["check"].append(label)
                cols["statistic"].append(stat)
                cols["p_value"].append("" if p is None else p)
                cols["decision"].append(r.decision)
        _write(_csv(config, cols), args.out)
    else:
        doc = {"config": config, "reports": [r.to_dict() for r in reports]}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    for r in reports:
        print(f"{r.name}: {r.decision}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def _sample_columns(name, p, n, gen) -> dict:
    if name == "besq":
        # x is the starting value of the squared process
        times = p["grid"] or [p["t"]]
        path = besq_path(BesselLaw(p["delta"], x0=p["x"], kind="squared"), times, gen, n)
        return _path_columns(path)
    if name == "drifted":
        return _path_columns(drifted_from_zero(p["delta"], p["mu"], p["grid"] or [p["t"]], gen, n))
    if name == "tau0":
        return {"tau0": tau0_sample(p["delta"], p["x"], gen, n)}
    if name == "first_zero":
        return {"d_t": first_zero_sample(p["delta"], p["x"], p["t"], gen, n)}
    if name == "last_zero":
        return {"g_t": last_zero_drifted_sample(p["delta"], p["mu"], p["t"], gen, n)}
    grid = p["grid"] or list(np.linspace(0.0, 1.0, 11))
    return _path_columns(bridge0_reject(p["mu"], grid, gen, n))


def _path_columns(path) -> dict:
    if path.times.size == 1:
        return {"value": path.values[:, 0]}
    return {f"t={t:g}": path.values[:, j] for j, t in enumerate(path.times)}


_SAMPLE_KEYS = {
    "besq": ("delta", "x", "t"),
    "drifted": ("delta", "mu", "t"),
    "tau0": ("delta", "x"),
    "first_zero": ("delta", "x", "t"),
    "last_zero": ("delta", "mu", "t"),
    "bridge0": ("mu",),
}


def cmd_sample(args) -> int:
    config = _base_config(args)
    config["format"] = args.format or "csv"
    config["sampler"] = args.sampler
    params = _resolve(args, _SAMPLE_KEYS[args.sampler])
    if args.sampler in ("besq", "drifted", "bridge0"):
        params["grid"] = args.grid
    elif args.grid is not None:
        raise UsageError(f"{args.sampler} does not take --grid")
    config["params"] = params
    stream = rk.RngStream(config["seed"], zlib.crc32(args.sampler.encode()))
    try:
        cols = _sample_columns(args.sampler, params, config["n"], stream.generator)
    except ValueError as err:
        raise UsageError(f"{args.sampler}: {err}") from None
    text = _csv(config, cols) if config["format"] == "csv" else _json_table(config, cols)
    _write(text, args.out)
    return 0


def _alpha_of(delta):
    return 1.0 - 0.5 * delta


_DIST_KEYS = {
    "g_last": ("delta", "mu", "t"),
    "g_infinity": ("delta", "mu"),
    "drifted_density": ("delta", "mu", "t", "x"),
    "tau0": ("delta", "x"),
    "lamperti": ("delta", "t"),
    "absorption": ("x",),
}


def _dist_columns(law, p, y) -> dict:
    if law == "drifted_density":
        return {"y": y, "pdf": drifted_transition_density(p["delta"], p["mu"], p["t"], p["x"], y)}
    if law == "absorption":
        # P(tau_0 <= y) for dimension 0
        return {"y": y, "cdf": rk.Reciprocal(rk.Exponential(0.5 * p["x"] ** 2)).cdf(y)}
    a = _alpha_of(p["delta"])
    if law == "g_last":
        obj = rk.Product(rk.CensoredExp(p["t"], 0.5 * p["mu"] ** 2), rk.Beta(a, 1 - a))
        return {"y": y, "cdf": obj.cdf(y)}
    if law == "g_infinity":
        return {"y": y, "cdf": rk.Gamma(a, 0.5 * p["mu"] ** 2).cdf(y)}
    if law == "tau0":
        return {"y": y, "cdf": rk.InverseGamma(a, 0.5 * p["x"] ** 2).cdf(y)}
    return {"y": y, "cdf": rk.Beta(a, 1 - a).cdf(np.clip(y / p["t"], 0.0, 1.0))}


def _dist_range(law, p):
    if law in ("g_last", "lamperti"):
        return 0.0, p["t"]
    if law == "drifted_density":
        return 0.0, p["mu"] * p["t"] + p["x"] + 8.0 * math.sqrt(p["t"]) + 2.0 * math.sqrt(p["delta"] * p["t"])
    return 0.0, 10.0


def cmd_dist(args) -> int:
    config = _base_config(args)
    config.pop("n")
    config["format"] = args.format or "csv"
    config["law"] = args.law
    params = _resolve(args, _DIST_KEYS[args.law])
    lo, hi = _dist_range(args.law, params)
    lo = lo if args.ymin is None else args.ymin
    hi = hi if args.ymax is None else args.ymax
    if not hi > lo:
        raise UsageError(f"grid span must be positive, got ymin={lo}, ymax={hi}")
    if args.points < 2:
        raise UsageError("points must be >= 2")
    config.update(params=params, ymin=lo, ymax=hi, points=args.points)
    y = np.linspace(lo, hi, args.points)
    try:
        cols = _dist_columns(args.law, params, y)
    except ValueError as err:
        raise UsageError(f"{args.law}: {err}") from None
    text = _csv(config, cols) if config["format"] == "csv" else _json_table(config, cols)
    _write(text, args.out)
    return 0


COMMANDS = {"verify": cmd_verify, "sample": cmd_sample, "dist": cmd_dist}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as err:
        print(f"besseldrift: error: {err}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); not an error
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
