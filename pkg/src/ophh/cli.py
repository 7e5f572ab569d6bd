"""Command-line front end.

Exit codes: 0 when every check passes (or an expected counterexample is
reproduced), 1 when a verify suite fails or a falsifier finds a witness,
2 on input or precondition errors.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InputError, OphhError
from .functions import Power, Quadratic, parse_function
from .lab import THEOREMS, RandomQuadratic, TrialSuite, reproduce_cubic_counterexample, run_suite
from .matrices import apply_function, load_matrix, random_hermitian, rng_stream, spectral_norm
from .reports import jsonable
from .scalar import check_scalar_hh

REPRODUCTIONS = ("example-cubic", "example-quadratic", "sharpness-scalar")
SWEEP_AXES = ("s", "dim", "trials")


def default_seed() -> int:
    raw = os.environ.get("OPHH_SEED")
    if raw is None or raw == "":
        return 42
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable OPHH_SEED must be an integer, got {raw!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", help="function: power, cubic, identity, constant, quadratic[:a,b,c], "
                               "affine[:m,k], example1:a,b,c,s, random-quadratic or a JSON file")
    p.add_argument("--g", help="second function (theorems 7 and 8)")
    p.add_argument("--s", type=float)
    p.add_argument("--s1", type=float)
    p.add_argument("--s2", type=float)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--pairs", choices=("qualified", "psd", "hermitian"))
    p.add_argument("--tol", type=float, help="relative Loewner tolerance (default 1e-8)")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--real", action="store_true", help="draw real symmetric matrices")
    p.add_argument("--pair", nargs=2, metavar=("A.json", "B.json"), action="append", default=[],
                   help="add an explicit matrix pair to the suite (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ophh", description="Operator Hermite-Hadamard inequality lab")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    theorems = sorted(THEOREMS)
    for name, text in (("verify", "run a seeded suite; exit 1 on any violation"),
                       ("falsify", "search for a counterexample; exit 1 if one is found")):
        p = sub.add_parser(name, help=text)
        p.add_argument("theorem", choices=theorems)
        _common(p)
    p = sub.add_parser("reproduce", help="reproduce a worked example")
    p.add_argument("example", choices=REPRODUCTIONS)
    _common(p)
    p = sub.add_parser("sweep", help="run a suite across a parameter axis")
    p.add_argument("theorem", choices=theorems)
    p.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p.add_argument("--values", required=True, help="comma list or start:stop:step (inclusive)")
    _common(p)
    return parser


def parse_values(text: str, axis: str) -> list:
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise InputError("sweep step must be positive")
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            vals = [round(start + i * step, 12) for i in range(n)]
        else:
            vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"--values: cannot parse {text!r}") from exc
    if not vals:
        raise InputError("--values is empty")
    if axis in ("dim", "trials"):
        if any(v != int(v) for v in vals):
            raise InputError(f"--values for {axis} must be integers")
        vals = [int(v) for v in vals]
    return vals


def _function_arg(text, s):
    if text is None:
        return None
    if text == "random-quadratic":
        return RandomQuadratic()
    return parse_function(text, s)


def make_suite(args, theorem: str, **override) -> TrialSuite:
    opts = dict(dim=args.dim, trials=args.trials, s=args.s, s1=args.s1, s2=args.s2)
    opts.update(override)
    s_for_f = opts["s1"] if theorem in ("theorem7", "theorem8") else opts["s"]
    f = _function_arg(args.f, s_for_f)
    g = _function_arg(args.g, opts["s2"])
    extra = [(load_matrix(a), load_matrix(b)) for a, b in args.pair]
    for a, b in extra:
        if a.shape[0] != opts["dim"]:
            raise InputError(f"--pair matrices are {a.shape[0]}x{a.shape[0]} but --dim is {opts['dim']}")
        if b.shape != a.shape:
            raise InputError("--pair matrices have different dimensions")
    kwargs = dict(
        master_seed=args.seed,
        trials=opts["trials"],
        dim=opts["dim"],
        pair_source=args.pairs,
        f=f,
        g=g,
        s=opts["s"],
        s1=opts["s1"],
        s2=opts["s2"],
        real=args.real,
        extra_pairs=extra,
        threads=max(1, args.threads),
    )
    if args.tol is not None:
        if args.tol < 0:
            raise InputError("--tol must be nonnegative")
        kwargs["eps_rel"] = args.tol
    return TrialSuite(theorem, **kwargs)


def write_report(path, report: dict, argv) -> None:
    """Atomically write ``report`` plus a separate metadata block."""
    payload = dict(report)
    payload["metadata"] = {
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "version": __version__,
        "argv": list(argv),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_suite(args, falsify: bool):
    result = run_suite(make_suite(args, args.theorem))
    report = result.to_dict()
    report["mode"] = "falsify" if falsify else "verify"
    print(result.summary())
    for w in result.witnesses[:3]:
        print(f"  witness: trial {w['trial']}, {w['side']}, min eig {w['min_eig']:.6g}")
    return report, (0 if result.verdict == "pass" else 1)


def _scalar_row(value):
    v = np.asarray(value)
    if v.ndim == 2 and v.shape == (1, 1):
        return float(v[0, 0].real)
    return jsonable(value)


def _cmd_sweep(args):
    rows = []
    for v in parse_values(args.values, args.axis):
        override = {args.axis: v}
        if args.axis == "s" and args.theorem in ("theorem7", "theorem8"):
            override = {"s1": v, "s2": v}
        suite = make_suite(args, args.theorem, **override)
        keep = suite.trials == 1 and suite.dim == 1
        result = run_suite(suite, keep_reports=keep)
        row = {args.axis: v, "verdict": result.verdict, "min_slack": result.min_slack,
               "failures": result.failures}
        if keep and result.reports:
            rep = result.reports[0]
            row["values"] = {k: _scalar_row(val) for k, val in rep.values.items()
                             if k in ("midpoint_term", "integral", "endpoint_term")}
        rows.append(row)
    print(f"sweep {args.theorem} over {args.axis}:")
    print(f"  {args.axis:>8}  {'min_slack':>12}  verdict")
    for row in rows:
        print(f"  {row[args.axis]:>8}  {row['min_slack']:>12.4e}  {row['verdict']}")
    ok = all(r["verdict"] == "pass" for r in rows)
    report = {
        "theorem": args.theorem,
        "seed": args.seed,
        "trials": args.trials,
        "dim": args.dim,
        "min_slack": min(r["min_slack"] for r in rows),
        "tolerance": args.tol if args.tol is not None else 1e-8,
        "verdict": "pass" if ok else "fail",
        "witnesses": [],
        "axis": args.axis,
        "rows": rows,
    }
    return report, (0 if ok else 1)


def _reproduce_cubic(args):
    rep = reproduce_cubic_counterexample()
    err = rep.values["max_entry_error"]
    reproduced = err <= 1e-12 and rep.verdict == "fail"
    print("(A^3 + B^3)/2 - ((A + B)/2)^3 =")
    print(np.array2string(rep.values["slack"].real, precision=6))
    print(f"max |entry - (1/8)[[67,-34],[-34,17]]| = {err:.2e}; min eigenvalue {rep.min_slack:.6f} "
          f"-> not positive semidefinite")
    report = {
        "theorem": "example-cubic",
        "seed": args.seed,
        "trials": 1,
        "dim": 2,
        "min_slack": rep.min_slack,
        "tolerance": rep.sides[0].tolerance,
        "verdict": rep.verdict,
        "witnesses": [jsonable({"trial": 0, "lambda": 0.5, "min_eig": rep.min_slack,
                                "A": rep.inputs["A"], "B": rep.inputs["B"], "x": rep.witness["x"]})],
        "reproduced": reproduced,
        "details": rep.to_dict(),
    }
    return report, (0 if reproduced else 1)


def quadratic_identity_error(f: Quadratic, a, b) -> float:
    """Normalised spectral-norm gap between the midpoint slack and ``(alpha/4)(A-B)^2``."""
    fa, fb = apply_function(f, a), apply_function(f, b)
    fm = apply_function(f, 0.5 * (a + b))
    d = a - b
    gap = 0.5 * (fa + fb) - fm - 0.25 * f.alpha * (d @ d)
    scale = max(1.0, spectral_norm(fa), spectral_norm(fb), spectral_norm(fm))
    return spectral_norm(gap) / scale


def _reproduce_quadratic(args):
    f = _function_arg(args.f, args.s) if args.f else Quadratic(1.0, 0.0, 0.0)
    if not isinstance(f, Quadratic):
        raise InputError("example-quadratic needs --f quadratic[:alpha,beta,gamma]")
    worst = 0.0
    for i in range(args.trials):
        rng = rng_stream(args.seed, i)
        dim = args.dim if args.dim > 2 else 2 + i % 5
        a = random_hermitian(dim, (-4.0, 4.0), rng, args.real)
        b = random_hermitian(dim, (-4.0, 4.0), rng, args.real)
        worst = max(worst, quadratic_identity_error(f, a, b))
    ok = worst <= 1e-10
    print(f"(f(A)+f(B))/2 - f((A+B)/2) vs (alpha/4)(A-B)^2 over {args.trials} pairs: "
          f"max normalised gap {worst:.2e} ({'ok' if ok else 'FAILED'})")
    report = {
        "theorem": "example-quadratic",
        "seed": args.seed,
        "trials": args.trials,
        "dim": args.dim,
        "min_slack": -worst,
        "tolerance": 1e-10,
        "verdict": "pass" if ok else "fail",
        "witnesses": [],
        "function": f.to_json(),
    }
    return report, (0 if ok else 1)


def _reproduce_sharpness(args):
    s_values = [args.s] if args.s is not None else [round(0.1 * k, 1) for k in range(1, 10)]
    rows = []
    for s in s_values:
        rep = check_scalar_hh(Power(s), s, 0.0, 1.0)
        mean = rep.values["mean"]
        rows.append({"s": s, "mean": mean, "expected": 1.0 / (s + 1.0),
                     "error": abs(mean - 1.0 / (s + 1.0)),
                     "right_slack": rep.side("right").slack, "left_slack": rep.side("left").slack})
    worst = max(r["error"] for r in rows)
    ok = worst <= 1e-10 and all(r["left_slack"] >= -1e-9 for r in rows)
    for r in rows:
        print(f"  s={r['s']:.2f}  mean={r['mean']:.12f}  1/(s+1)={r['expected']:.12f}  "
              f"right slack={r['right_slack']:.1e}")
    report = {
        "theorem": "sharpness-scalar",
        "seed": args.seed,
        "trials": len(rows),
        "dim": 1,
        "min_slack": min(min(r["right_slack"], r["left_slack"]) for r in rows),
        "tolerance": 1e-10,
        "verdict": "pass" if ok else "fail",
        "witnesses": [],
        "rows": rows,
    }
    return report, (0 if ok else 1)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        if args.trials < 1:
            raise InputError("--trials must be >= 1")
        if args.dim < 1:
            raise InputError("--dim must be >= 1")
        if args.command == "verify":
            report, code = _cmd_suite(args, falsify=False)
        elif args.command == "falsify":
            report, code = _cmd_suite(args, falsify=True)
        elif args.command == "sweep":
            report, code = _cmd_sweep(args)
        else:
            handler = {
                "example-cubic": _reproduce_cubic,
                "example-quadratic": _reproduce_quadratic,
                "sharpness-scalar": _reproduce_sharpness,
            }[args.example]
            report, code = handler(args)
        report["config"] = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "threads")}
        if args.json:
            write_report(args.json, report, argv)
        return code
    except OphhError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
