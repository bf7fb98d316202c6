"""Command-line frontend: file-based rearrangement, norms, weight checks.

Thin client over the core package; every command loads grid JSON or CSV,
calls one library operation, and writes the result back.  Exit status 0
on success, 1 when a verification suite finds a theorem-backed failure,
2 for argument or parse problems, 3 for I/O failures.

Commands:
    rearrange     --input F --method layercake|iterative|classical|set --output G
    norm          --input F [--weight W] --p P --space lambda2|lebesgue|lambda1d
    check-weight  --weight W --condition quasinorm|norm|factorize|embed ...
    verify        --suite all|inequalities|counterexamples|indexp ...
    serve         [--host H] [--port P]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as rio
from .lorentz import (
    Weight2D,
    classical_norm_with_weight,
    lebesgue_norm,
    lorentz_norm_2d,
    weight_check_report,
)
from .rearrange import (
    rearrange_classical,
    rearrange_iterative,
    rearrange_layercake,
    rearrange_set,
)
from .verify import SUITE_NAMES, run_named_suite, suite_dict_text

__all__ = ["main"]

PARSE_FAILURE = 2
IO_FAILURE = 3


def _parse_weight(token: str) -> Weight2D:
    """A weight argument is a JSON file path or an inline kind spec.

    Inline forms: "constant:c" and "power:a,b[,c]".
    """
    path = Path(token)
    if path.exists():
        return rio.load_weight(path)
    if ":" in token:
        kind, _, rest = token.partition(":")
        if kind == "constant":
            return Weight2D.constant(float(rest))
        if kind == "power":
            parts = [float(x) for x in rest.split(",")]
            if len(parts) == 2:
                return Weight2D.power(parts[0], parts[1])
            if len(parts) == 3:
                return Weight2D.power(parts[0], parts[1], parts[2])
        raise ValueError(f"cannot parse inline weight {token!r}")
    raise ValueError(f"weight {token!r} is neither a file nor an inline spec")


def _parse_pair(token: str, kind=float) -> tuple:
    parts = token.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated values, got {token!r}")
    return (kind(parts[0]), kind(parts[1]))


def cmd_rearrange(args) -> int:
    if args.method == "set":
        E = rio.load_grid_set(args.input)
        out = rio.dump_json(rio.staircase_to_dict(rearrange_set(E)))
        Path(args.output).write_text(out)
        return 0
    f = rio.load_grid_function(args.input)
    if args.method == "classical":
        out = rio.dump_json(rio.step_to_dict(rearrange_classical(f)))
        Path(args.output).write_text(out)
        return 0
    M = rearrange_layercake(f) if args.method == "layercake" else rearrange_iterative(f)
    rio.save_grid_function(M.as_grid_function(), args.output)
    return 0


def cmd_norm(args) -> int:
    f = rio.load_grid_function(args.input)
    w = _parse_weight(args.weight)
    if args.space == "lambda2":
        value = lorentz_norm_2d(f, w, args.p)
    elif args.space == "lebesgue":
        value = lebesgue_norm(f, args.p)
    else:
        value = classical_norm_with_weight(f, w, args.p)
    print(f"{value:.15g}")
    return 0


def cmd_check_weight(args) -> int:
    report = weight_check_report(
        _parse_weight(args.weight),
        args.condition,
        w2=None if args.weight2 is None else _parse_weight(args.weight2),
        p=args.p,
        p2=args.p2,
        family_cols=args.n,
        family_height=args.n,
        family_random=args.random,
        seed=args.seed,
        box=_parse_pair(args.box),
        resolution=_parse_pair(args.resolution, int),
    )
    print(rio.dump_json(report), end="")
    return 0


def cmd_verify(args) -> int:
    report = run_named_suite(args.suite, args.seed, args.cases, args.p, args.n)
    prefix = Path(args.output)
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    json_path = Path(str(prefix) + ".json")
    text_path = Path(str(prefix) + ".txt")
    json_path.write_text(rio.dump_json(report))
    text_path.write_text(suite_dict_text(report))
    ok = bool(report["ok"])
    print(f"suite={args.suite} ok={ok} reports={json_path}")
    return 0 if ok else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("rearrange2d.service:app", host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rearrange2d",
        description="Planar decreasing rearrangements and weighted Lorentz functionals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rearrange", help="rearrange a grid function or set file")
    r.add_argument("--input", required=True)
    r.add_argument("--method", required=True,
                   choices=["layercake", "iterative", "classical", "set"])
    r.add_argument("--output", required=True)
    r.set_defaults(func=cmd_rearrange)

    n = sub.add_parser("norm", help="evaluate a norm of a grid function")
    n.add_argument("--input", required=True)
    n.add_argument("--weight", default="constant:1",
                   help="weight JSON path or inline constant:c / power:a,b")
    n.add_argument("--p", type=float, default=1.0)
    n.add_argument("--space", default="lambda2",
                   choices=["lambda2", "lebesgue", "lambda1d"])
    n.set_defaults(func=cmd_norm)

    c = sub.add_parser("check-weight", help="check a weight condition")
    c.add_argument("--weight", required=True)
    c.add_argument("--condition", required=True,
                   choices=["quasinorm", "norm", "factorize", "embed"])
    c.add_argument("--weight2", default=None)
    c.add_argument("--p", type=float, default=1.0)
    c.add_argument("--p2", type=float, default=2.0)
    c.add_argument("--n", type=int, default=4,
                   help="staircase family bound (columns and heights)")
    c.add_argument("--random", type=int, default=20,
                   help="extra random staircases / set pairs")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--box", default="4,4", help="sampling box for factorization")
    c.add_argument("--resolution", default="8,8", help="sampling resolution")
    c.set_defaults(func=cmd_check_weight)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all", choices=list(SUITE_NAMES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=200)
    v.add_argument("--p", type=float, default=0.5)
    v.add_argument("--n", type=int, default=64)
    v.add_argument("--output", default="verify_report",
                   help="report path prefix (.json and .txt are written)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # includes json.JSONDecodeError
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_FAILURE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
