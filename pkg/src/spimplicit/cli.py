"""Command line front end.

    spimplicit implicitize MAP [--support FILE | --degree-bound D] [--out-dir DIR]
    spimplicit member MAP ... -q 3/2,3/2
    spimplicit side   MAP ... -q1 1,1 -q2 3,3
    spimplicit ray    MAP ... --base 3,3 --dir -1,-1 --tol 1/1000000
    spimplicit plotdata MAP ... --window -2,2,-2,2 --resolution 50

Queries print ``{"predicate", "result", "diagnostics"}`` as JSON and exit 0;
every error class has its own exit code (see ``spimplicit.errors``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import errors, interp
from .config import RunConfig
from .errors import ImplicitError, InputIOError, UnsupportedInput
from .implicit import implicitize
from .param import load_map
from .predicates import (Ray, freeze_surface, membership_detail, ray_shoot, side_sign,
                         sidedness)
from .support import DEFAULT_CAP, degree_bound_polytope, load_polytope

# options whose values may start with '-' (negative coordinates)
_VALUE_OPTS = {"-q", "-q1", "-q2", "--base", "--dir", "--window", "--tol"}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _point(text: str) -> tuple:
    return tuple(_fraction(x) for x in text.split(","))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _degree_bound(text: str):
    return None if text == "auto" else _positive_int(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("map", help="parameterization file (text or JSON)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--support", metavar="FILE", help="predicted polytope vertex file")
    src.add_argument("--degree-bound", metavar="D", type=_degree_bound,
                     help="fallback simplex sum(x) <= D ('auto': product of degrees)")
    p.add_argument("--mode", choices=("exact", "approximate"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_fraction, default=None,
                   help="SVD tolerance (approximate mode) or ray interval width")
    p.add_argument("--mu-factor", type=_fraction, default=None)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_CAP)
    p.add_argument("--max-bits", type=_positive_int, default=None)
    p.add_argument("--max-degree", type=_positive_int, default=32)
    p.add_argument("--json", action="store_true", help="JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spimplicit",
                                     description="Sparse implicitization by interpolation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("implicitize", help="compute the implicit polynomial")
    _common(p)
    p.add_argument("--out-dir", metavar="DIR",
                   help="write polynomial.txt, polynomial.json and diagnostics.json")
    p.add_argument("--dump-matrix", metavar="CSV", help="write M as CSV plus a JSON sidecar")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings")

    p = sub.add_parser("member", help="membership test")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-q", type=_point)
    g.add_argument("--batch", metavar="FILE", help="one point per line")

    p = sub.add_parser("side", help="sidedness of two points")
    _common(p)
    p.add_argument("-q1", type=_point)
    p.add_argument("-q2", type=_point)
    p.add_argument("--batch", metavar="FILE", help="two points per line")

    p = sub.add_parser("ray", help="first intersection of a ray")
    _common(p)
    p.add_argument("--base", type=_point)
    p.add_argument("--dir", type=_point)
    p.add_argument("--batch", metavar="FILE", help="base and direction per line")

    p = sub.add_parser("plotdata", help="sign grid over a window as CSV")
    _common(p)
    p.add_argument("--window", type=_point, default=(Fraction(-2), Fraction(2),
                                                      Fraction(-2), Fraction(2)),
                   help="xmin,xmax,ymin,ymax")
    p.add_argument("--resolution", type=_positive_int, default=50)
    p.add_argument("--output", metavar="CSV")
    return parser


def _join_negative_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _config(args) -> RunConfig:
    tol = interp.DEFAULT_TOL
    if args.mode == "approximate" and args.tol is not None:
        tol = float(args.tol)
    return RunConfig(mode=args.mode, tol=tol, seed=args.seed, mu_factor=args.mu_factor,
                     cap=args.cap, max_bits=args.max_bits)


def _load(args):
    pmap = load_map(args.map)
    if args.support:
        Q = load_polytope(args.support)
        source = {"support": "file", "path": str(args.support)}
    else:
        D = getattr(args, "degree_bound", None)
        Q = degree_bound_polytope(pmap, D, max_degree=args.max_degree)
        source = {"support": "degree_bound", "D": max(max(v) for v in Q.vertices)}
    if Q.dim != pmap.dim:
        raise errors.DimensionMismatch(
            f"polytope has dimension {Q.dim}, the map has {pmap.dim} coordinates")
    return pmap, Q, source


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_implicitize(args, out) -> int:
    t0 = time.perf_counter()
    pmap, Q, source = _load(args)
    config = _config(args)
    poly, diag = implicitize(pmap, Q, config)
    diag = {**source, **diag}
    if args.timings:
        diag["seconds"] = round(time.perf_counter() - t0, 6)
    if args.dump_matrix:
        from .support import lattice_points, translate_positive
        S = lattice_points(translate_positive(Q), config.cap)
        M = interp.build_matrix(pmap, S, config.mu(len(S)), config.seed, config.mode,
                                config.tol)
        interp.dump_matrix(M, args.dump_matrix)
    text = poly.to_text() + "\n"
    if args.out_dir:
        d = Path(args.out_dir)
        try:
            d.mkdir(parents=True, exist_ok=True)
            (d / "polynomial.txt").write_text(text)
            (d / "polynomial.json").write_text(_dumps(poly.to_json()))
            (d / "diagnostics.json").write_text(_dumps(diag))
        except OSError as exc:
            raise InputIOError(f"cannot write to {d}: {exc.strerror}") from None
    if args.json:
        out.write(_dumps({"polynomial": poly.to_json(), "text": poly.to_text(),
                          "diagnostics": diag}))
    else:
        out.write(text)
    return 0


def _read_batch(path) -> list[list[str]]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputIOError(f"cannot read {path}: {exc.strerror}") from None
    return [ln.split("#", 1)[0].split() for ln in lines if ln.split("#", 1)[0].strip()]


def _guard(fn):
    try:
        return fn()
    except ImplicitError as exc:
        return {"error": exc.code, "message": str(exc)}


def _ray_json(hit):
    if hit is None:
        return {"hit": False}
    return {"hit": True, "interval": [str(hit.lo), str(hit.hi)], "rho": str(hit.rho),
            "rho_float": float(hit.rho), "point": [str(x) for x in hit.point]}


def _tol(args):
    return args.tol if args.tol is not None else Fraction(1, 10 ** 9)


def _single_query(args):
    if args.command == "member":
        return [args.q]
    if args.command == "side":
        if args.q1 is None or args.q2 is None:
            raise _UsageError("side needs -q1 and -q2 (or --batch)")
        return [args.q1, args.q2]
    if args.base is None or args.dir is None:
        raise _UsageError("ray needs --base and --dir (or --batch)")
    return [args.base, args.dir]


def cmd_query(args, out) -> int:
    # check the arguments before paying for the frozen matrix
    parts = None if args.batch else _single_query(args)
    pmap, Q, source = _load(args)
    handle = freeze_surface(pmap, Q, _config(args))
    diag = {**source, **handle.diagnostics}
    cmd = args.command

    def one(parts):
        if cmd == "member":
            verdict, extra = membership_detail(handle, parts[0])
            if extra:
                diag.setdefault("resampled", []).append(extra["resampled_row"])
            return verdict.value
        if cmd == "side":
            return sidedness(handle, parts[0], parts[1])
        return _ray_json(ray_shoot(handle, Ray(parts[0], parts[1]), _tol(args)))

    if args.batch:
        results = []
        for fields in _read_batch(args.batch):
            try:
                pts = [_point(f) for f in fields]
            except argparse.ArgumentTypeError as exc:
                results.append({"error": "parse_error", "message": str(exc)})
                continue
            results.append(_guard(lambda: one(pts)))
        out.write(_dumps({"predicate": cmd, "results": results, "diagnostics": diag}))
        return 0

    try:
        result = one(parts)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    out.write(_dumps({"predicate": cmd, "result": result, "diagnostics": diag}))
    return 0


def cmd_plotdata(args, out) -> int:
    pmap, Q, _ = _load(args)
    if pmap.dim != 2:
        raise UnsupportedInput("plot data is only produced for plane curves")
    if len(args.window) != 4:
        raise _UsageError("--window needs xmin,xmax,ymin,ymax")
    handle = freeze_surface(pmap, Q, _config(args))
    x0, x1, y0, y1 = args.window
    n = args.resolution

    def axis(a, b):
        if n == 1:
            return [a]
        return [a + (b - a) * i / (n - 1) for i in range(n)]

    poly = handle.polynomial()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "sign"])
    for x in axis(x0, x1):
        for y in axis(y0, y1):
            if x == 0 or y == 0:
                # the determinant test needs nonzero coordinates; use p directly
                v = poly.evaluate((x, y))
                s = (v > 0) - (v < 0)
            else:
                try:
                    s = side_sign(handle, (x, y))
                except errors.OnSurface:
                    s = 0
            writer.writerow([repr(float(x)), repr(float(y)), s])
    if args.output:
        try:
            Path(args.output).write_text(buf.getvalue())
        except OSError as exc:
            raise InputIOError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        out.write(buf.getvalue())
    return 0


class _UsageError(Exception):
    pass


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_join_negative_values(argv))
    handlers = {"implicitize": cmd_implicitize, "member": cmd_query, "side": cmd_query,
                "ray": cmd_query, "plotdata": cmd_plotdata}
    try:
        return handlers[args.command](args, out)
    except _UsageError as exc:
        parser.error(str(exc))
    except ImplicitError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": "invalid_input", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
