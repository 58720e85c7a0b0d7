"""Command-line front end.

Subcommands: eval | sweep | compare | envelope | symbols.  Single values
and reports come out as JSON, grid sweeps as CSV with a fixed header
``r,t,method,value,est_error`` and 17-significant-digit floats, so a
parsed sweep reproduces the in-memory table exactly.  Identical
invocations produce byte-identical output (fixed summation orders, no
timestamps).

Exit codes: 0 success, 2 usage error, 3 numeric failure (a JSON
diagnostic goes to stdout in that case).

An INI config file (section ``[levykernel]``) may set default ``tol``
and ``threads``; the environment variable LEVYKERNEL_THREADS caps sweep
parallelism regardless.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .errors import LevyKernelError
from .mellin import ContourSpec
from .oracle import stable_oracle, symbol_oracle
from .radial_symbol import (general_kernel_mb, general_leading_term,
                            make_symbol, perturbed_leading_term,
                            symbol_registry)
from .stable_kernel import (KernelSpec, envelope_ratio, evaluate,
                            kernel_at_origin, leading_term,
                            sum_symbol_envelope_check)

_METHODS = ("auto", "mb", "series", "small-r", "closed", "oracle")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_config(path):
    cfg = {"tol": 1e-9, "threads": 1}
    if not path:
        return cfg
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file {path!r} not found")
    if parser.has_section("levykernel"):
        sec = parser["levykernel"]
        if "tol" in sec:
            cfg["tol"] = float(sec["tol"])
        if "threads" in sec:
            cfg["threads"] = int(sec["threads"])
    return cfg


def _thread_cap(requested: int) -> int:
    env = os.environ.get("LEVYKERNEL_THREADS")
    cap = int(env) if env else requested
    return max(1, min(requested, cap))


def _parse_symbol(text):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    obj = json.loads(text)
    kind = obj.pop("kind")
    return make_symbol(kind, **obj)


def _single_value(args, method, spec, sym, tol):
    """One (value, est_error, method_tag) for either a stable spec or a
    general symbol."""
    if sym is not None:
        if method in ("auto", "mb"):
            a = general_kernel_mb(sym, args.d, args.beta, args.t, args.r,
                                  k=args.k, tol=tol,
                                  contour=_contour_from(args))
        elif method == "oracle":
            a = symbol_oracle(sym, args.d, args.beta, args.t, args.r)
        else:
            raise LevyKernelError(
                f"method {method!r} applies to stable specs only")
        return a
    contour = _contour_from(args)
    return evaluate(spec, args.r, method=method, tol=tol, contour=contour)


def _contour_from(args):
    c = getattr(args, "contour_c", None)
    if c is None:
        return None
    return ContourSpec(abscissa=c, half_height=getattr(args, "contour_t", 0.0)
                       or 1e-9, nodes=64)


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_eval(args, cfg) -> int:
    tol = args.tol if args.tol is not None else cfg["tol"]
    sym = _parse_symbol(args.symbol) if args.symbol else None
    spec = None
    if sym is None:
        spec = KernelSpec(d=args.d, alpha=args.alpha, beta=args.beta, t=args.t)
    if args.r == 0.0 and sym is None:
        v = kernel_at_origin(spec)
        payload = {"value": v, "est_error": abs(v) * 1e-15,
                   "method": "closed_form", "diagnostics": {"origin": True}}
    else:
        a = _single_value(args, args.method, spec, sym, tol)
        diags = {k: v for k, v in a.diagnostics.items()
                 if isinstance(v, (int, float, bool, str))}
        payload = {"value": a.value, "est_error": a.est_error,
                   "method": a.method, "diagnostics": diags}
    payload["spec"] = _spec_dict(args, sym)
    if args.verify and args.r > 0:
        ref = (symbol_oracle(sym, args.d, args.beta, args.t, args.r)
               if sym is not None else stable_oracle(spec, args.r))
        gap = abs(payload["value"] - ref.value) / max(abs(ref.value), 1e-300)
        payload["verify"] = {"oracle_value": ref.value, "rel_gap": gap}
    _emit(args, _json_dumps(payload))
    return 0


def _spec_dict(args, sym):
    base = {"d": args.d, "beta": args.beta, "t": args.t,
            "version": __version__}
    if sym is not None:
        base["symbol"] = {"kind": sym.name, **sym.params}
    else:
        base["alpha"] = args.alpha
    return base


def _r_grid(args):
    if args.points < 1:
        raise LevyKernelError("need at least one grid point")
    if args.points == 1:
        return np.array([args.r_min])
    if args.log:
        if args.r_min <= 0:
            raise LevyKernelError("log spacing needs r_min > 0")
        return np.geomspace(args.r_min, args.r_max, args.points)
    return np.linspace(args.r_min, args.r_max, args.points)


def cmd_sweep(args, cfg) -> int:
    tol = args.tol if args.tol is not None else cfg["tol"]
    sym = _parse_symbol(args.symbol) if args.symbol else None
    spec = None
    if sym is None:
        spec = KernelSpec(d=args.d, alpha=args.alpha, beta=args.beta, t=args.t)
    methods = args.method.split(",")
    for m in methods:
        if m not in _METHODS:
            raise LevyKernelError(f"unknown method {m!r}")
    if args.verify and "oracle" not in methods:
        methods = methods + ["oracle"]
    grid = _r_grid(args)

    jobs = [(float(r), m) for r in grid for m in methods]

    def run(job):
        r, m = job
        if r == 0.0 and sym is None:
            v = kernel_at_origin(spec)
            return r, "closed_form", v, abs(v) * 1e-15
        ns = argparse.Namespace(**vars(args))
        ns.r = r
        a = _single_value(ns, m, spec, sym, tol)
        return r, a.method, a.value, a.est_error

    workers = _thread_cap(args.threads if args.threads else cfg["threads"])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    rows.sort(key=lambda row: (row[0], row[1]))

    lines = [f"# spec={json.dumps(_spec_dict(args, sym), sort_keys=True)}"]
    lines.append("r,t,method,value,est_error")
    for r, m, v, e in rows:
        lines.append(f"{_fmt(r)},{_fmt(args.t)},{m},{_fmt(v)},{_fmt(e)}")
    if len(methods) > 1:
        gap = _max_rel_gap(rows)
        lines.append(f"# max_rel_gap={_fmt(gap)}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _max_rel_gap(rows) -> float:
    by_r: dict[float, list[float]] = {}
    for r, _m, v, _e in rows:
        by_r.setdefault(r, []).append(v)
    gap = 0.0
    for vals in by_r.values():
        if len(vals) > 1:
            scale = max(abs(v) for v in vals)
            if scale > 0:
                gap = max(gap, (max(vals) - min(vals)) / scale)
    return gap


def parse_sweep_csv(text: str):
    """Parse the CSV emitted by ``sweep`` back into (metadata, rows)."""
    meta = {}
    rows = []
    for line in text.strip().splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            try:
                meta[key] = json.loads(val)
            except json.JSONDecodeError:
                meta[key] = float(val)
        elif line and not line.startswith("r,"):
            r, t, m, v, e = line.split(",")
            rows.append((float(r), float(t), m, float(v), float(e)))
    return meta, rows


def cmd_compare(args, cfg) -> int:
    tol = args.tol if args.tol is not None else cfg["tol"]
    sym = _parse_symbol(args.symbol) if args.symbol else None
    spec = None
    if sym is None:
        spec = KernelSpec(d=args.d, alpha=args.alpha, beta=args.beta, t=args.t)
    methods = args.method.split(",")
    grid = _r_grid(args)
    values = {}
    for m in methods:
        col = []
        for r in grid:
            ns = argparse.Namespace(**vars(args))
            ns.r = float(r)
            col.append(_single_value(ns, m, spec, sym, tol).value)
        values[m] = np.asarray(col)

    pairwise = {}
    for i, m1 in enumerate(methods):
        for m2 in methods[i + 1:]:
            scale = np.maximum(np.abs(values[m1]), np.abs(values[m2]))
            scale[scale == 0] = 1.0
            pairwise[f"{m1}|{m2}"] = float(
                np.max(np.abs(values[m1] - values[m2]) / scale))
    if len(methods) == 1:
        pairwise[f"{methods[0]}|{methods[0]}"] = 0.0

    report = {"pairwise_max_rel_diff": pairwise, "r_grid": grid.tolist()}

    # tail behavior against the applicable first-order law
    if sym is not None:
        try:
            lt = general_leading_term(sym, args.d, args.beta, args.t)
        except LevyKernelError:
            lt = None
            if sym.name in ("stable", "perturbed", "sum_stable"):
                a = sym.params.get("a", sym.params.get("alpha"))
                lt = perturbed_leading_term(a, 0.0, args.d, args.beta, args.t)
    else:
        term = leading_term(spec)
        pref = spec.t ** (-(spec.d + spec.beta) / spec.alpha)
        sc = spec.t ** (-1.0 / spec.alpha)
        lt = {"coefficient": term.coefficient * pref * sc ** (-term.exponent),
              "exponent": term.exponent}
    if lt is not None and grid.size >= 3 and np.all(grid > 0):
        ref = values[methods[0]]
        mask = np.abs(ref) > 0
        x = np.log(grid[mask])
        y = np.log(np.abs(ref[mask]))
        slope = float(np.polyfit(x, y, 1)[0])
        coef = float(np.sign(ref[mask][-1]) * math.exp(
            float(np.mean(y + lt["exponent"] * x))))
        report["tail_fit"] = {
            "fitted_slope": slope,
            "theory_slope": -lt["exponent"],
            "fitted_coefficient": coef,
            "theory_coefficient": lt["coefficient"],
            "coefficient_ratio": coef / lt["coefficient"],
        }
    _emit(args, _json_dumps(report))
    return 0


def cmd_envelope(args, cfg) -> int:
    grid = _r_grid(args)
    if args.family == "stable":
        spec = KernelSpec(d=args.d, alpha=args.alpha, beta=args.beta, t=args.t)
        out = envelope_ratio(spec, grid)
        out["holds"] = bool(np.isfinite(out["min_ratio"])
                            and np.isfinite(out["max_ratio"])
                            and out["max_ratio"] > 0)
    else:
        out = sum_symbol_envelope_check(args.d, args.a, args.b, args.t, grid)
    _emit(args, _json_dumps(out))
    return 0


def cmd_symbols(args, cfg) -> int:
    reg = symbol_registry()
    out = [{"kind": name, "params": params} for name, params in sorted(reg.items())]
    _emit(args, _json_dumps(out))
    return 0


def _add_common(p, with_alpha=True):
    p.add_argument("--d", type=int, default=2, help="dimension (>= 2)")
    if with_alpha:
        p.add_argument("--alpha", type=float, default=1.5,
                       help="stability index in (0, 2]")
    p.add_argument("--beta", type=float, default=0.0,
                   help="fractional derivative order (>= 0)")
    p.add_argument("--t", type=float, default=1.0, help="time (> 0)")
    p.add_argument("--symbol", type=str, default=None,
                   help='radial symbol as inline JSON or @file, e.g. '
                        '\'{"kind":"relativistic","alpha":1,"m":1}\'')
    p.add_argument("--k", type=int, default=None,
                   help="derivative order for the general-symbol contour")
    p.add_argument("--contour-c", dest="contour_c", type=float, default=None,
                   help="contour abscissa override")
    p.add_argument("--tol", type=float, default=None, help="target tolerance")
    p.add_argument("--out", type=str, default=None, help="write output here")
    p.add_argument("--config", type=str, default=None,
                   help="INI config file with [levykernel] defaults")
    p.add_argument("--json", action="store_true",
                   help="accepted for symmetry; single values are JSON anyway")


def _add_grid(p):
    p.add_argument("--r-min", dest="r_min", type=float, default=0.1)
    p.add_argument("--r-max", dest="r_max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--log", action="store_true", help="log-spaced grid")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="levykernel",
        description="Heat kernels of stable and radial Levy processes: "
                    "contour integrals, residue expansions, and an "
                    "oscillatory-quadrature oracle.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one kernel value")
    _add_common(pe)
    pe.add_argument("--r", type=float, required=True)
    pe.add_argument("--method", choices=_METHODS, default="auto")
    pe.add_argument("--verify", action="store_true",
                    help="run the oracle alongside and embed the gap")
    pe.set_defaults(func=cmd_eval)

    ps = sub.add_parser("sweep", help="evaluate over an r grid, emit CSV")
    _add_common(ps)
    _add_grid(ps)
    ps.add_argument("--method", type=str, default="auto",
                    help="comma-separated list from "
                         "{auto,mb,series,small-r,closed,oracle}")
    ps.add_argument("--verify", action="store_true",
                    help="add oracle rows and a max_rel_gap footer")
    ps.add_argument("--threads", type=int, default=None,
                    help="parallel grid evaluation (capped by "
                         "LEVYKERNEL_THREADS)")
    ps.set_defaults(func=cmd_sweep)

    pc = sub.add_parser("compare", help="pairwise method differences and "
                                        "tail fits, as JSON")
    _add_common(pc)
    _add_grid(pc)
    pc.add_argument("--method", type=str, default="mb,oracle")
    pc.set_defaults(func=cmd_compare)

    pv = sub.add_parser("envelope", help="two-sided comparison ratios")
    _add_common(pv)
    _add_grid(pv)
    pv.add_argument("--family", choices=("stable", "sum"), default="stable")
    pv.add_argument("--a", type=float, default=0.5,
                    help="lower exponent of the two-power symbol")
    pv.add_argument("--b", type=float, default=1.5,
                    help="upper exponent of the two-power symbol")
    pv.set_defaults(func=cmd_envelope)

    pl = sub.add_parser("symbols", help="list the built-in radial symbols")
    pl.add_argument("--out", type=str, default=None)
    pl.add_argument("--config", type=str, default=None)
    pl.set_defaults(func=cmd_symbols)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _load_config(getattr(args, "config", None))
    except (FileNotFoundError, ValueError) as exc:
        ap.exit(2, f"config error: {exc}\n")
    try:
        return args.func(args, cfg)
    except (LevyKernelError, ValueError, ZeroDivisionError, OverflowError) as exc:
        sys.stdout.write(_json_dumps(
            {"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
