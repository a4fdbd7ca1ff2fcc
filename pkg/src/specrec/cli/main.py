"""``specrec`` command line: invariants, mixed correlators, checks and series.

Exit codes: 0 success, 1 failing check or computation error, 2 usage or
parse error, 3 complexity bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Callable, Iterable

from ..curve import SpectralCurve
from ..mixed import ComplexityBoundExceeded, mixed_h, mixed_W
from .expansions import SeriesRequestError, coefficient_list, expand
from .parser import CurveSpecFile, ParseError, parse_curve

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

BUNDLED = ("airy", "gaussian", "ising")
CHECKS = (
    "w-symmetry",
    "f-symmetry",
    "total-derivative",
    "xy-residue",
    "h-w-relation",
    "quantum-polynomiality",
    "b000",
    "a100",
)


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ inputs


def load_spec(ref: str) -> CurveSpecFile:
    """A curve file path, or the name of a bundled curve."""
    p = Path(ref)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
    elif ref in BUNDLED:
        text = resources.files("specrec.cli").joinpath("curves", f"{ref}.curve").read_text(encoding="utf-8")
    else:
        raise UsageError(f"no curve file or bundled curve named {ref!r}")
    return parse_curve(text)


def threads() -> int:
    raw = os.environ.get("SPECREC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"SPECREC_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("SPECREC_THREADS must be a positive integer")
    return n


def int_list(text: str) -> list[int]:
    """``"2"`` or ``"0,1,2"``."""
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError("indices must be nonnegative")
    return out


# ------------------------------------------------------------------ output


class Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def record(self, kind: str, key: dict, payload, curve: str, text: str | None = None) -> None:
        if self.as_json:
            line = json.dumps({"kind": kind, "curve": curve, "key": key, "payload": payload}, sort_keys=True)
        else:
            k = ",".join(f"{a}={b}" for a, b in key.items())
            line = f"{curve} {kind}[{k}] = {payload if text is None else text}"
        print(line, file=self.stream)

    def line(self, text: str) -> None:
        print(text, file=self.stream)


# ------------------------------------------------------------------ commands


def cmd_invariants(curve: SpectralCurve, spec: CurveSpecFile, g_max: int, n_max: int, out: Out, precision: int) -> int:
    from ..invariants import free_energy, omega

    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n > n_max:
                continue
            w = omega(curve, g, n)
            out.record("omega", {"g": g, "n": n}, str(w.expr), spec.name)
    for g in range(2, g_max + 1):
        if spec.backend == "bigfloat":
            from mpmath import mp, nstr

            from ..invariants.bigfloat import bigfloat_free_energy

            F = bigfloat_free_energy(curve, g, precision)
            digits = max(15, int(precision * 0.30103))
            with mp.workprec(precision):
                val = nstr(F.real if hasattr(F, "real") else F, digits)
            out.record("free_energy", {"g": g}, val, spec.name)
        else:
            out.record("free_energy", {"g": g}, str(free_energy(curve, g)), spec.name)
    return EXIT_OK


def cmd_mixed(curve: SpectralCurve, spec: CurveSpecFile, g: int, k: int, l: int, kind: str, out: Out) -> int:
    fn = mixed_W if kind == "W" else mixed_h
    c = fn(curve, g, k, l)
    out.record(f"mixed_{kind}", {"g": g, "k": k, "l": l}, str(c.form.expr), spec.name)
    return EXIT_OK


def _check_jobs(name: str, args) -> list[tuple[dict, Callable[[SpectralCurve], object]]]:
    from .. import quantum_curve as qc
    from .. import symmetry_checks as sc

    gs, ks, ls = args.g, args.k, args.l
    if name == "a100":
        return [({}, sc.check_a100)]
    if name == "b000":
        return [({}, sc.check_b000)]
    if name == "f-symmetry":
        if min(gs) < 2:
            raise UsageError("f-symmetry needs --g >= 2")
        return [({"g": g}, lambda c, g=g: sc.check_F_symmetry(c, g)) for g in gs]
    if name == "quantum-polynomiality":
        return [({"g": g}, lambda c, g=g: qc.check_polynomiality(qc.build_quantum_level(c, g))) for g in gs]
    fn = {
        "w-symmetry": sc.check_W_symmetry,
        "total-derivative": sc.check_total_derivative,
        "xy-residue": sc.check_xy_residue,
        "h-w-relation": sc.check_H_W_relation,
    }[name]
    jobs = []
    for g, k, l in product(gs, ks, ls):
        if name == "w-symmetry" and k + l == 0:
            continue
        jobs.append(({"g": g, "k": k, "l": l}, lambda c, g=g, k=k, l=l: fn(c, g, k, l)))
    return jobs


def cmd_check(curves: list[tuple[SpectralCurve, CurveSpecFile]], name: str, args, out: Out) -> int:
    if name not in CHECKS:
        raise UsageError(f"unknown check {name!r}; expected one of {', '.join(CHECKS)}")
    jobs = [(c, params, fn) for c, _ in curves for params, fn in _check_jobs(name, args)]
    work = lambda j: j[2](j[0])  # noqa: E731
    n = threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            reports = list(pool.map(work, jobs))  # map keeps input order
    else:
        reports = [work(j) for j in jobs]
    ok = True
    for r in reports:
        out.line(r.to_json())
        ok = ok and r.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series(curve: SpectralCurve, spec: CurveSpecFile, of: str, at: str, terms: int, g: int, out: Out) -> int:
    var, s = expand(curve, of, at, terms, g)
    coeffs = coefficient_list(s)
    if out.as_json:
        payload = [[e, str(c)] for e, c in coeffs]
        out.line(json.dumps({"kind": "series", "curve": spec.name, "key": {"of": of, "at": at, "g": g},
                             "variable": var, "payload": payload}, sort_keys=True))
    else:
        for e, c in coeffs:
            out.line(f"({var})^{e}: {c}")
    return EXIT_OK


# ------------------------------------------------------------------ argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curve", action="append", metavar="FILE",
                        help=f"curve file, or a bundled name ({', '.join(BUNDLED)}); repeatable")
    common.add_argument("--backend", choices=("exact", "bigfloat"), help="overrides the curve file")
    common.add_argument("--precision", type=int, metavar="BITS", help="big-float working precision")
    common.add_argument("--json", action="store_true", help="JSON lines instead of text")

    p = argparse.ArgumentParser(prog="specrec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", parents=[common], help="omega_{g,n} and free energies")
    inv.add_argument("--g-max", type=int, default=1)
    inv.add_argument("--n-max", type=int, default=3, help="bound on 2g-2+n")

    mx = sub.add_parser("mixed", parents=[common], help="one mixed correlator")
    mx.add_argument("--g", type=int, default=0)
    mx.add_argument("--k", type=int, default=0)
    mx.add_argument("--l", type=int, default=0)
    mx.add_argument("--kind", choices=("W", "h"), default="W")

    ck = sub.add_parser("check", parents=[common], help="run a named check; JSON lines")
    ck.add_argument("name", help=", ".join(CHECKS))
    ck.add_argument("--g", type=int_list, default=[0])
    ck.add_argument("--k", type=int_list, default=[0])
    ck.add_argument("--l", type=int_list, default=[1])

    se = sub.add_parser("series", parents=[common], help="local expansion with exact coefficients")
    se.add_argument("--of", default="y", help="x, y or omega (the one-point omega_{g,1}/dx)")
    se.add_argument("--at", default="infinity_x", help="infinity_x, infinity_y, infinity or z=<rational>")
    se.add_argument("--terms", type=int, default=8)
    se.add_argument("--g", type=int, default=1, help="genus for --of omega")
    return p


def _curves(args) -> list[tuple[SpectralCurve, CurveSpecFile]]:
    refs = args.curve or []
    if not refs:
        raise UsageError("--curve is required")
    out = []
    for ref in refs:
        spec = load_spec(ref)
        if args.backend:
            spec.backend = args.backend
        if args.precision:
            spec.precision = args.precision
        try:
            curve = spec.build()
        except ValueError as e:  # degenerate or unsupported parametrization
            raise UsageError(f"{ref}: {e}") from None
        out.append((curve, spec))
    return out


def run(argv: Iterable[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    out = Out(args.json, stdout)
    try:
        curves = _curves(args)
        if args.command == "check":
            return cmd_check(curves, args.name, args, out)
        code = EXIT_OK
        for curve, spec in curves:
            if args.command == "invariants":
                code = max(code, cmd_invariants(curve, spec, args.g_max, args.n_max, out, spec.precision))
            elif args.command == "mixed":
                code = max(code, cmd_mixed(curve, spec, args.g, args.k, args.l, args.kind, out))
            else:
                code = max(code, cmd_series(curve, spec, args.of, args.at, args.terms, args.g, out))
        return code
    except (UsageError, ParseError, SeriesRequestError) as e:
        print(f"specrec: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ComplexityBoundExceeded as e:
        print(f"specrec: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (ArithmeticError, ValueError) as e:
        # module errors become a structured record
        print(json.dumps({"kind": "error", "type": type(e).__name__, "message": str(e)}, sort_keys=True),
              file=out.stream)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
