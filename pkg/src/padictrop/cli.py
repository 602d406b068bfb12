"""Command line interface: JSON in, JSON (or SVG, or a text table) out.

Exit codes: 0 on success, 1 on a domain error (or a failing example run),
2 on a usage error such as a malformed input file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, UnsupportedSupportSize
from .exact_arith import format_rational, parse_rational
from .exact_linalg import RationalMatrix, hermite_unimodular, rref
from .multiplicity import mult_bound, multiplicity_at, sharpness_system, univariate_reduction
from .newton import newton_polygon, root_valuations
from .oracle import poly_from_roots, rational_roots, shub_smale_family, squarefree_part, zp_root_count
from .poly import PolySystem, poly_from_json, poly_to_json, system_from_json, system_to_json
from .svg import curves_svg, polygon_svg
from .tropical import intersect_many, plane_trop_curve
from .valuation_count import (
    T_EQ_N_PLUS_2,
    LARGER,
    SpsExpression,
    assertion2_bound,
    classify,
    count_n_plus_2,
    count_small_support,
    maybetrivial_bound,
    sps_reduce,
)
from .worked import run_catalog


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# input helpers

def _load(args):
    if args.json is not None:
        text = args.json
    elif args.input is None:
        raise UsageError("an input is required (--in PATH, --in - for stdin, or --json TEXT)")
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from exc


def _poly(args):
    try:
        return poly_from_json(_load(args))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"malformed polynomial JSON: {exc}") from exc


def _system(args) -> PolySystem:
    obj = _load(args)
    try:
        if isinstance(obj, dict) and "terms" in obj:
            f, names = poly_from_json(obj)
            return PolySystem((f,), tuple(names))
        return system_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"malformed system JSON: {exc}") from exc


def _require_prime(args) -> int:
    if args.prime is None:
        raise UsageError("--prime is required")
    return args.prime


def _valuation_dict(vals: dict) -> dict:
    return {format_rational(k): v for k, v in sorted(vals.items())}


# subcommands; each returns (payload, exit code)

def cmd_polygon(args):
    p = _require_prime(args)
    f, _ = _poly(args)
    P = newton_polygon(f, p)
    if args.format == "svg":
        return polygon_svg(P), 0
    return {"polygon": P.to_json(), "valuations": _valuation_dict(root_valuations(f, p))}, 0


def cmd_trop(args):
    p = _require_prime(args)
    f, _ = _poly(args)
    C = plane_trop_curve(f, p)
    if args.format == "svg":
        return curves_svg([C]), 0
    return {"curve": C.to_json(), "balanced": C.is_balanced()}, 0


def cmd_intersect(args):
    p = _require_prime(args)
    F = _system(args)
    if len(F) < 2:
        raise UsageError("intersect needs at least two polynomials")
    curves = [plane_trop_curve(f, p) for f in F]
    rep = intersect_many(curves)
    if args.format == "svg":
        return curves_svg(curves, rep), 0
    return rep.to_json(), 0


def _matrix(args) -> RationalMatrix:
    obj = _load(args)
    try:
        if isinstance(obj, list):
            return RationalMatrix.from_rows([[parse_rational(x) for x in r] for r in obj])
        return RationalMatrix.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix JSON: {exc}") from exc


def cmd_rref(args):
    E, piv = rref(_matrix(args))
    return {"rref": E.to_json(), "pivots": list(piv)}, 0


def cmd_hnf(args):
    M = _matrix(args)
    for r in M.entries:
        if any(x.denominator != 1 for x in r):
            raise UsageError("hnf needs integer vectors")
    vecs = [[int(x) for x in r] for r in M.entries]
    T = hermite_unimodular(vecs, args.dim)
    images = [list(T.apply(v)) for v in vecs]
    return {"U": [list(r) for r in T.U], "U_inverse": [list(r) for r in T.U_inverse], "images": images}, 0


def cmd_reduce_sps(args):
    obj = _load(args)
    try:
        rows = [[poly_from_json(f)[0] for f in row] for row in obj["factors"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"malformed SPS JSON: {exc}") from exc
    e = SpsExpression.from_factors(rows)
    S = sps_reduce(e)
    return {"k": e.k, "m": e.m, "t": e.t, "system": system_to_json(S)}, 0


def cmd_count(args):
    p = _require_prime(args)
    F = _system(args)
    cls = classify(F)
    if cls.regime == LARGER:
        raise UnsupportedSupportSize(f"support size t={cls.t} exceeds n+2 for n={cls.n}")
    res = count_n_plus_2(F, p) if cls.regime == T_EQ_N_PLUS_2 else count_small_support(F, p)
    return {"class": cls.to_json(), "result": res.to_json()}, 0


def cmd_bound(args):
    if args.maybetrivial is not None:
        k, m, t = args.maybetrivial
        return maybetrivial_bound(k, m, t), 0
    if args.assertion2 is not None:
        return assertion2_bound(args.assertion2), 0
    if args.mult:
        F = _system(args)
        A = sorted({e for f in F for e in f.support()})
        return mult_bound(A, F.nvars), 0
    raise UsageError("bound needs one of --maybetrivial K M T, --assertion2 N, --mult")


def cmd_mult(args):
    if args.sharpness is not None:
        return sharpness_system(args.sharpness).to_json(), 0
    F = _system(args)
    top = tuple(json.loads(args.top)) if args.top else None
    red = univariate_reduction(F, top)
    out = red.to_json()
    out["cleared"] = poly_to_json(red.cleared, ["u"])
    out["roots"] = [{"u": format_rational(r), "multiplicity": m} for r, m in red.roots()]
    if args.zeta is not None:
        z = parse_rational(args.zeta)
        out["multiplicity_at"] = {"u": format_rational(z), "multiplicity": multiplicity_at(red.cleared, z)}
    return out, 0


def _parse_roots(text: str) -> list:
    roots = []
    for item in text.split(","):
        r, _, m = item.strip().partition(":")
        roots.append((parse_rational(r), int(m or 1)))
    return roots


def cmd_oracle(args):
    if args.planted:
        try:
            roots = _parse_roots(args.planted)
        except ValueError as exc:
            raise UsageError(f"malformed --planted list: {exc}") from exc
        pp = poly_from_roots(roots, parse_rational(args.scale))
        found = rational_roots(pp.f)
        return {
            "poly": poly_to_json(pp.f, ["x"]),
            "planted": [{"root": format_rational(r), "mult": m} for r, m in pp.roots],
            "found": [{"root": format_rational(r), "mult": m} for r, m in found],
            "agree": tuple(found) == tuple(pp.roots),
        }, 0
    if args.shub_smale is not None:
        p = _require_prime(args)
        h = shub_smale_family(args.shub_smale, p)
        out = {
            "n": args.shub_smale,
            "degree": h.degree(),
            "valuations": _valuation_dict(root_valuations(h, p)),
            "rational_roots": [{"root": format_rational(r), "mult": m} for r, m in rational_roots(h)],
        }
        if args.precision is not None:
            out["zp"] = zp_root_count(h, p, args.precision).to_json()
        return out, 0
    f, _ = _poly(args)
    if args.precision is not None:
        p = _require_prime(args)
        return zp_root_count(f, p, args.precision).to_json(), 0
    return {
        "rational_roots": [{"root": format_rational(r), "mult": m} for r, m in rational_roots(f)],
        "squarefree": poly_to_json(squarefree_part(f), ["x"]),
    }, 0


def cmd_examples(args):
    p = _require_prime(args)
    names = None if args.all or not args.names else args.names
    try:
        outcomes = run_catalog(p, names)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    failed = [o for o in outcomes if not o.passed]
    if args.format == "json":
        payload = {"prime": p, "results": [{"name": o.name, "passed": o.passed, "detail": o.detail}
                                           for o in outcomes]}
        return payload, 1 if failed else 0
    width = max(len(o.name) for o in outcomes)
    lines = [f"{o.name:<{width}}  {'PASS' if o.passed else 'FAIL'}  {o.detail}" for o in outcomes]
    lines.append(f"{len(outcomes) - len(failed)}/{len(outcomes)} passed at p = {p}")
    return "\n".join(lines) + "\n", 1 if failed else 0


# parser

def _add_io(sp, prime=True, fmt=("json",)):
    if prime:
        sp.add_argument("--prime", "-p", type=int)
    sp.add_argument("--in", dest="input", metavar="PATH", help="input JSON file, or - for stdin")
    sp.add_argument("--json", metavar="TEXT", help="inline input JSON")
    sp.add_argument("--format", choices=fmt, default=fmt[0])
    sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="padictrop", description="Exact p-adic valuation and tropical tools.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("polygon", help="Newton polygon and root valuations")
    _add_io(sp, fmt=("json", "svg"))
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("trop", help="tropical curve of a bivariate polynomial")
    _add_io(sp, fmt=("json", "svg"))
    sp.set_defaults(func=cmd_trop)

    sp = sub.add_parser("intersect", help="common points of the curves of a system")
    _add_io(sp, fmt=("json", "svg"))
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("rref", help="reduced row echelon form")
    _add_io(sp, prime=False)
    sp.set_defaults(func=cmd_rref)

    sp = sub.add_parser("hnf", help="unimodular triangularizing transform")
    _add_io(sp, prime=False)
    sp.add_argument("--dim", type=int, help="ambient dimension (default: vector length)")
    sp.set_defaults(func=cmd_hnf)

    sp = sub.add_parser("reduce-sps", help="sum-product-sparse expression to a polynomial system")
    _add_io(sp, prime=False)
    sp.set_defaults(func=cmd_reduce_sps)

    sp = sub.add_parser("count", help="valuation vector count for small supports")
    _add_io(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("bound", help="closed-form bounds")
    _add_io(sp, prime=False)
    sp.add_argument("--maybetrivial", nargs=3, type=int, metavar=("K", "M", "T"))
    sp.add_argument("--assertion2", type=int, metavar="N")
    sp.add_argument("--mult", action="store_true", help="multiplicity bound for the input support")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("mult", help="univariate reduction and root multiplicities")
    _add_io(sp, prime=False)
    sp.add_argument("--top", metavar="EXPS", help="JSON list naming the shared exponent a_{n+1}")
    sp.add_argument("--zeta", metavar="Q", help="report the multiplicity at this value of u")
    sp.add_argument("--sharpness", type=int, metavar="N", help="the sharpness family for n = N")
    sp.set_defaults(func=cmd_mult)

    sp = sub.add_parser("oracle", help="brute-force checks")
    _add_io(sp)
    sp.add_argument("--planted", metavar="ROOTS", help='comma list "r:m", e.g. "1:3,6:2,1/243:1"')
    sp.add_argument("--scale", default="1")
    sp.add_argument("--shub-smale", type=int, metavar="N")
    sp.add_argument("--precision", "-k", type=int, help="residue precision for Z_p root counts")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("examples", help="rerun the stored worked examples")
    sp.add_argument("--prime", "-p", type=int)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("names", nargs="*")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_examples)
    return ap


def _emit(payload, out_path) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, code = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # input the computation cannot accept
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    _emit(payload, getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
