"""Command line front end: ``hecke-irred <subcommand> ...``.

Exit status 0 on success (a mathematical "not simple" is still a success),
1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import grothendieck as gr
from . import suites
from .hecke_oracle import composition_factors, evaluation_product, is_simple_evaluation_product
from .multisegments import ColumnSet, evaluation_multisegment, flag_minor_multisegment, hook_criterion, parse_multisegment, weakly_separated
from .partitions import Partition, hook_exponent_set
from .uqn_canonical import canonical_K


class DomainError(Exception):
    pass


def _canon(x: Any) -> Any:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_canon(v) for v in x]
    return x


def emit_report(result: dict, fmt: str = "json") -> str:
    result = _canon(result)
    if fmt == "json":
        return json.dumps(result, sort_keys=True)
    if not result:
        return ""
    width = max(len(k) for k in result)
    lines = []
    for k in sorted(result):
        v = result[k]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _weight(text: str) -> dict[int, int]:
    """"1:2,2:1" or a plain letter list "1,1,2"."""
    out: dict[int, int] = {}
    try:
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if ":" in tok:
                a, c = tok.split(":")
                out[int(a)] = out.get(int(a), 0) + int(c)
            else:
                out[int(tok)] = out.get(int(tok), 0) + 1
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse weight {text!r}")
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_hooks(args) -> dict:
    E = hook_exponent_set(args.partition, args.mode)
    return {"lambda": str(args.partition), "mode": args.mode, "E": E.sorted(), "Z_exponents": sorted(E.symmetric())}


def cmd_irreducible(args) -> dict:
    lam, pts = args.lam, args.points
    verdict = hook_criterion(lam, pts, args.mode)
    out: dict = {
        "lambda": str(lam),
        "points": pts,
        "u": str(args.u),
        "simple": verdict.simple,
        "violations": [list(v) for v in verdict.violations],
    }
    if args.method in ("product", "all"):
        rep = gr.is_simple_product([evaluation_multisegment(lam, a) for a in pts])
        out["product"] = rep.to_json()
    if args.method in ("burnside", "all"):
        simple, dim = is_simple_evaluation_product(lam, pts, args.u)
        out["burnside"] = {"simple": simple, "dim": dim}
        if args.factors:
            M = evaluation_product(lam, [args.u**a for a in pts], args.u)
            out["factors"] = {str(m): c for m, c in sorted(composition_factors(M).items())}
    return out


def cmd_canonical(args) -> dict:
    if args.weight:
        nu = args.weight
    elif args.multisegment:
        nu = parse_multisegment(args.multisegment).dimvector()
    else:
        raise DomainError("give --weight or --multisegment")
    return canonical_K(None, nu).to_json()


def cmd_dual_product(args) -> dict:
    ms = [parse_multisegment(t) for t in args.multisegments]
    return gr.is_simple_product(ms).to_json()


def cmd_qcommute(args) -> dict:
    sets = []
    for text in args.sets:
        sets.append(ColumnSet(frozenset(_ints(text)), args.window))
    A, B = sets
    ms = [flag_minor_multisegment(A), flag_minor_multisegment(B)]
    rep = gr.is_simple_product(ms)
    return {
        "A": str(A),
        "B": str(B),
        "N": args.window,
        "multisegments": [str(m) for m in ms],
        "weakly_separated": weakly_separated(A, B),
        "simple_product": rep.simple,
        "agree": weakly_separated(A, B) == rep.simple,
    }


def cmd_rmatrix(args) -> dict:
    from .rmatrix import singularity_scan

    rep = singularity_scan(args.lam, args.window, args.v)
    return rep.to_json()


def cmd_verify(args) -> dict:
    fn = suites.SUITES[args.suite]
    res = fn(args.max_size)
    # timings would break byte-identical output
    res.pop("seconds", None)
    if not args.verbose:
        res.pop("rows", None)
    return res


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke-irred", description="Irreducibility of induced evaluation modules of affine Hecke algebras.")
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hooks", help="hook-length exponent set E_lam and the singular set Z_lam")
    h.add_argument("partition", type=_partition)
    h.add_argument("--mode", choices=["positive", "literal"], default="positive")
    h.set_defaults(func=cmd_hooks)

    i = sub.add_parser("irreducible", help="simplicity of S_lam(u^a1) x ... x S_lam(u^am) (hook criterion, optionally checked by the other routes)")
    i.add_argument("--lambda", dest="lam", type=_partition, required=True)
    i.add_argument("--points", type=_ints, required=True)
    i.add_argument("--u", type=Fraction, default=Fraction(3))
    i.add_argument("--mode", choices=["positive", "literal"], default="positive")
    i.add_argument("--method", choices=["hook", "product", "burnside", "all"], default="hook")
    i.add_argument("--factors", action="store_true", help="also list composition factors (burnside route)")
    i.set_defaults(func=cmd_irreducible)

    c = sub.add_parser("canonical-basis", help="K-matrix expressing the canonical basis on PBW monomials")
    c.add_argument("--weight", type=_weight)
    c.add_argument("--multisegment")
    c.set_defaults(func=cmd_canonical)

    d = sub.add_parser("dual-product", help="expand a product of dual canonical elements G*(m1)...G*(mk) at q = 1")
    d.add_argument("multisegments", nargs="+")
    d.set_defaults(func=cmd_dual_product)

    q = sub.add_parser("qcommute", help="flag minors: weak separation against simplicity of the product")
    q.add_argument("sets", nargs=2, help="row sets such as 2 and 1,3")
    q.add_argument("--window", type=int, required=True)
    q.set_defaults(func=cmd_qcommute)

    r = sub.add_parser("rmatrix-poles", help="singularities of the normalised R-matrix on V_lam(z1) x V_lam(z2)")
    r.add_argument("--lambda", dest="lam", type=_partition, required=True)
    r.add_argument("--window", type=int, required=True, help="N of sl_N")
    r.add_argument("--v", type=Fraction, default=Fraction(2))
    r.set_defaults(func=cmd_rmatrix)

    v = sub.add_parser("verify", help="run a verification grid (triple agreement, K gate, flag minors, ...)")
    v.add_argument("--suite", choices=sorted(suites.SUITES), required=True)
    v.add_argument("--max-size", type=int, default=3)
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def dispatch(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = args.func(args)
    except (DomainError, ValueError, ArithmeticError, LookupError) as e:
        print(emit_report({"error": str(e)}, args.format), file=sys.stderr)
        return 1
    print(emit_report(result, args.format), file=out)
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
