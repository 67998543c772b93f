"""Command-line front end.

Subcommands: compute, verify, tableau-stats, ops, mlq, jack.  Text output is
deterministic (sorted keys everywhere) and byte-identical across worker
counts; --format json emits a document that re-parses to the same value.
Exit codes: 0 ok, 1 verification failure, 2 usage/cost/parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fillings, flipops, formulas, mlq, shapes
from .qtalg import rational_str

DEFAULT_MAX_NODES = 10**8
DEFAULT_METHOD = {
    "P": "quinv-compact",
    "J": "quinv",
    "Htilde": "quinv",
    "Jack": "quinv",
}


class UsageError(Exception):
    pass


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= max(n - i, 0)
    return out


def estimate_nodes(lam, n_vars, family, method):
    """Predicted enumeration size; non-attacking routes get the per-row
    distinctness pruning factored in."""
    cells = sum(lam)
    if family == "Htilde":
        return n_vars**cells
    conj = shapes.conjugate(lam)
    base = 1
    for width in conj:
        base *= _falling(n_vars, width)
    return base


def _check_cap(args, lam, family, method):
    cap = args.max_nodes
    if cap is None:
        cap = int(os.environ.get("MACQ_MAX_NODES", DEFAULT_MAX_NODES))
    estimate = estimate_nodes(lam, args.nvars, family, method)
    if estimate > cap:
        raise UsageError(
            f"refusing to enumerate: estimated {estimate} nodes exceeds the "
            f"cap of {cap} (raise with --max-nodes or MACQ_MAX_NODES)"
        )


def _poly_json(r):
    return {
        "num": [[a, b, c] for (a, b), c in sorted(r.num.terms.items())],
        "den": [[a, b, c] for (a, b), c in sorted(r.den.terms.items())],
    }


def _coeff_text(coeff):
    if hasattr(coeff, "coeffs"):  # PolyAlpha
        return str(coeff)
    return rational_str(coeff)


def _coeff_json(coeff):
    if hasattr(coeff, "coeffs"):
        return {"alpha": list(coeff.coeffs)}
    return _poly_json(coeff)


def _emit_poly(args, poly, meta):
    if args.basis == "msym":
        msym = poly.to_msym()
        keys = sorted(msym, reverse=True)
        if args.format == "json":
            doc = dict(meta)
            doc["basis"] = "msym"
            doc["coefficients"] = [
                {"m": list(mu), "coefficient": _coeff_json(msym[mu])} for mu in keys
            ]
            print(json.dumps(doc, sort_keys=True))
        else:
            for mu in keys:
                label = "m[" + ",".join(str(p) for p in mu) + "]"
                print(f"{label}  {_coeff_text(msym[mu])}")
            if not keys:
                print("0")
    else:
        keys = sorted(poly.terms, reverse=True)
        if args.format == "json":
            doc = dict(meta)
            doc["basis"] = "monomial"
            doc["coefficients"] = [
                {"exponents": list(e), "coefficient": _coeff_json(poly.terms[e])}
                for e in keys
            ]
            print(json.dumps(doc, sort_keys=True))
        else:
            for e in keys:
                mono = "*".join(
                    f"x{i + 1}" if p == 1 else f"x{i + 1}^{p}"
                    for i, p in enumerate(e)
                    if p
                ) or "1"
                print(f"{mono}  {_coeff_text(poly.terms[e])}")
            if not keys:
                print("0")


def cmd_compute(args):
    lam = shapes.parse_partition(args.partition)
    family = args.family
    method = args.method or DEFAULT_METHOD[family]
    _check_cap(args, lam, family, method)
    poly = formulas.build(lam, args.nvars, family, method, workers=args.workers)
    meta = {
        "family": family,
        "method": method,
        "partition": list(lam),
        "nvars": args.nvars,
    }
    _emit_poly(args, poly, meta)
    return 0


def cmd_verify(args):
    report = formulas.verify_suite(
        max_cells=args.max_cells,
        n_vars=args.nvars,
        suite=args.suite,
        corrupt=args.inject_failure,
    )
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for check in report["checks"]:
            status = "PASS" if check["pass"] else "FAIL"
            line = f"{status}  {check['identity']}  ({check['seconds']}s)"
            if not check["pass"]:
                line += f"  counterexample: {json.dumps(check['counterexample'], sort_keys=True)}"
            print(line)
        print("OK" if report["pass"] else "FAILED")
    return 0 if report["pass"] else 1


def _load_filling(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return fillings.Filling.parse(text)


def cmd_tableau_stats(args):
    f = _load_filling(args.file)
    stats = {
        "partition": list(f.shape),
        "maj": fillings.maj(f),
        "inv": fillings.inv(f),
        "coinv": fillings.coinv(f),
        "quinv": fillings.quinv(f),
        "coquinv": fillings.coquinv(f),
        "quinv_nonattacking": fillings.is_quinv_nonattacking(f),
        "inv_nonattacking": fillings.is_inv_nonattacking(f),
        "top_border": list(fillings.top_border(f)),
        "bottom_border": list(fillings.bottom_border(f)),
    }
    perm = fillings.perm_sigma(f)
    if args.format == "json":
        stats["perm"] = _poly_json(perm)
        print(json.dumps(stats, sort_keys=True))
    else:
        for key in sorted(stats):
            print(f"{key}: {stats[key]}")
        print(f"perm: {rational_str(perm)}")
    return 0


def cmd_ops(args):
    f = _load_filling(args.file)
    if args.operator == "rho":
        outcomes = flipops.rho_tilde(f, args.index)
    else:
        outcomes = flipops.tau_tilde(f, args.index)
    if args.format == "json":
        doc = {
            "operator": args.operator,
            "index": args.index,
            "outcomes": [
                {"tableau": g.to_json_dict(), "probability": _poly_json(p)}
                for g, p in outcomes
            ],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        for k, (g, p) in enumerate(outcomes, start=1):
            print(f"outcome {k} with probability {rational_str(p)}:")
            print(g)
        total = outcomes[0][1]
        for _, p in outcomes[1:]:
            total = total + p
        print(f"total probability: {rational_str(total)}")
    return 0


def cmd_mlq(args):
    f = _load_filling(args.file)
    n = args.nvars if args.nvars else None
    m = mlq.mlq_from_tableau(f, n)
    exps, full = mlq.wt_martin_full(m)
    tweight = mlq.wt_martin_t(m)
    if args.format == "json":
        doc = {
            "mlq": m.to_json_dict(),
            "weight_t": _poly_json(tweight),
            "weight_full": _poly_json(full),
            "x_exponents": list(exps),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(m.render())
        print(f"wt(M)(t) = {rational_str(tweight)}")
        print(f"wt(M)(X;q,t) coefficient = {rational_str(full)}")
        mono = "*".join(
            f"x{i + 1}" if p == 1 else f"x{i + 1}^{p}" for i, p in enumerate(exps) if p
        )
        print(f"x^M = {mono or '1'}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="macq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compute", help="build a polynomial")
    p.add_argument("--family", choices=("P", "J", "Htilde", "Jack"), default="P")
    p.add_argument("--method", default=None)
    p.add_argument("--partition", required=True)
    p.add_argument("--nvars", type=int, required=True)
    p.add_argument("--basis", choices=("monomial", "msym"), default="msym")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-nodes", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("jack", help="compute a Jack polynomial")
    p.add_argument("--partition", required=True)
    p.add_argument("--nvars", type=int, required=True)
    p.add_argument("--method", default="quinv")
    p.add_argument("--basis", choices=("monomial", "msym"), default="msym")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-nodes", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=lambda a: cmd_compute(_as_jack(a)))

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--max-cells", type=int, default=4)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--suite", choices=("all", "formulas", "operators", "mlq"),
                   default="all")
    p.add_argument("--inject-failure", action="store_true",
                   help="negative control: corrupt one probability")
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("tableau-stats", help="statistics of a tableau")
    p.add_argument("file", help="tableau file (rows or columns JSON), - for stdin")
    add_common(p)
    p.set_defaults(fn=cmd_tableau_stats)

    p = sub.add_parser("ops", help="apply a probabilistic flip operator")
    p.add_argument("operator", choices=("rho", "tau"))
    p.add_argument("--index", type=int, required=True)
    p.add_argument("file", help="tableau file, - for stdin")
    add_common(p)
    p.set_defaults(fn=cmd_ops)

    p = sub.add_parser("mlq", help="transport a tableau to its multiline queue")
    p.add_argument("file", help="tableau file, - for stdin")
    p.add_argument("--nvars", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=cmd_mlq)

    return parser


def _as_jack(args):
    args.family = "Jack"
    return args


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
