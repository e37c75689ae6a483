"""Command-line front end: one subcommand per engine operation.

Output is JSON (sorted keys, schema-versioned) or, for the D_k table,
CSV with columns k, D_k, d_k, witness.  Exit codes: 0 success, 1 a
verification reported failure, 2 bad input or domain error, 3 a
capacity/budget limit was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import CapacityError, DomainError, ZeroSumLabError
from .groups import AbelianGroup, SemidirectGroup, parse_groupspec
from .sequences import load_kmax_cache, save_kmax_cache, ZSL_CACHE_ENV
from .davenport import davenport_k, davenport_table, eta, linearity_profile
from .lemmas import verify_direct_product_bound, zero_sum_with_support
from .invariants import (
    beta_k,
    parse_repspec,
    verify_beta_equals_davenport,
    verify_sigma_az2,
    verify_sigma_zpzd,
)
from .presented import (
    DEFAULT_RING_CUTOFF,
    PresentedGradedAlgebra,
    parse_generator_spec,
)
from .suite import verify_all

SCHEMA_VERSION = "1"


def _abelian(spec: str) -> AbelianGroup:
    group = parse_groupspec(spec)
    if not isinstance(group, AbelianGroup):
        raise DomainError(f"{spec} is not abelian; this command needs an abelian group")
    return group


def _semidirect(spec: str) -> SemidirectGroup:
    group = parse_groupspec(spec)
    if not isinstance(group, SemidirectGroup):
        raise DomainError(f"{spec} is not an SD(p,d,e) group spec")
    return group


def _cmd_davenport(args):
    report = davenport_k(_abelian(args.group), args.k, budget_seconds=args.budget_seconds)
    return report.as_dict()


def _cmd_dk_table(args):
    table = davenport_table(_abelian(args.group), args.k_upto,
                            budget_seconds=args.budget_seconds)
    return {
        "group": table[0].as_dict()["group"],
        "k_upto": args.k_upto,
        "rows": [r.as_dict() for r in table],
    }


def _cmd_eta(args):
    A = _abelian(args.group)
    return {"group": A.spec(), "eta": eta(A, budget_seconds=args.budget_seconds)}


def _cmd_linearity(args):
    profile = linearity_profile(_abelian(args.group), args.k_upto,
                                budget_seconds=args.budget_seconds)
    return profile.as_dict()


def _cmd_support_lemma(args):
    try:
        support = [int(s) for s in args.support.split(",") if s.strip() != ""]
    except ValueError:
        raise DomainError(f"support must be comma-separated integers, got {args.support!r}")
    T = zero_sum_with_support(args.p, support)
    return {
        "p": args.p,
        "S": sorted(set(support)),
        "sequence": T.literal(),
        "length": T.length,
        "multiplicities": {str(g[0]): m for g, m in T.items},
    }


def _cmd_product_bound(args):
    return verify_direct_product_bound(
        _abelian(args.group_g), _abelian(args.group_h), args.r, args.s
    )


def _cmd_beta(args):
    return beta_k(parse_repspec(args.rep), args.k)


def _cmd_crosscheck(args):
    return verify_beta_equals_davenport(_abelian(args.group), args.k,
                                        budget_seconds=args.budget_seconds)


def _cmd_sigma_zpzd(args):
    return verify_sigma_zpzd(_semidirect(args.group))


def _cmd_sigma_az2(args):
    return verify_sigma_az2(args.n, args.e)


def _cmd_ring_beta(args):
    generators = parse_generator_spec(args.gens)
    relations = [r.strip() for r in args.rels.split(",") if r.strip()]
    algebra = PresentedGradedAlgebra(generators, relations)
    return algebra.beta_k(args.k, cutoff=args.cutoff)


def _cmd_verify_all(args):
    groups = None
    if args.groups:
        groups = [g.strip() for g in args.groups.split(",") if g.strip()]
    return verify_all(budget_seconds=args.budget_seconds, groups=groups)


def _dk_table_csv(payload) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["k", "D_k", "d_k", "witness"])
    for row in payload["rows"]:
        writer.writerow([row["k"], row["value_Dk"], row["value_dk"],
                         row["extremal_witness"]])
    return out.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsl",
        description="Zero-sum constants of finite abelian groups and "
                    "Noether-type degree bounds of monomial invariant rings.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (csv only for dk-table)")
    common.add_argument("--budget-seconds", type=float, default=None,
                        help="abort long searches after this many seconds")
    common.add_argument("--out", default=None, help="write the report to a file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("davenport", parents=[common],
                       help="D_k of an abelian group, with extremal witness")
    p.add_argument("group")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(handler=_cmd_davenport)

    p = sub.add_parser("dk-table", parents=[common],
                       help="D_1 … D_k table of an abelian group")
    p.add_argument("group")
    p.add_argument("--k-upto", type=int, required=True)
    p.set_defaults(handler=_cmd_dk_table)

    p = sub.add_parser("eta", parents=[common],
                       help="shortest length forcing a zero-sum block of length ≤ exp(A)")
    p.add_argument("group")
    p.set_defaults(handler=_cmd_eta)

    p = sub.add_parser("linearity", parents=[common],
                       help="detect D_k = k·exp(A) + D0 on a computed table")
    p.add_argument("group")
    p.add_argument("--k-upto", type=int, default=4)
    p.set_defaults(handler=_cmd_linearity)

    p = sub.add_parser("support-lemma", parents=[common],
                       help="zero-sum sequence over Z_p with prescribed support")
    p.add_argument("p", type=int)
    p.add_argument("support", help="comma-separated non-zero residues, e.g. 1,2,4")
    p.set_defaults(handler=_cmd_support_lemma)

    p = sub.add_parser("product-bound", parents=[common],
                       help="D_{r+s-1}(G×H) ≥ D_r(G) + D_s(H) − 1 with witness")
    p.add_argument("group_g")
    p.add_argument("group_h")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.set_defaults(handler=_cmd_product_bound)

    p = sub.add_parser("beta", parents=[common],
                       help="β_k of a monomial representation: reg(...) or ind(...)")
    p.add_argument("rep")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(handler=_cmd_beta)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="β_k of the regular representation against D_k")
    p.add_argument("group")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(handler=_cmd_crosscheck)

    p = sub.add_parser("sigma-zpzd", parents=[common],
                       help="verify σ(Z_p⋊Z_d) = p via the induced module")
    p.add_argument("group", help="SD(p,d,e)")
    p.set_defaults(handler=_cmd_sigma_zpzd)

    p = sub.add_parser("sigma-az2", parents=[common],
                       help="verify the two-variable invariants x^e+y^e, xy")
    p.add_argument("n", type=int)
    p.add_argument("e", type=int)
    p.set_defaults(handler=_cmd_sigma_az2)

    p = sub.add_parser("ring-beta", parents=[common],
                       help="β_k of a presented graded algebra, up to a cutoff")
    p.add_argument("--gens", required=True, help='e.g. "a:1,b:3"')
    p.add_argument("--rels", required=True, help='e.g. "b^3-a^9, a*b^2-a^7"')
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cutoff", type=int, default=DEFAULT_RING_CUTOFF)
    p.set_defaults(handler=_cmd_ring_beta)

    p = sub.add_parser("verify-all", parents=[common],
                       help="run the full verification suite")
    p.add_argument("--groups", default=None,
                   help="comma-separated group specs to restrict the suite to")
    p.set_defaults(handler=_cmd_verify_all)

    return parser


def _emit(args, payload) -> None:
    if args.format == "csv":
        if args.command != "dk-table":
            raise DomainError("csv output is only defined for dk-table")
        text = _dk_table_csv(payload)
    else:
        if "schema_version" not in payload:
            payload = {"schema_version": SCHEMA_VERSION, **payload}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise DomainError(f"cannot write {args.out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cache_dir = os.environ.get(ZSL_CACHE_ENV)
    if cache_dir:
        load_kmax_cache(cache_dir)
    try:
        payload = args.handler(args)
        _emit(args, payload)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 3
    except ZeroSumLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if cache_dir:
            save_kmax_cache(cache_dir)
    if payload.get("passed") is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
