"""Command-line front end.

    gl2sets theorem2  --q Q [--format text|json]
    gl2sets theorem3  --q Q --l L
    gl2sets remark4   --q Q --l L
    gl2sets structure --q Q
    gl2sets decompose --q Q --set X|Y|Xbar|Ybar --subgroup B|T|N|Tprime|Nprime

Exit codes: 0 success, 1 refuted or no witness, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import (
    DegreeTooLarge,
    GroupTooLarge,
    HypothesisNotSatisfied,
    NoWitnessFound,
    NotPrime,
    NotPrimePower,
    UnsupportedParameter,
)
from .linear_group import MAX_GROUP_ORDER
from .theorems import (
    REFUTED,
    VERIFIED,
    Check,
    VerificationReport,
    context,
    decompose,
    derived_constants,
    find_remark4_witness,
    verify_proof_structure,
    verify_theorem2,
    verify_theorem3,
)

SCHEMA_VERSION = "1"
SET_NAMES = ("X", "Y", "Xbar", "Ybar")
SUBGROUP_NAMES = ("B", "T", "N", "Tprime", "Nprime")
BAD_ARGUMENT = (NotPrimePower, NotPrime, DegreeTooLarge, GroupTooLarge,
                UnsupportedParameter, HypothesisNotSatisfied, ValueError)


def _check_document(c: Check) -> dict:
    doc = {"name": c.name, "status": c.status, "details": c.details}
    if c.witness is not None:
        doc["witness"] = c.witness
    return doc


def report_document(command: str, rep: VerificationReport, timing_ms: int) -> dict:
    params = {"q": rep.parameters["q"]}
    if "l" in rep.parameters:
        params["l"] = rep.parameters["l"]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": params,
        "status": rep.status,
        "checks": [_check_document(c) for c in rep.checks],
        "derived_constants": rep.derived,
        "timing_ms": timing_ms,
    }


def _short(value) -> str:
    text = json.dumps(value, separators=(",", ":"))
    return text if len(text) <= 100 else text[:97] + "..."


def render_text(doc: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in doc["parameters"].items())
    lines = [f"{doc['command']} {params}: {doc['status']}"]
    d = doc["derived_constants"]
    lines.append(f"  |G| = {d['group_order']}  sizes {_short(d['set_sizes'])}")
    width = max((len(c["name"]) for c in doc["checks"]), default=0)
    for c in doc["checks"]:
        lines.append(f"  {c['name']:<{width}}  {c['status']}")
        for key, value in c["details"].items():
            if key == "bijection":
                continue
            if key == "orbit_profile":
                for set_name, profile in value.items():
                    lines.append(f"      orbits of {set_name}: {profile}")
                continue
            if key == "orbits":
                for o in value:
                    lines.append(f"      size {o['size']:>4}  stabilizer order {o['stabilizer_order']:>5}"
                                 f"  rep {o['representative']}")
                continue
            lines.append(f"      {key}: {_short(value)}")
        if "witness" in c:
            w = c["witness"]
            extra = w.get("fixed_counts") or w.get("character_values") or {}
            size = w.get("subgroup_order")
            lines.append(f"      witness: order {size} fixed counts {_short(extra)}" if size
                         else f"      witness: element {w.get('element')} values {_short(extra)}")
    return "\n".join(lines)


def _decompose_report(q: int, set_name: str, subgroup: str, max_order: int) -> VerificationReport:
    orbits = decompose(q, set_name, subgroup, max_order)
    rep = VerificationReport("decompose", {"q": q}, derived=derived_constants(context(q, max_order)))
    rep.add(Check("orbits", "pass", {
        "set": set_name,
        "subgroup": subgroup,
        "orbit_sizes": [o["size"] for o in orbits],
        "orbits": orbits,
    }))
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gl2sets", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_l=False):
        p.add_argument("--q", type=int, required=True)
        if need_l:
            p.add_argument("--l", type=int, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-order", type=int, default=MAX_GROUP_ORDER)
        return p

    common(sub.add_parser("theorem2", help="rational identities and B, T' set isomorphisms"))
    common(sub.add_parser("theorem3", help="Z_(l) statements under their divisibility hypotheses"), True)
    common(sub.add_parser("remark4", help="dihedral witnesses when l divides q^2-1"), True)
    common(sub.add_parser("structure", help="intermediate decompositions"))
    p = common(sub.add_parser("decompose", help="orbits of one set under one subgroup"))
    p.add_argument("--set", dest="set_name", choices=SET_NAMES, required=True)
    p.add_argument("--subgroup", choices=SUBGROUP_NAMES, required=True)
    return parser


def run(args: argparse.Namespace) -> VerificationReport:
    q, mo = args.q, args.max_order
    if args.command == "theorem2":
        return verify_theorem2(q, mo)
    if args.command == "theorem3":
        return verify_theorem3(q, args.l, mo)
    if args.command == "remark4":
        return find_remark4_witness(q, args.l, mo)
    if args.command == "structure":
        return verify_proof_structure(q, mo)
    return _decompose_report(q, args.set_name, args.subgroup, mo)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        rep = run(args)
    except NoWitnessFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BAD_ARGUMENT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = report_document(args.command, rep, int(round((time.perf_counter() - t0) * 1000)))
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(doc))
    if rep.status == REFUTED:
        return 1
    if args.command == "theorem2" and rep.status != VERIFIED:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
