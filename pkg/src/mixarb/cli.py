"""Command-line driver.

Exit codes: 0 feasible/ok, 2 infeasible with a certificate (or a failed
verification), 1 for malformed input or exceeded bounds. Every document is
JSON on standard output; errors go to standard output as an error document.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import conditions
from .documents import (
    DocumentError,
    LabeledInstance,
    certificate_from_dict,
    certificate_to_dict,
    dumps,
    labeled,
    parse_instance,
    parse_packing,
    render_instance,
    render_packing,
)
from .generate import random_instance
from .packing import Packing, brute_force_exists, pack_mixed, verify_packing

LEVELS = ("digraph", "ii", "iii", "mt", "kkt", "edmonds", "dns")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> LabeledInstance:
    return parse_instance(_read(path))


def cmd_solve(args: argparse.Namespace) -> int:
    li = _load(args.instance)
    result = pack_mixed(li.instance)
    sys.stdout.write(render_packing(result, li))
    return 0 if isinstance(result, Packing) else 2


def cmd_check(args: argparse.Namespace) -> int:
    li = _load(args.instance)
    if args.replay:
        doc = json.loads(_read(args.replay))
        # accepts a check document, a solve document or a bare certificate
        cert_doc = doc.get("certificate", doc)
        if isinstance(doc.get("status"), dict):
            cert_doc = doc["status"].get("certificate")
        if not isinstance(cert_doc, dict):
            raise DocumentError("no certificate found in replay document", "certificate", None)
        cert = certificate_from_dict(cert_doc, li)
        got = conditions.replay(li.instance, cert)
        sys.stdout.write(dumps({"stated_deficit": cert.deficit, "replayed_deficit": got,
                                "matches": got == cert.deficit}))
        return 0 if got == cert.deficit else 2
    cert = conditions.check(li.instance, args.level)
    doc = {"level": args.level, "ok": cert is None}
    if cert is not None:
        doc["certificate"] = certificate_to_dict(cert, li)
    sys.stdout.write(dumps(doc))
    return 0 if cert is None else 2


def cmd_verify(args: argparse.Namespace) -> int:
    li = _load(args.instance)
    packing = parse_packing(_read(args.packing), li)
    if packing is None:
        raise DocumentError("packing document reports an infeasible instance",
                            "status.feasible", False)
    problems = verify_packing(li.instance, packing)
    sys.stdout.write(dumps({"ok": not problems, "violations": problems}))
    return 0 if not problems else 2


def cmd_oracle(args: argparse.Namespace) -> int:
    li = _load(args.instance)
    exists = brute_force_exists(li.instance)
    sys.stdout.write(dumps({"exists": exists}))
    return 0 if exists else 2


def cmd_gen(args: argparse.Namespace) -> int:
    inst, rejected = random_instance(args.seed, args.vertices, args.edges, args.arcs,
                                     args.matroid, args.elements)
    print(f"rejected {rejected} dependent placements", file=sys.stderr)
    sys.stdout.write(render_instance(labeled(inst)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixarb", description="Maximal matroid-independent mixed arborescence packing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a packing or an infeasibility certificate")
    p.add_argument("instance", nargs="?", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="evaluate one characterising condition")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--level", choices=LEVELS, default="iii")
    p.add_argument("--replay", metavar="FILE",
                   help="recompute the deficit of a certificate document instead")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="validate a packing document")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--packing", required=True, metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force existence test (small instances)")
    p.add_argument("instance", nargs="?", default="-")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, default=4)
    p.add_argument("--edges", type=int, default=3)
    p.add_argument("--arcs", type=int, default=3)
    p.add_argument("--matroid", default="free",
                   choices=("free", "uniform", "partition", "graphic", "linear_gf2"))
    p.add_argument("--elements", type=int, default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        sys.stdout.write(dumps(exc.as_dict()))
        return 1
    except (ValueError, OSError) as exc:
        sys.stdout.write(dumps({"error": {"message": str(exc), "key": "", "value": None}}))
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
