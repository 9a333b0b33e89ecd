"""Command-line front end.

    relcomp info DESCRIPTOR.json
    relcomp rc DESCRIPTOR.json [--max-n N] [--max-k K]
    relcomp binary DESCRIPTOR.json
    relcomp verify-paper [FIXTURE_DIR] [--claim ID]

Every command builds a JSON run report; without ``--json`` the report is
rendered as indented text.  Exit status is 0 iff every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .complexity import (
    DEFAULT_TUPLE_BUDGET,
    certificate_json,
    is_binary,
    lift_witness_to_product,
    relational_complexity,
    verify_certificate,
    verify_witness,
    witness_from_pair,
)
from .constructions import GroupDescriptor, product_action
from .errors import DescriptorError, RelcompError
from .lemmas import replay
from .perm import are_conjugate_tuples, is_primitive, is_transitive
from .tuples import DEFAULT_INDEX_BUDGET, k_equivalent

SCHEMA = "relcomp.run/1"


class CliError(Exception):
    pass


def load_descriptor(path) -> GroupDescriptor:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return GroupDescriptor.from_json(data)
    except DescriptorError as exc:
        raise CliError(f"{path}: {exc}") from None


def _build(desc: GroupDescriptor):
    try:
        return desc.build()
    except (DescriptorError, ValueError) as exc:
        raise CliError(f"cannot build {desc.family}: {exc}") from None


def _opts(args) -> dict:
    cache = args.cache_dir or os.environ.get("RELCOMP_CACHE_DIR")
    return {
        "threads": args.threads,
        "index_budget": args.budget_bytes,
        "cache_dir": cache,
    }


# -- payloads ----------------------------------------------------------------


def info_payload(G) -> dict:
    return {
        "degree": G.degree,
        "order": G.order(),
        "transitive": is_transitive(G),
        "primitive": is_primitive(G),
        "claimed_socle": getattr(G, "descriptor", None) and G.descriptor.claimed_socle,
    }


def rc_payload(G, max_n=None, max_k=None, **opts) -> dict:
    cert = relational_complexity(G, max_n, max_k=max_k, **opts)
    out = certificate_json(G, cert)
    out["verified"] = verify_certificate(G, cert)
    return out


def binary_payload(G, **opts) -> dict:
    if G.is_trivial():
        return {"binary": False, "rc": 1,
                "note": "trivial group: relational complexity 1 by convention", "verified": True}
    binary, w = is_binary(G, **opts)
    out = {"binary": binary}
    if w is not None:
        out["witness"] = w.to_json()
        out["verified"] = verify_witness(G, w)
    else:
        out["verified"] = True
    return out


def lift_payload(G, m: int, pad: int, **opts) -> dict:
    cert = relational_complexity(G, **opts)
    fail = [v for v in cert.verdicts if not v.holds and v.k == cert.rc - 1]
    if not fail:
        return {"rc": cert.rc, "lifted": None, "verified": True, "note": "no witness to lift"}
    v = fail[0]
    A, B = lift_witness_to_product(*v.witness, m, pad, G.degree)
    X = product_action(G, m)
    ok_eq = k_equivalent(X, A, B, v.k)
    ok_nc = are_conjugate_tuples(X, A, B) is None
    return {
        "rc": cert.rc,
        "witness": [list(v.witness[0]), list(v.witness[1])],
        "k": v.k,
        "lifted": [list(A), list(B)],
        "product_degree": X.degree,
        "k_equivalent": ok_eq,
        "conjugate": not ok_nc,
        "verified": ok_eq and ok_nc,
    }


# -- verify-paper ------------------------------------------------------------


def default_fixture_dir() -> Path:
    return Path(str(resources.files("relcomp") / "data" / "claims"))


def load_claims(fixture_dir) -> dict:
    claims = {}
    for path in sorted(Path(fixture_dir).glob("*.json")):
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        claims[data["claim"]] = data
    return claims


def run_claim(claim: dict, **opts) -> dict:
    kind = claim["check"]
    t0 = time.perf_counter()
    if kind == "lemma":
        rep = replay(claim["report"])
        observed = rep.verdict
        detail = rep.to_json()
    else:
        G = _build(GroupDescriptor.from_json(claim["descriptor"]))
        if kind == "rc":
            detail = rc_payload(G, **opts)
            observed = detail["certificate"]["rc"] if detail["certificate"]["exact"] else None
        elif kind == "binary":
            detail = binary_payload(G, **opts)
            observed = detail["binary"]
        elif kind == "order":
            detail = info_payload(G)
            observed = detail["order"]
        elif kind == "primitive":
            detail = info_payload(G)
            observed = detail["primitive"]
        elif kind == "lift":
            detail = lift_payload(G, claim["params"]["m"], claim["params"]["pad"], **opts)
            observed = detail["verified"]
        else:
            raise CliError(f"claim {claim['claim']}: unknown check {kind!r}")
        if not detail.get("verified", True):
            observed = {"unverified": observed}
    return {
        "claim": claim["claim"],
        "expected": claim["expected"],
        "observed": observed,
        "pass": observed == claim["expected"],
        "seconds": round(time.perf_counter() - t0, 3),
        "detail": detail,
    }


# -- rendering ---------------------------------------------------------------


def render(report: dict, out=None) -> None:
    out = sys.stdout if out is None else out

    def emit(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    print(f"{pad}{k}:", file=out)
                    emit(v, indent + 1)
                else:
                    print(f"{pad}{k}: {json.dumps(v)}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat(v):
                    print(f"{pad}-", file=out)
                    emit(v, indent + 1)
                else:
                    print(f"{pad}- {json.dumps(v)}", file=out)

    emit(report)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or _flat(x) for x in v) and len(json.dumps(v)) < 100
    return False


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the run report as JSON")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for fingerprint scans (default 1; never changes results)")
    common.add_argument("--budget-bytes", type=int, default=DEFAULT_INDEX_BUDGET,
                        help="memory budget for an orbit index (default 2 GiB)")
    common.add_argument("--cache-dir", default=None,
                        help="orbit-index cache directory (fallback: $RELCOMP_CACHE_DIR)")
    common.add_argument("--max-n", type=int, default=None,
                        help="only check n-tuples up to this length (default: degree)")
    common.add_argument("--max-k", type=int, default=None,
                        help="give up after this k (default: no limit)")

    p = argparse.ArgumentParser(prog="relcomp", description="relational complexity of permutation groups")
    p.add_argument("--version", action="version", version=f"relcomp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("info", "order, degree, transitivity and primitivity"),
        ("rc", "relational complexity with a certificate"),
        ("binary", "binary test with a non-binarity witness"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("descriptor", help="group descriptor JSON file")
    vp = sub.add_parser("verify-paper", parents=[common], help="run the claim fixtures")
    vp.add_argument("fixtures", nargs="?", default=None, help="claim fixture directory")
    vp.add_argument("--claim", action="append", default=None, help="run only this claim id")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report = {"schema": SCHEMA, "command": ["relcomp"] + argv}
    ok = True
    try:
        opts = _opts(args)
        if args.command == "verify-paper":
            claims = load_claims(args.fixtures or default_fixture_dir())
            wanted = args.claim or sorted(claims)
            unknown = [c for c in wanted if c not in claims]
            if unknown:
                raise CliError(f"unknown claim id(s): {', '.join(unknown)}")
            results = [run_claim(claims[c], **opts) for c in wanted]
            ok = all(r["pass"] for r in results)
            report["payload"] = {
                "passed": sum(r["pass"] for r in results),
                "total": len(results),
                "results": results,
            }
        else:
            desc = load_descriptor(args.descriptor)
            report["descriptor"] = desc.to_json()
            G = _build(desc)
            if args.command == "info":
                report["payload"] = info_payload(G)
            elif args.command == "rc":
                report["payload"] = rc_payload(G, args.max_n, args.max_k, **opts)
                ok = report["payload"]["verified"]
            elif args.command == "binary":
                report["payload"] = binary_payload(G, **opts)
                ok = report["payload"]["verified"]
    except (CliError, RelcompError, OSError) as exc:
        print(f"relcomp: error: {exc}", file=sys.stderr)
        return 2
    report["wall_time"] = round(time.perf_counter() - t0, 3)
    report["budget"] = {"budget_bytes": args.budget_bytes, "tuple_budget": DEFAULT_TUPLE_BUDGET}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        render(report)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
