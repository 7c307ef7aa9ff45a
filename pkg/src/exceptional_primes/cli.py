"""Command-line interface: ``exprimes {bound,audit,plan,dims,fetch}``.

Every command builds one report (a plain dict with a fixed key order) and
renders it either as JSON (``--json``) or as indented text. Both
renderings walk the same data.

Exit codes: 0 success, 2 incomplete result, 3 invalid input or refused
scale, 4 network or payload failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .audit import Outcome, dihedral_spotcheck, reducibility_audit
from .bounds import DEFAULT_ELL_MAX, TRUSTED_RULES, FamilyMember, family_report, realization_plan
from .config import limits
from .errors import (
    DecompositionError,
    InvalidInputError,
    LMFDBUnavailableError,
    PayloadParseError,
    ScaleLimitError,
)

EXIT_OK, EXIT_INCOMPLETE, EXIT_INVALID, EXIT_NETWORK = 0, 2, 3, 4
SCHEMA = "1"


def report(command: str, parameters: dict, result: dict, provenance: list, completeness: dict) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "result": result,
        "provenance": provenance,
        "completeness": completeness,
    }


def _rule(name: str) -> dict:
    return {"rule": name, "statement": TRUSTED_RULES[name]}


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(doc)}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ------------------------------------------------------------------ commands


def cmd_bound(n: int, s: int = 2, t: int = 3, ell_max: int = DEFAULT_ELL_MAX):
    member = FamilyMember(n=n, s=s, t=t)
    rep = family_report(member, ell_max)
    result = rep.as_dict()
    complete = rep.complete
    doc = report(
        "bound",
        {"n": n, "s": s, "t": t, "ell_max": ell_max},
        result,
        [_rule(r) for r in rep.trusted_rules_used()],
        {
            "factorization_complete": complete,
            "note": "all cyclotomic pieces fully factored" if complete
            else "some cyclotomic piece has an unfactored composite part; candidates may be missing",
        },
    )
    return doc, EXIT_OK if complete else EXIT_INCOMPLETE


def cmd_audit(n: int, ell: int, force: bool = False, dihedral: bool = False):
    verdict = reducibility_audit(n, ell, force=force)
    result = verdict.as_dict()
    if dihedral and verdict.outcome is not Outcome.NOT_A_CANDIDATE:
        result["dihedral_spotcheck"] = dihedral_spotcheck(n, ell).as_dict()
    provenance = [
        _rule("level-raising"),
        {"rule": "sturm-bound", "statement": "eigensystems agreeing at all primes up to the Sturm bound agree everywhere"},
    ]
    completeness = {
        "certificate": "not needed" if verdict.outcome is Outcome.NOT_A_CANDIDATE else "up to the Sturm bound",
        "caveats": list(verdict.caveats),
    }
    params = {"n": n, "ell": ell, "level": verdict.level, "force": force}
    return report("audit", params, result, provenance, completeness), EXIT_OK


def cmd_plan(ell: int, r0: int, s: int = 2, t: int = 3):
    plan = realization_plan(ell, r0, s=s, t=t)
    provenance = [
        _rule("residual-conductor"),
        {"rule": "field-exponent",
         "statement": "the projective image is defined over a field of degree at least the residue degree "
                      "of ell in the real subfield of the 3^(c-1)-th cyclotomic field"},
    ]
    doc = report("plan", {"ell": ell, "r0": r0, "s": s, "t": t}, plan.as_dict(), provenance, {"complete": True})
    return doc, EXIT_OK


def cmd_dims(N: int):
    from .modsym.dimensions import cusp_count, elliptic_points, genus_X0, index_gamma0, newform_dimension, sturm_bound
    from .modsym.space import build_space

    cap = limits().dims_level_max
    if N < 1:
        raise InvalidInputError("level must be >= 1")
    if N > cap:
        raise ScaleLimitError(f"N={N} exceeds the dims limit {cap}; raise EXCEPTIONAL_PRIMES_DIMS_MAX to override")
    space = build_space(N)
    nu2, nu3 = elliptic_points(N)
    g = genus_X0(N)
    result = {
        "level": N,
        "index": index_gamma0(N),
        "elliptic_points": [nu2, nu3],
        "cusps": cusp_count(N),
        "genus": g,
        "sturm_bound": sturm_bound(N),
        "ambient_dimension": space.dimension,
        "cuspidal_dimension": space.cuspidal.dimension,
        "new_dimension": space.new.dimension,
        "newform_space_dimension": newform_dimension(N),
    }
    consistent = space.cuspidal.dimension == 2 * g and space.new.dimension == 2 * newform_dimension(N)
    provenance = [{"rule": "genus-formula", "statement": "closed-form genus and cusp counts checked against modular symbols"}]
    doc = report("dims", {"N": N}, result, provenance, {"consistent": consistent})
    return doc, EXIT_OK if consistent else EXIT_INCOMPLETE


def cmd_fetch(N: int, offline: bool | None = None, cache_dir: str | None = None, refresh: bool = False):
    from .lmfdb import default_cache_dir, fetch_newforms_with_origin

    records, origin = fetch_newforms_with_origin(N, cache_dir=cache_dir, offline=offline, refresh=refresh)
    result = {
        "level": N,
        "origin": origin,
        "cache_dir": str(cache_dir or default_cache_dir()),
        "newforms": [{"label": r.label, "degree": r.degree, "hecke_bound": r.hecke_bound, "source": r.source}
                     for r in records],
    }
    params = {"N": N, "offline": bool(offline), "refresh": refresh}
    return report("fetch", params, result, [], {"complete": True}), EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    parser = argparse.ArgumentParser(
        prog="exprimes",
        description="Exceptional primes for weight-2 newforms of level s*t^n.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="closed-form classification of primes ell <= ell-max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--ell-max", type=int, default=DEFAULT_ELL_MAX)

    p = sub.add_parser("audit", parents=[common], help="search for the reducible eigensystem mod ell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--force", action="store_true", help="run the computation even when ell is not a candidate")
    p.add_argument("--dihedral", action="store_true", help="also run the dihedral trace spot check")

    p = sub.add_parser("plan", parents=[common], help="smallest level realising a large projective image")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r0", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("dims", parents=[common], help="genus and modular symbol dimensions at level N")
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("fetch", parents=[common], help="load or refresh newform data for level N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--offline", action="store_true", default=None, help="never touch the network")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--refresh", action="store_true")
    return parser


def _dispatch(args):
    if args.command == "bound":
        return cmd_bound(args.n, args.s, args.t, args.ell_max)
    if args.command == "audit":
        return cmd_audit(args.n, args.ell, args.force, args.dihedral)
    if args.command == "plan":
        return cmd_plan(args.ell, args.r0, args.s, args.t)
    if args.command == "dims":
        return cmd_dims(args.N)
    return cmd_fetch(args.N, args.offline, args.cache_dir, args.refresh)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc, code = _dispatch(args)
    except InvalidInputError as exc:
        return _fail(args, stdout, stderr, "invalid-input", exc, EXIT_INVALID)
    except (LMFDBUnavailableError, PayloadParseError) as exc:
        return _fail(args, stdout, stderr, "network", exc, EXIT_NETWORK)
    except DecompositionError as exc:
        return _fail(args, stdout, stderr, "decomposition", exc, EXIT_INCOMPLETE)
    stdout.write(render_json(doc) if args.json else render_text(doc) + "\n")
    return code


def _fail(args, stdout, stderr, kind: str, exc: Exception, code: int) -> int:
    if args.json:
        doc = {"schema": SCHEMA, "version": __version__, "command": args.command,
               "error": {"kind": kind, "message": str(exc)}}
        stdout.write(render_json(doc))
    stderr.write(f"exprimes {args.command}: {kind}: {exc}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
