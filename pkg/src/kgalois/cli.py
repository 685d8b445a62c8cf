"""
kgalois command line: file-based JSON in, JSON report out.

Exit codes: 0 success / verdict true, 1 verdict false, 2 input or bounds error.
Every report carries the tool version and the sha256 of each input file.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, algebra, datum as dt, obstructions
from .classify import Bounds, BoundsError, classify
from .cohomology import Cochain
from .fields import tower_from_json
from .grading import GradingError, RecoveryError, recover_datum
from .groups import group_from_json


class InputError(Exception):
    pass


def _load(path: str, hashes: dict) -> object:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    hashes[path] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not UTF-8 text (byte {e.start})") from None


def _unwrap(data, key: str):
    """Accept either a bare object or a report envelope holding it under ``result[key]``."""
    if isinstance(data, dict) and "result" in data and isinstance(data["result"], dict) and key in data["result"]:
        return data["result"][key]
    return data


def _datum(data) -> dt.GaloisDatum:
    return dt.datum_from_json(_unwrap(data, "datum"))


def _problem(data):
    """(G, S, N, tower, sigma, iso) from a datum file whose gamma may be absent."""
    data = _unwrap(data, "datum")
    G = group_from_json(data["group"])
    tower = tower_from_json(data["tower"])
    S, N = G.subgroup(data["S"]), G.subgroup(data["N"])
    sig = data["sigma"]
    sigma = Cochain(N.group, 2, int(sig.get("m", tower.m)),
                    np.array(sig["table"], dtype=np.int64).reshape(N.order, N.order))
    if sigma.modulus != tower.m:
        sigma = sigma.lift(tower.m)
    iso = tuple(data["iso"]) if data.get("iso") is not None else None
    return G, S, N, tower, sigma, iso


def _object(data) -> algebra.EquivariantAlgebra:
    return algebra.algebra_from_json(_unwrap(data, "object"))


# commands: each returns (exit code, result dict)

def cmd_validate(args, hashes):
    rep = dt.validate_datum(_datum(_load(args.datum, hashes)))
    return (0 if rep.verdict else 1), {"validation": rep.to_json()}


def cmd_build(args, hashes):
    d = _datum(_load(args.datum, hashes))
    rep = dt.validate_datum(d)
    if not rep.verdict:
        return 1, {"validation": rep.to_json(), "object": None}
    A = dt.build_object(d, check=False)
    return 0, {"validation": rep.to_json(), "object": algebra.algebra_to_json(A)}


def cmd_verify(args, hashes):
    if args.object:
        A = _object(_load(args.object, hashes))
    elif args.datum:
        A = dt.build_object(_datum(_load(args.datum, hashes)))
    else:
        raise InputError("verify needs --object or --datum")
    if args.fast:
        B = algebra.simple_block(A)
        S = A.induced.S if A.induced is not None else A.group.full
        rec = recover_datum(B)
        rep = algebra.verify_simple_fast(B, rec.datum.N.elements)
        return (0 if rep.verdict else 1), {"simple": rep.to_json(), "stabiliser": list(S.elements)}
    rep = algebra.verify_galois(A, emit_matrices=args.emit_matrices)
    return (0 if rep.verdict else 1), {"galois": rep.to_json()}


def cmd_recover(args, hashes):
    if args.object:
        A = _object(_load(args.object, hashes))
    else:
        A = dt.build_object(_datum(_load(args.datum, hashes)))
    B = algebra.simple_block(A)
    if A.induced is not None:
        rec = recover_datum(B, A.group, A.induced.S)
    else:
        rec = recover_datum(A)
    ok = rec.report["validation"]["verdict"]
    return (0 if ok else 1), {"datum": rec.datum.to_json(), "units": rec.to_json()["units"], **rec.report}


def cmd_solve_gamma(args, hashes):
    G, S, N, tower, sigma, iso = _problem(_load(args.datum, hashes))
    isos = [iso] if iso is not None else dt.galois_isomorphisms(S, N, tower)
    out = []
    for i in isos:
        for g in dt.solve_gamma(G, S, N, tower, sigma, iso=i, limit=args.limit):
            out.append({"iso": list(i), "gamma": {"table": g.tolist(), "m": tower.m}})
    return (0 if out else 1), {"count": len(out), "solutions": out}


def cmd_obstructions(args, hashes):
    G, S, N, tower, sigma, iso = _problem(_load(args.datum, hashes))
    rep = obstructions.obstruction_report(G, S, N, tower, sigma, iso)
    gam = dt.solve_gamma(G, S, N, tower, sigma, iso=iso)
    res = rep.to_json()
    res["solve_gamma_count"] = len(gam)
    res["consistent"] = rep.vanishes == bool(gam)
    return (0 if rep.vanishes else 1), {"obstructions": res}


def cmd_classify(args, hashes):
    G = group_from_json(_load(args.group, hashes))
    cat = _load(args.catalog, hashes)
    if not isinstance(cat, list):
        raise InputError(f"{args.catalog}: catalog must be a JSON array of towers")
    towers = [tower_from_json(t) for t in cat]
    bounds = Bounds(max_order=args.max_order, max_modulus=args.max_modulus)
    restrict = {}
    if args.S:
        restrict["S"] = json.loads(args.S)
    if args.N:
        restrict["N"] = json.loads(args.N)
    log = (lambda s: print(s, file=sys.stderr)) if args.log else None
    res = classify(G, towers, bounds, workers=args.workers, log=log, **restrict)
    ok = all(s["verdict"] for s in res.stamps)
    return (0 if ok else 1), {"classification": res.to_json()}


def cmd_equiv(args, hashes):
    d1 = _datum(_load(args.first, hashes))
    d2 = _datum(_load(args.second, hashes))
    w = dt.are_equivalent(d1, d2)
    if w is None:
        return 1, {"equivalent": False, "witness": "none"}
    inter = dt.witness_intertwiner(d1, d2, w)
    return 0, {"equivalent": True, "witness": w.to_json(), "checked": dt.check_witness(d1, d2, w),
               "intertwiner": inter}


COMMANDS = {
    "validate": cmd_validate, "build": cmd_build, "verify": cmd_verify, "recover": cmd_recover,
    "solve-gamma": cmd_solve_gamma, "obstructions": cmd_obstructions, "classify": cmd_classify,
    "equiv": cmd_equiv,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgalois", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=f"kgalois {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("-o", "--output", help="report path (default: stdout)")
        return q

    add("validate", "check the five conditions of a datum").add_argument("datum")
    add("build", "build the induced object of a valid datum").add_argument("datum")
    q = add("verify", "theta and canonical-map tests of an object")
    q.add_argument("--object")
    q.add_argument("--datum")
    q.add_argument("--emit-matrices", action="store_true")
    q.add_argument("--fast", action="store_true", help="test the simple block through K^N")
    q = add("recover", "read the datum off the simple block of an object")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--object")
    g.add_argument("--datum")
    q = add("solve-gamma", "all gamma tables for (G, S, N, tower, sigma)")
    q.add_argument("datum")
    q.add_argument("--limit", type=int, default=10 ** 5)
    add("obstructions", "first and second obstructions").add_argument("datum")
    q = add("classify", "Galois data on a group up to equivalence")
    q.add_argument("--group", required=True)
    q.add_argument("--catalog", required=True)
    q.add_argument("--max-order", type=int, default=32)
    q.add_argument("--max-modulus", type=int, default=16)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--S", help="JSON list restricting S")
    q.add_argument("--N", help="JSON list restricting N")
    q.add_argument("--log", action="store_true", help="one line per task on stderr")
    q = add("equiv", "equivalence witness between two data")
    q.add_argument("first")
    q.add_argument("second")
    return p


def _write(report: dict, path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    hashes: dict[str, str] = {}
    report = {"tool": "kgalois", "version": __version__, "command": args.command}
    try:
        code, result = COMMANDS[args.command](args, hashes)
        report["result"] = result
    except (RecoveryError, GradingError) as e:
        code, report["error"] = 1, f"{type(e).__name__}: {e}"
    except InputError as e:
        code, report["error"] = 2, str(e)
    except BoundsError as e:
        code, report["error"] = 2, f"bounds exceeded: {e}"
    except (KeyError, TypeError, ValueError, IndexError) as e:
        code, report["error"] = 2, f"invalid input: {type(e).__name__}: {e}"
    report["inputs"] = [{"path": k, "sha256": v} for k, v in hashes.items()]
    report["exit_code"] = code
    _write(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
