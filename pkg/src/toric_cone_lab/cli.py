"""Command-line front end.

Every command builds a JSON payload from its flags (or reads one with
``--input``), validates it against a schema, runs the library operation and
emits a versioned report. Exit codes: 0 ok, 2 usage, 3 schema, 4 domain error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, List, Optional

import jsonschema

from . import serialize as ser
from .cone import circle_action_free, hirzebruch_cone, is_good, standard_cone
from .equivalence import agreement_sweep, classify_hirzebruch, find_equivalence
from .invariants import bundle_invariant, hirzebruch_chain, tori_lower_bound
from .polytope import edges, hirzebruch_trapezoid, is_delzant, is_integral

EXIT_OK, EXIT_USAGE, EXIT_SCHEMA, EXIT_DOMAIN = 0, 2, 3, 4
THREADS_ENV = "TORIC_CONE_LAB_THREADS"


class UsageError(Exception):
    exit_code = EXIT_USAGE


class SchemaError(Exception):
    exit_code = EXIT_SCHEMA


@dataclass
class Request:
    command: str
    payload: Any
    options: dict = field(default_factory=dict)


@dataclass
class Report:
    status: str
    result: Any = None
    diagnostics: List[str] = field(default_factory=list)
    version: str = ser.SCHEMA_VERSION
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        doc = {"status": self.status, "diagnostics": list(self.diagnostics), "version": self.version}
        if self.status == "ok":
            doc["result"] = self.result
        return doc


# --------------------------------------------------------------------------
# schemas

_SOURCE = {
    "type": "object",
    "properties": {
        "polytope": ser.POLYTOPE_SCHEMA,
        "params": ser.PARAMS_SCHEMA,
        "cone": ser.CONE_SCHEMA,
    },
    "minProperties": 1,
    "maxProperties": 1,
    "additionalProperties": False,
}
_POLY_SOURCE = {**_SOURCE, "properties": {k: _SOURCE["properties"][k] for k in ("polytope", "params")}}
_AB = {
    "type": "object",
    "properties": {"a": {"type": "integer", "minimum": 1}, "b": {"type": "integer", "minimum": 1}},
    "required": ["a", "b"],
    "additionalProperties": False,
}
_PAIR = {
    "type": "object",
    "properties": {
        "c1": _SOURCE, "c2": _SOURCE,
        "p1": ser.PARAMS_SCHEMA, "p2": ser.PARAMS_SCHEMA,
    },
    "oneOf": [{"required": ["c1", "c2"]}, {"required": ["p1", "p2"]}],
    "additionalProperties": False,
}

SCHEMAS = {
    "check-delzant": _POLY_SOURCE,
    "build-cone": _POLY_SOURCE,
    "check-good": _SOURCE,
    "check-free": _SOURCE,
    "equiv": _PAIR,
    "classify": {
        "type": "object",
        "properties": {"p1": ser.PARAMS_SCHEMA, "p2": ser.PARAMS_SCHEMA},
        "required": ["p1", "p2"],
        "additionalProperties": False,
    },
    "count-tori": _AB,
    "chain": _AB,
    "bundle": _AB,
    "sweep": {
        "type": "object",
        "properties": {
            "bmax": {"type": "integer", "minimum": 1},
            "cmax": {"type": "integer", "minimum": 1},
            "mmax": {"type": "integer", "minimum": 0},
        },
        "required": ["bmax", "cmax", "mmax"],
        "additionalProperties": False,
    },
}


# --------------------------------------------------------------------------
# argv parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _params_arg(text: str) -> dict:
    parts = text.split(",")
    if len(parts) != 3:
        raise SchemaError(f"expected a,b,m but got {text!r}")
    a, b, m = (p.strip() for p in parts)
    try:
        return {"a": a, "b": int(b), "m": int(m)}
    except ValueError:
        raise SchemaError(f"b and m must be integers in {text!r}") from None


def _json_arg(text: str, stdin=None) -> Any:
    if text == "-":
        text = (stdin or sys.stdin).read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toric-cone-lab", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--input", help="payload JSON file, or '-' for stdin; replaces the flags")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def source_flags(sp, cone=True):
        sp.add_argument("--polytope", help="polytope JSON, @file or -")
        sp.add_argument("--params", help="Hirzebruch parameters a,b,m")
        if cone:
            sp.add_argument("--cone", help="cone JSON, @file or -")

    sp = sub.add_parser("check-delzant", help="Delzant and integrality test of a polygon")
    source_flags(sp, cone=False)
    sp = sub.add_parser("build-cone", help="standard cone over an integral Delzant polytope")
    source_flags(sp, cone=False)
    sp.add_argument("--emit-vertices", action="store_true", help="also dump the polytope vertices")
    sp = sub.add_parser("check-good", help="good-cone test")
    source_flags(sp)
    sp.add_argument("--include-apex", action="store_true", help="impose the face condition at the apex too")
    sp = sub.add_parser("check-free", help="freeness of the circle action")
    source_flags(sp)
    sp.add_argument("--fiber", help="fiber direction, comma separated (default: last basis vector)")
    sp = sub.add_parser("equiv", help="search for a lattice equivalence between two cones")
    for name in ("c1", "c2"):
        sp.add_argument(f"--{name}", help="cone JSON, @file or -")
    for name in ("p1", "p2"):
        sp.add_argument(f"--{name}", help="Hirzebruch parameters a,b,m")
    sp.add_argument("--no-sign", action="store_true", help="search +T only")
    sp = sub.add_parser("classify", help="closed-form equivalence of Hirzebruch cones")
    sp.add_argument("--p1")
    sp.add_argument("--p2")
    for name in ("count-tori", "chain", "bundle"):
        sp = sub.add_parser(name)
        sp.add_argument("a", type=int, nargs="?")
        sp.add_argument("b", type=int, nargs="?")
        if name == "chain":
            sp.add_argument("--parity", choices=("full", "even"), default="full")
    sp = sub.add_parser("sweep", help="search vs closed form over a parameter grid")
    sp.add_argument("--bmax", type=int)
    sp.add_argument("--cmax", type=int)
    sp.add_argument("--mmax", type=int)
    sp.add_argument("--no-sign", action="store_true")
    sp.add_argument("--threads", type=int)
    return p


def _payload_from_flags(ns, stdin=None) -> dict:
    cmd = ns.command
    payload: dict = {}
    if cmd in ("check-delzant", "build-cone", "check-good", "check-free"):
        if ns.polytope is not None:
            payload["polytope"] = _json_arg(ns.polytope, stdin)
        if ns.params is not None:
            payload["params"] = _params_arg(ns.params)
        if getattr(ns, "cone", None) is not None:
            payload["cone"] = _json_arg(ns.cone, stdin)
    elif cmd == "equiv":
        for name in ("c1", "c2"):
            if getattr(ns, name) is not None:
                payload[name] = {"cone": _json_arg(getattr(ns, name), stdin)}
        for name in ("p1", "p2"):
            if getattr(ns, name) is not None:
                payload[name] = _params_arg(getattr(ns, name))
    elif cmd == "classify":
        for name in ("p1", "p2"):
            if getattr(ns, name) is not None:
                payload[name] = _params_arg(getattr(ns, name))
    elif cmd in ("count-tori", "chain", "bundle"):
        payload = {k: getattr(ns, k) for k in ("a", "b") if getattr(ns, k) is not None}
    elif cmd == "sweep":
        payload = {k: getattr(ns, k) for k in ("bmax", "cmax", "mmax") if getattr(ns, k) is not None}
    return payload


def _options(ns) -> dict:
    opts = {"format": ns.format}
    for key in ("emit_vertices", "include_apex", "no_sign", "parity", "threads"):
        if hasattr(ns, key):
            opts[key] = getattr(ns, key)
    if getattr(ns, "fiber", None) is not None:
        try:
            opts["fiber"] = [int(x) for x in ns.fiber.split(",")]
        except ValueError:
            raise SchemaError(f"fiber: expected comma separated integers, got {ns.fiber!r}") from None
    return opts


def _semantic_checks(payload, path="payload"):
    # bounds the JSON schema cannot express: c = a - (m/2) b must be a positive integer
    if isinstance(payload, dict):
        if set(payload) == {"a", "b", "m"}:
            try:
                ser.params_from_json(payload)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise SchemaError(f"{path}: {exc}") from None
            return
        for k, v in payload.items():
            _semantic_checks(v, f"{path}.{k}")


def validate_payload(command: str, payload) -> None:
    try:
        jsonschema.validate(payload, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None
    _semantic_checks(payload)


def parse_request(argv: List[str], stdin=None) -> Request:
    """Turn argv (plus an optional payload file or stdin) into a validated request."""
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError("missing command")
    if ns.input is not None:
        payload = _json_arg("-" if ns.input == "-" else "@" + ns.input, stdin)
    else:
        payload = _payload_from_flags(ns, stdin)
    validate_payload(ns.command, payload)
    return Request(ns.command, payload, _options(ns))


# --------------------------------------------------------------------------
# dispatch

def _polytope(src: dict):
    if "params" in src:
        return hirzebruch_trapezoid(ser.params_from_json(src["params"]))
    return ser.polytope_from_json(src["polytope"])


def _cone(src: dict):
    if "cone" in src:
        return ser.cone_from_json(src["cone"])
    if "params" in src:
        return hirzebruch_cone(ser.params_from_json(src["params"]))
    return standard_cone(ser.polytope_from_json(src["polytope"]))


def _threads(requested: Optional[int]) -> int:
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def _do_check_delzant(payload, opts):
    poly = _polytope(payload)
    rep = is_delzant(poly)
    return {
        "delzant": rep.delzant,
        "integral": is_integral(poly),
        "polytope": ser.polytope_to_json(poly),
        "vertices": [
            {
                "vertex": v.vertex,
                "point": [ser.rational_to_json(x) for x in poly.vertices[v.vertex]],
                "directions": [list(d) for d in v.directions],
                "determinant": v.determinant,
                "ok": v.ok,
                "reason": v.reason,
            }
            for v in rep.vertices
        ],
        "edges": [
            {
                "endpoints": list(e.endpoints),
                "direction": list(e.primitive_direction),
                "lattice_length": ser.rational_to_json(e.lattice_length),
            }
            for e in edges(poly)
        ],
    }


def _do_build_cone(payload, opts):
    poly = _polytope(payload)
    out = {"cone": ser.cone_to_json(standard_cone(poly))}
    if opts.get("emit_vertices"):
        out["polytope"] = ser.polytope_to_json(poly)
    return out


def _do_check_good(payload, opts):
    C = _cone(payload)
    rep = is_good(C, include_apex=bool(opts.get("include_apex")))
    face = sorted(rep.failing_face) if rep.failing_face is not None else None
    return {
        "verdict": rep.verdict,
        "primitive_ok": rep.primitive_ok,
        "minimal_ok": rep.minimal_ok,
        "faces_ok": rep.faces_ok,
        "failing_face": face,
        "failing_face_is_apex": face is not None and len(face) == len(C.normals),
        "detail": rep.detail,
    }


def _do_check_free(payload, opts):
    C = _cone(payload)
    fiber = opts.get("fiber") or [int(i == C.dim - 1) for i in range(C.dim)]
    return {"free": circle_action_free(C, fiber), "fiber": fiber}


def _do_equiv(payload, opts):
    if "p1" in payload:
        C1, C2 = (hirzebruch_cone(ser.params_from_json(payload[k])) for k in ("p1", "p2"))
    else:
        C1, C2 = _cone(payload["c1"]), _cone(payload["c2"])
    w = find_equivalence(C1, C2, allow_sign=not opts.get("no_sign"))
    return {
        "equivalent": w is not None,
        "witness": w.T.tolist() if w else None,
        "sign": w.sign if w else None,
    }


def _do_classify(payload, opts):
    p1, p2 = ser.params_from_json(payload["p1"]), ser.params_from_json(payload["p2"])
    return {"equivalent": classify_hirzebruch(p1, p2), "p1": ser.params_to_json(p1), "p2": ser.params_to_json(p2)}


def _do_count_tori(payload, opts):
    return tori_lower_bound(payload["a"], payload["b"])


def _do_chain(payload, opts):
    a, b = payload["a"], payload["b"]
    parity = opts.get("parity")
    chain = hirzebruch_chain(a, b, None if parity in (None, "full") else parity)
    return {
        "a": ser.rational_to_json(chain.a),
        "b": chain.b,
        "k": chain.k,
        "ell": chain.length_ell,
        "tori_lower_bound": tori_lower_bound(a, b),
        "members": [{**ser.params_to_json(p), "c": p.c} for p in chain.members],
    }


def _do_bundle(payload, opts):
    inv = bundle_invariant(payload["a"], payload["b"])
    return {"a": inv.a, "b": inv.b, "c1_L1": inv.c1_L1, "c1_L2": inv.c1_L2, "iso_class": inv.iso_class}


class _Disagreement(Exception):
    pass


def _do_sweep(payload, opts):
    allow_sign = not opts.get("no_sign")
    grid, rows = agreement_sweep(payload["bmax"], payload["cmax"], payload["mmax"],
                                 allow_sign=allow_sign, threads=_threads(opts.get("threads")))
    bad = [(grid[i], grid[j], s, c) for i, j, s, c in rows if s != c]
    summary = f"{len(bad)} disagreements, {len(rows)} pairs checked"
    if bad:
        lines = [summary] + [f"{p1} vs {p2}: search={s} closed-form={c}" for p1, p2, s, c in bad]
        raise _Disagreement(lines)
    return {
        "pairs": len(rows),
        "params": len(grid),
        "disagreements": 0,
        "equivalent_pairs": sum(1 for *_, s, _c in rows if s),
        "allow_sign": allow_sign,
        "summary": summary,
    }


_HANDLERS = {
    "check-delzant": _do_check_delzant,
    "build-cone": _do_build_cone,
    "check-good": _do_check_good,
    "check-free": _do_check_free,
    "equiv": _do_equiv,
    "classify": _do_classify,
    "count-tori": _do_count_tori,
    "chain": _do_chain,
    "bundle": _do_bundle,
    "sweep": _do_sweep,
}


def run(req: Request) -> Report:
    try:
        result = _HANDLERS[req.command](req.payload, req.options)
    except _Disagreement as exc:
        return Report("error", diagnostics=list(exc.args[0]), exit_code=EXIT_DOMAIN)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        return Report("error", diagnostics=[str(exc)], exit_code=EXIT_DOMAIN)
    return Report("ok", result)


# --------------------------------------------------------------------------
# output

def _text_lines(result, command: str) -> List[str]:
    if command == "chain":
        lines = [f"a = {result['a']}, b = {result['b']}, k = {result['k']}, ell = {result['ell']}",
                 f"{'m':>4} {'a':>6} {'b':>4} {'c':>4}"]
        lines += [f"{p['m']:>4} {p['a']:>6} {p['b']:>4} {p['c']:>4}" for p in result["members"]]
        return lines
    if isinstance(result, dict):
        return [f"{k}: {json.dumps(v) if not isinstance(v, str) else v}" for k, v in sorted(result.items())]
    return [str(result)]


def emit(report: Report, fmt: str = "json", command: str = "") -> str:
    """Render a report; the JSON form is canonical (sorted keys, no spaces)."""
    if fmt == "json":
        return ser.canonical_json(report.to_json()) + "\n"
    if report.status == "error":
        head, *rest = report.diagnostics or ["unknown error"]
        return "\n".join([f"error: {head}"] + [f"  {d}" for d in rest]) + "\n"
    return "\n".join(_text_lines(report.result, command)) + "\n"


def main(argv: Optional[List[str]] = None, stdin=None, stdout=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    stdout = stdout or sys.stdout
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--format", choices=("json", "text"), default="json")
    try:
        fmt = pre.parse_known_args(argv)[0].format
    except SystemExit:
        fmt = "json"
    command = ""
    try:
        req = parse_request(argv, stdin)
        command = req.command
        report = run(req)
    except (UsageError, SchemaError) as exc:
        report = Report("error", diagnostics=[str(exc)], exit_code=exc.exit_code)
    except OSError as exc:
        report = Report("error", diagnostics=[str(exc)], exit_code=EXIT_USAGE)
    stdout.write(emit(report, fmt, command))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
