"""Command-line interface: JSON in, JSON out, exact rationals throughout.

Every verb reads any payload from stdin, writes a single JSON document to
stdout, and exits 0 on success.  Failures print a machine-readable
``{"error": {"code", "message"}}`` object and exit with a code that
identifies the failure class:

====  ======================  ==========================================
exit  error code              meaning
====  ======================  ==========================================
1     (verify report)         a verification check failed
2     malformed-json          stdin or a referenced file is not JSON
3     unknown-verb            the first argument names no verb
4     resource-cutoff         a configured resource bound was exceeded
5     validation              bad options, bad structure, bad algebra
====  ======================  ==========================================

Output is byte-for-byte deterministic for identical inputs and cache
state; the only exception is the ``seconds`` timing fields inside verify
reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import (DiagramVector, quotient_basis, reduce_vector,
                      vector_from_json, vector_to_json)
from .cache import default_cache_dir
from .diagrams import diagram_from_json, diagram_to_json, enumerate_diagrams
from .errors import (DiagramError, GradingMismatchError, LieAlgebraError,
                     ResourceLimitError, SpaceMismatchError)
from .lie import builtin_algebra, evaluate, evaluate_closed, lie_algebra_from_json
from .maps import cap, chi, closure, connect_sum, omega
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED_JSON = 2
EXIT_UNKNOWN_VERB = 3
EXIT_RESOURCE = 4
EXIT_VALIDATION = 5

_VALIDATION_ERRORS = (DiagramError, GradingMismatchError, SpaceMismatchError,
                      LieAlgebraError, KeyError, TypeError, ValueError)


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _emit(obj, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, indent=2))
    stream.write("\n")


def _read_stdin_json(stdin):
    text = stdin.read()
    return json.loads(text)


def _resolve_cache(ns) -> str:
    return ns.cache_dir or default_cache_dir()


def _load_algebra(source: str):
    """A built-in name, or a path to an exact-rational algebra file."""
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            blob = json.load(fh)
        return lie_algebra_from_json(blob)
    return builtin_algebra(source)


def _pick_rep(g, name):
    if name is not None:
        if name not in g.representations:
            raise LieAlgebraError(f"unknown representation {name!r}")
        return g.representations[name]
    if not g.representations:
        return None
    if "fundamental" in g.representations:
        return g.representations["fundamental"]
    return g.representations[sorted(g.representations)[0]]


def _add_common(p: _Parser):
    p.add_argument("--cache-dir", default=None,
                   help="basis cache directory (default: $WEIGHTSYS_CACHE "
                        "or the per-user cache)")
    p.add_argument("--max-steps", type=int, default=None,
                   help="abort enumeration beyond this many search steps")


# ---------------------------------------------------------------------------
# verb handlers: each takes (namespace, stdin) and returns (payload, status)


def _cmd_enumerate(ns, stdin):
    diagrams = enumerate_diagrams(ns.space, v=ns.v, l=ns.l, e=ns.e,
                                  total=ns.total, max_steps=ns.max_steps)
    return {"count": len(diagrams),
            "diagrams": [diagram_to_json(d) for d in diagrams]}, EXIT_OK


def _cmd_basis(ns, stdin):
    qb = quotient_basis(ns.space, v=ns.v, l=ns.l, total=ns.total,
                        cache_dir=_resolve_cache(ns), max_steps=ns.max_steps)
    return {"dimension": qb.dim,
            "basis": [diagram_to_json(d) for d in qb.basis]}, EXIT_OK


def _cmd_reduce(ns, stdin):
    vec = vector_from_json(_read_stdin_json(stdin))
    red = reduce_vector(vec, cache_dir=_resolve_cache(ns),
                        max_steps=ns.max_steps)
    return {"terms": vector_to_json(red)}, EXIT_OK


def _cmd_chi(ns, stdin):
    vec = vector_from_json(_read_stdin_json(stdin))
    return {"terms": vector_to_json(chi(vec))}, EXIT_OK


def _cmd_close(ns, stdin):
    vec = vector_from_json(_read_stdin_json(stdin))
    out = closure(vec, pair_weight=ns.pair_weight)
    return {"terms": vector_to_json(out)}, EXIT_OK


def _two_vectors(obj):
    if not isinstance(obj, dict) or "left" not in obj or "right" not in obj:
        raise DiagramError("expected an object with 'left' and 'right' vectors")
    return vector_from_json(obj["left"]), vector_from_json(obj["right"])


def _cmd_cap(ns, stdin):
    left, right = _two_vectors(_read_stdin_json(stdin))
    return {"terms": vector_to_json(cap(left, right))}, EXIT_OK


def _cmd_connect_sum(ns, stdin):
    left, right = _two_vectors(_read_stdin_json(stdin))
    return {"terms": vector_to_json(connect_sum(left, right))}, EXIT_OK


def _cmd_omega(ns, stdin):
    return {"terms": vector_to_json(omega(ns.vmax))}, EXIT_OK


def _cmd_eval(ns, stdin):
    obj = _read_stdin_json(stdin)
    if isinstance(obj, dict) and "space" in obj:
        vec = DiagramVector.single(diagram_from_json(obj))
    else:
        vec = vector_from_json(obj)
    spaces = {d.space for d, _ in vec.items()}
    if len(spaces) > 1:
        raise SpaceMismatchError("cannot evaluate a mixed-space vector")
    g = _load_algebra(ns.algebra)
    kwargs = {}
    if ns.max_cost is not None:
        kwargs["max_cost"] = ns.max_cost
    if spaces == {"B"}:
        value = evaluate_closed(vec, g, **kwargs)
    else:
        rep = _pick_rep(g, ns.rep)
        if rep is None:
            raise LieAlgebraError(
                "circle-space evaluation needs a representation")
        value = evaluate(vec, g, rep, **kwargs)
    return {"value": str(value)}, EXIT_OK


def _cmd_verify(ns, stdin):
    report = run_suite(ns.suite, max_total=ns.max_total, vmax=ns.vmax,
                       algebra=ns.algebra, rep=ns.rep,
                       cache_dir=_resolve_cache(ns), max_cost=ns.max_cost)
    return report, EXIT_OK if report["pass"] else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parsers


def _build_parser(verb: str) -> _Parser:
    p = _Parser(prog=f"weightsys {verb}", add_help=True)
    _add_common(p)
    if verb in ("enumerate", "basis"):
        p.add_argument("--space", required=True, choices=("A", "B"))
        p.add_argument("--v", type=int, default=None)
        p.add_argument("--l", type=int, default=None)
        p.add_argument("--total", type=int, default=None)
        if verb == "enumerate":
            p.add_argument("--e", type=int, default=None)
    elif verb == "close":
        p.add_argument("--pair-weight", type=int, choices=(1, 2), default=1)
    elif verb == "omega":
        p.add_argument("--vmax", type=int, required=True)
    elif verb == "eval":
        p.add_argument("--algebra", required=True,
                       help="built-in name (sl2, abelian<k>) or JSON file path")
        p.add_argument("--rep", default=None)
        p.add_argument("--max-cost", type=int, default=None)
    elif verb == "verify":
        p.add_argument("suite", choices=SUITES)
        p.add_argument("--max-total", type=int, default=None)
        p.add_argument("--vmax", type=int, default=None)
        p.add_argument("--algebra", default="sl2")
        p.add_argument("--rep", default=None)
        p.add_argument("--max-cost", type=int, default=None)
    return p


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "basis": _cmd_basis,
    "reduce": _cmd_reduce,
    "chi": _cmd_chi,
    "close": _cmd_close,
    "cap": _cmd_cap,
    "connect-sum": _cmd_connect_sum,
    "omega": _cmd_omega,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
}

_USAGE = """usage: weightsys VERB [options] (JSON payloads on stdin/stdout)

verbs:
  enumerate    list all diagrams of one graded piece
  basis        quotient basis of one graded piece modulo relations
  reduce       canonical coset representative of a vector (stdin)
  chi          average a leg diagram vector over the circle (stdin)
  close        pair up all legs in all ways (stdin; --pair-weight)
  cap          glue all legs of 'left' onto 'right' (stdin object)
  connect-sum  circle-space product of 'left' and 'right' (stdin object)
  omega        the wheels series truncated at --vmax legs
  eval         weight of a diagram or vector against a metric Lie algebra
  verify       run a verification suite: """ + " | ".join(SUITES) + """

run 'weightsys VERB --help' for per-verb options."""


def main(argv=None, stdin=None, stdout=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    if not argv or argv[0] in ("-h", "--help"):
        out.write(_USAGE + "\n")
        return EXIT_OK
    verb = argv[0]
    handler = _HANDLERS.get(verb)
    if handler is None:
        _emit({"error": {"code": "unknown-verb",
                         "message": f"unknown verb {verb!r}"}}, out)
        return EXIT_UNKNOWN_VERB
    try:
        ns = _build_parser(verb).parse_args(argv[1:])
    except _ArgError as exc:
        _emit({"error": {"code": "validation", "message": str(exc)}}, out)
        return EXIT_VALIDATION
    try:
        payload, status = handler(ns, stdin)
    except json.JSONDecodeError as exc:
        _emit({"error": {"code": "malformed-json", "message": str(exc)}}, out)
        return EXIT_MALFORMED_JSON
    except ResourceLimitError as exc:
        _emit({"error": {"code": "resource-cutoff", "message": str(exc)}}, out)
        return EXIT_RESOURCE
    except _VALIDATION_ERRORS as exc:
        _emit({"error": {"code": "validation", "message": str(exc)}}, out)
        return EXIT_VALIDATION
    _emit(payload, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
