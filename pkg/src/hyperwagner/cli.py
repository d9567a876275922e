"""Command-line driver: one JSON report per invocation on stdout.

Exit codes: 0 for any completed verdict (including "invalid" witness
checks), 2 for input or usage errors, 3 when a search gave up (budget
exhausted, unverifiable or unknown verdicts, no decomposition found).
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Any, Optional, Sequence

from .complexes import UniformComplex
from .connectivity import is_k_connected, one_skeleton, vertex_connectivity
from .errors import HypergraphError, ParseError, ValidationError
from .generators import (
    complete_bipartite_uniform,
    complete_uniform,
    projective_plane,
    simplex_boundary,
    staged_build,
)
from .homology import homology
from .jsonio import (
    complex_to_document,
    load_complex,
    load_witness_file,
    make_report,
    sha256_of_file,
    witness_to_payload,
)
from .minors import BUDGET_EXHAUSTED, SearchBudget, has_minor, witness_problems
from .recognizer import (
    EMBEDDABLE,
    NON_EMBEDDABLE,
    bipartite_target,
    is_embeddable,
    plain_k33,
)
from .structure import bridges, ear_decomposition, marked_s_decomposition

_GIVE_UP = 3


def _faces(seq) -> list[list[int]]:
    return [list(f) for f in seq]


def _threads() -> int:
    raw = os.environ.get("HYPERWAGNER_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"HYPERWAGNER_THREADS={raw!r} is not an integer")
    if value < 1:
        raise ValidationError("HYPERWAGNER_THREADS must be at least 1")
    return value


def _parse_cut(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise ValidationError(f"--cut {text!r} is not a comma-separated "
                              "list of integers")


def _budget(args: argparse.Namespace) -> Optional[SearchBudget]:
    if args.budget_nodes is None and args.budget_secs is None:
        return None
    return SearchBudget(node_limit=args.budget_nodes,
                        time_limit=args.budget_secs)


def _resolve_target(host: UniformComplex, token: str) -> UniformComplex:
    if token == "complete":
        return complete_uniform(host.d + 3, host.d)
    if token == "bipartite":
        return bipartite_target(host.d)
    if token == "k33":
        return plain_k33()
    return load_complex(token)


def _precondition_payload(rep) -> dict:
    return {
        "uniform": rep.uniform,
        "connected": rep.connected,
        "closed": rep.closed,
        "shape_verdict": rep.shape.verdict,
        "shape_failures": list(rep.shape.failures),
        "skeleton_connectivity": rep.skeleton_connectivity,
        "d_connected": rep.d_connected,
        "triangulated": rep.triangulated,
    }


# each handler returns (status, result, exit_code, seed) ---------------

def _cmd_validate(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    result = {
        "d": c.d,
        "n": c.n,
        "facet_count": len(c.facets),
        "isolated_vertex_count": len(c.isolated_vertices),
        "closed": c.is_closed() and bool(c.facets),
    }
    return "ok", result, 0, None


def _cmd_homology(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    profile = homology(c)
    through = args.through
    if through is None:
        through = c.d - 1
    if not (0 <= through <= c.d - 1):
        raise ValidationError(f"--through {args.through} outside 0..{c.d - 1}")
    result = {
        "reduced_betti": list(profile.betti[:through + 1]),
        "torsion": [list(t) for t in profile.torsion[:through + 1]],
        "f_vector": list(profile.f_vector),
        "euler": profile.euler,
        "through": through,
    }
    return "ok", result, 0, None


def _cmd_connectivity(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    g = one_skeleton(c)
    if args.k is not None:
        result = {"k": args.k, "is_k_connected": is_k_connected(g, args.k)}
        return "ok", result, 0, None
    kappa, cut = vertex_connectivity(g)
    result = {
        "kappa": kappa,
        "cut": None if cut is None else list(cut.vertices),
        "component_sizes": None if cut is None else list(cut.component_sizes),
    }
    return "ok", result, 0, None


def _cmd_closed(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    pendants = c.pendant_facets()
    result = {
        "closed": not pendants and bool(c.facets),
        "pendant_facets": _faces(pendants),
    }
    return "ok", result, 0, None


def _cmd_link(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    result = {"vertex": args.vertex,
              "link": complex_to_document(c.link(args.vertex))}
    return "ok", result, 0, None


def _cmd_minor(args) -> tuple[str, Any, int, Optional[int]]:
    host = load_complex(args.input)
    target = _resolve_target(host, args.target)
    outcome = has_minor(host, target, _budget(args))
    result = {
        "target": complex_to_document(target),
        "nodes": outcome.nodes,
        "reason": outcome.reason or None,
        "witness": None if outcome.witness is None
                   else witness_to_payload(outcome.witness),
    }
    code = _GIVE_UP if outcome.status == BUDGET_EXHAUSTED else 0
    return outcome.status, result, code, None


def _cmd_embeddable(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    verdict = is_embeddable(c, _budget(args),
                            assert_triangulated=args.assert_triangulated)
    target_doc = None
    if verdict.which == "complete":
        target_doc = complex_to_document(complete_uniform(c.d + 3, c.d))
    elif verdict.which == "bipartite":
        target_doc = complex_to_document(bipartite_target(c.d))
    result = {
        "which": verdict.which,
        "target": target_doc,
        "witness": None if verdict.witness is None
                   else witness_to_payload(verdict.witness),
        "reason": verdict.reason or None,
        "nodes": verdict.nodes,
        "preconditions": _precondition_payload(verdict.preconditions),
    }
    code = 0 if verdict.status in (EMBEDDABLE, NON_EMBEDDABLE) else _GIVE_UP
    return verdict.status, result, code, None


def _cmd_bridges(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    s = load_complex(args.sphere)
    found = bridges(c, s)
    result = {
        "count": len(found),
        "bridges": [{
            "internal_vertices": list(b.internal_vertices),
            "facets": _faces(b.facets),
            "attachments": list(b.attachments),
            "projection": _faces(b.projection),
            "trivial": b.trivial,
        } for b in found],
    }
    return "ok", result, 0, None


def _cmd_ears(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    dec = ear_decomposition(c)
    if dec is None:
        result = {"reason": "no ear decomposition within the search bound"}
        return "not-found", result, _GIVE_UP, None
    result = {
        "base": _faces(dec.base),
        "ears": [{
            "facets": _faces(ear.facets),
            "boundary": _faces(ear.boundary),
            "internal_vertices": list(ear.internal_vertices),
        } for ear in dec.ears],
    }
    return "ok", result, 0, None


def _cmd_decompose(args) -> tuple[str, Any, int, Optional[int]]:
    c = load_complex(args.input)
    cut = _parse_cut(args.cut)
    parts = marked_s_decomposition(c, cut)
    result = {
        "cut": sorted(cut),
        "components": [{
            "complex": complex_to_document(p.complex),
            "marker": list(p.marker),
            "marker_was_added": p.marker_was_added,
        } for p in parts],
    }
    return "ok", result, 0, None


def _cmd_generate(args) -> tuple[str, Any, int, Optional[int]]:
    seed: Optional[int] = None
    if args.family == "complete":
        c = complete_uniform(args.n, args.i)
        result: dict[str, Any] = {"complex": complex_to_document(c)}
    elif args.family == "bipartite":
        c = complete_bipartite_uniform(args.p, args.q, args.i)
        result = {"complex": complex_to_document(c)}
    elif args.family == "simplex-boundary":
        c = simplex_boundary(args.d)
        result = {"complex": complex_to_document(c)}
    elif args.family == "procedure-x":
        seed = args.seed
        c, trace = staged_build(args.d, steps=args.steps, seed=args.seed)
        result = {
            "complex": complex_to_document(c),
            "trace": [{"facet": list(s.facet), "kind": s.kind,
                       "faces": _faces(s.faces)} for s in trace.steps],
        }
    else:
        c = projective_plane()
        result = {"complex": complex_to_document(c)}
    return "ok", result, 0, seed


def _cmd_verify_witness(args) -> tuple[str, Any, int, Optional[int]]:
    host = load_complex(args.input)
    target, witness = load_witness_file(args.witness)
    problems = witness_problems(host, target, witness)
    result = {
        "target": complex_to_document(target),
        "problems": list(problems),
    }
    return ("valid" if not problems else "invalid"), result, 0, None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwagner",
        description="Geometrize uniform hypergraphs and decide flat "
                    "embeddability by forbidden minors.")
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report "
                             "(breaks byte-for-byte report stability)")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("input", help="complex document (JSON)")
        return p

    with_input(sub.add_parser("validate", help="parse and summarize a complex"))

    p = with_input(sub.add_parser("homology", help="reduced integer homology"))
    p.add_argument("--through", type=int, default=None,
                   help="report dimensions 0..M only")

    p = with_input(sub.add_parser("connectivity",
                                  help="vertex connectivity of the 1-skeleton"))
    p.add_argument("--k", type=int, default=None,
                   help="test k-connectivity instead of computing kappa")

    with_input(sub.add_parser("closed", help="pendant-facet check"))

    p = with_input(sub.add_parser("link", help="vertex link subcomplex"))
    p.add_argument("--vertex", type=int, required=True)

    p = with_input(sub.add_parser("minor", help="branch-set minor search"))
    p.add_argument("--target", required=True,
                   help="complete | bipartite | k33 | path to a complex")
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)

    p = with_input(sub.add_parser("embeddable",
                                  help="flat embeddability verdict"))
    p.add_argument("--assert-triangulated", action="store_true",
                   help="caller vouches the input is the boundary skeleton "
                        "of a closed complex one dimension up")
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)

    p = with_input(sub.add_parser("bridges",
                                  help="bridges relative to a sphere subcomplex"))
    p.add_argument("--sphere", required=True,
                   help="sphere subcomplex document (same d and n)")

    with_input(sub.add_parser("ears", help="ear decomposition search"))

    p = with_input(sub.add_parser("decompose",
                                  help="marked decomposition along a cut"))
    p.add_argument("--cut", required=True,
                   help="comma-separated cut vertices, e.g. 0,3,5")

    gen = sub.add_parser("generate", help="built-in complex families")
    fam = gen.add_subparsers(dest="family", required=True)
    p = fam.add_parser("complete")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p = fam.add_parser("bipartite")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p = fam.add_parser("simplex-boundary")
    p.add_argument("--d", type=int, required=True)
    p = fam.add_parser("procedure-x")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    fam.add_parser("rp2")

    p = with_input(sub.add_parser("verify-witness",
                                  help="recheck a stored minor witness"))
    p.add_argument("--witness", required=True,
                   help="witness file: {target, witness}")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "homology": _cmd_homology,
    "connectivity": _cmd_connectivity,
    "closed": _cmd_closed,
    "link": _cmd_link,
    "minor": _cmd_minor,
    "embeddable": _cmd_embeddable,
    "bridges": _cmd_bridges,
    "ears": _cmd_ears,
    "decompose": _cmd_decompose,
    "generate": _cmd_generate,
    "verify-witness": _cmd_verify_witness,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.monotonic()
    try:
        threads = _threads()
        status, result, code, seed = _HANDLERS[args.command](args)
        digest = sha256_of_file(args.input) if hasattr(args, "input") else None
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypergraphError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timings = None
    if args.timings:
        timings = {"total_secs": round(time.monotonic() - started, 6)}
    sys.stdout.write(make_report(args.command, digest, status, result,
                                 seed=seed, threads=threads, timings=timings))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
