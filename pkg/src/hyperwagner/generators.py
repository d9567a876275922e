"""Constructors for named complex families and staged random builds."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .complexes import FaceKey, UniformComplex, face_key
from .errors import BadParameters, NoLegalAttachment, PreconditionViolated
from .homology import certify_ball


def complete_uniform(n: int, i: int) -> UniformComplex:
    """All i-subsets of n vertices as facets."""
    if i < 2 or n < i:
        raise BadParameters(f"need n >= i >= 2, got n={n}, i={i}")
    return UniformComplex(i, n, itertools.combinations(range(n), i))


def complete_bipartite_uniform(p: int, q: int, i: int) -> UniformComplex:
    """Complete complex on the q-side plus every (i-1)-subset of it joined
    to each of the p vertices on the other side.

    Side A is vertices 0..p-1, side B is p..p+q-1. At i=2 this is the
    complete bipartite graph plus a complete graph on B.
    """
    if p < 1 or i < 2 or q < i:
        raise BadParameters(f"need p >= 1 and q >= i >= 2, got p={p}, q={q}, i={i}")
    b_side = range(p, p + q)
    facets = [tuple(c) for c in itertools.combinations(b_side, i)]
    for tail in itertools.combinations(b_side, i - 1):
        for a in range(p):
            facets.append((a,) + tail)
    return UniformComplex(i, p + q, facets)


def simplex_boundary(d: int) -> UniformComplex:
    """The boundary of the d-simplex: the standard (d-1)-sphere."""
    if d < 2:
        raise BadParameters(f"d={d}")
    return complete_uniform(d + 1, d)


@dataclass(frozen=True)
class BuildStep:
    facet: FaceKey
    kind: str  # "start" | "ball" | "sphere"
    faces: tuple[FaceKey, ...]


@dataclass(frozen=True)
class BuildTrace:
    d: int
    steps: tuple[BuildStep, ...]


def _is_face_of(cur: UniformComplex, sub: tuple[int, ...]) -> bool:
    if any(v >= cur.n for v in sub):
        return False
    return cur.is_face(sub)


def _classify_attachment(cur: UniformComplex,
                         t: FaceKey) -> Optional[tuple[str, tuple[FaceKey, ...]]]:
    """How facet t may be glued onto cur, if legally at all.

    Legal gluings meet the current complex in a union of t's boundary
    ridges forming either a certified (d-2)-ball or the whole boundary of
    t. Any current face of t outside that union makes the gluing illegal.
    """
    d = cur.d
    if cur.has_facet(t):
        return None
    glued = [b for b in itertools.combinations(t, d - 1) if _is_face_of(cur, b)]
    if not glued:
        return None
    for size in range(1, d - 1):
        for sub in itertools.combinations(t, size):
            if _is_face_of(cur, sub) and not any(set(sub) <= set(b) for b in glued):
                return None
    if len(glued) == d:
        return "sphere", tuple(glued)
    verts = sorted({v for b in glued for v in b})
    remap = {v: j for j, v in enumerate(verts)}
    union = UniformComplex(d - 1, len(verts),
                           [tuple(remap[v] for v in b) for b in glued])
    if certify_ball(union, d - 2).status == "certified":
        return "ball", tuple(glued)
    return None


def staged_build(d: int, *, steps: Optional[int] = None,
                 seed: Optional[int] = None,
                 script: Optional[Sequence[Sequence[int]]] = None
                 ) -> tuple[UniformComplex, BuildTrace]:
    """Grow a complex one facet at a time, each gluing certified legal.

    Either replay an explicit facet script, or (given steps and a seed)
    pick uniformly at random among the legal candidate facets at every
    step; candidates extend an existing ridge by an existing or one fresh
    vertex. The returned trace replays to the same complex.
    """
    if d < 2:
        raise BadParameters(f"d={d}")
    if script is not None:
        keys = [face_key(f) for f in script]
        if not keys:
            raise BadParameters("empty script")
        facets = keys[:1]
        cur = UniformComplex(d, max(keys[0]) + 1, facets)
        trace = [BuildStep(keys[0], "start", ())]
        for t in keys[1:]:
            got = _classify_attachment(cur, t)
            if got is None:
                raise NoLegalAttachment(f"step {len(trace) + 1}: facet {t}")
            kind, glued = got
            facets.append(t)
            cur = UniformComplex(d, max(cur.n, max(t) + 1), facets)
            trace.append(BuildStep(t, kind, glued))
        return cur, BuildTrace(d, tuple(trace))
    if steps is None or steps < 1:
        raise BadParameters("steps >= 1 required without a script")
    rng = random.Random(seed)
    start = tuple(range(d))
    facets = [start]
    cur = UniformComplex(d, d, facets)
    trace = [BuildStep(start, "start", ())]
    for _ in range(steps - 1):
        candidates = set()
        for ridge in cur.faces(d - 2):
            for v in range(cur.n + 1):
                if v not in ridge:
                    candidates.add(tuple(sorted(ridge + (v,))))
        legal = []
        for t in sorted(candidates):
            got = _classify_attachment(cur, t)
            if got is not None:
                legal.append((t, got))
        if not legal:
            raise NoLegalAttachment(f"no legal facet at step {len(trace) + 1}")
        t, (kind, glued) = legal[rng.randrange(len(legal))]
        facets.append(t)
        cur = UniformComplex(d, max(cur.n, max(t) + 1), facets)
        trace.append(BuildStep(t, kind, glued))
    return cur, BuildTrace(d, tuple(trace))


def replay_trace(trace: BuildTrace) -> UniformComplex:
    """Re-run a trace's script and confirm it reproduces the same steps."""
    built, again = staged_build(trace.d, script=[s.facet for s in trace.steps])
    if again != trace:
        raise PreconditionViolated("trace does not replay to itself")
    return built


def projective_plane() -> UniformComplex:
    """The 6-vertex, 10-triangle minimal closed non-sphere surface.

    Every edge lies in exactly two triangles and the first homology is
    pure 2-torsion, which makes this the standard negative control for
    sphere certification.
    """
    facets = [
        (0, 1, 2), (0, 1, 5), (0, 2, 3), (0, 3, 4), (0, 4, 5),
        (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
    ]
    return UniformComplex(3, 6, facets)
