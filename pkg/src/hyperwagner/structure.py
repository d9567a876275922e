"""Bridges of a sphere subcomplex, segment partitions, overlap taxonomy,
ear decompositions, and marked cut decompositions.

Everything here is relative to a host complex G and, for the bridge
machinery, a distinguished sphere subcomplex S sharing G's vertex table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .complexes import (
    FaceKey,
    UniformComplex,
    face_key,
    strip_isolated,
    subcomplex,
)
from .connectivity import one_skeleton
from .errors import (
    BadParameters,
    BridgesOfDifferentSpheres,
    Disconnected,
    InconsistentMarkers,
    NotACut,
    NotClosed,
    NotSubcomplex,
    SphereNotSubcomplex,
)
from .homology import (
    ManifoldCertificate,
    certify_ball,
    certify_sphere,
    support_components,
)


@dataclass(frozen=True)
class Bridge:
    """One attachment piece of the host relative to the sphere.

    A trivial bridge is a single host facet all of whose vertices lie on
    the sphere without the facet itself belonging to it; a nontrivial
    bridge collects the facets touching one component of the host minus
    the sphere vertices. The projection lists every face shared with the
    sphere, sorted by dimension then key.
    """
    internal_vertices: tuple[int, ...]
    facets: tuple[FaceKey, ...]
    attachments: tuple[int, ...]
    projection: tuple[FaceKey, ...]
    trivial: bool


@dataclass(frozen=True)
class SegmentPartition:
    blocks: tuple[tuple[FaceKey, ...], ...]
    separating_faces: tuple[FaceKey, ...]


@dataclass(frozen=True)
class PairVerdict:
    kind: str  # "avoid" | "skew" | "equivalent-d-plus-1" | "other"
    detail: str = ""


def _require_subcomplex(g: UniformComplex, s: UniformComplex) -> None:
    if s.d != g.d or s.n != g.n:
        raise SphereNotSubcomplex(
            f"sphere must share the host vertex table (host d={g.d}, n={g.n})")
    missing = [f for f in s.facets if not g.has_facet(f)]
    if missing:
        raise SphereNotSubcomplex(f"{missing[0]} is not a host facet")


def _shared_faces(s: UniformComplex, facets: Iterable[FaceKey]) -> tuple[FaceKey, ...]:
    out = set()
    for f in facets:
        for size in range(1, len(f)):
            for sub in itertools.combinations(f, size):
                if s.is_face(sub):
                    out.add(sub)
    return tuple(sorted(out, key=lambda k: (len(k), k)))


def bridges(g: UniformComplex, s: UniformComplex, *,
            assert_sphere: bool = False) -> list[Bridge]:
    """All bridges of s in g: nontrivial ones first (by smallest internal
    vertex), then trivial ones (by facet)."""
    _require_subcomplex(g, s)
    if not assert_sphere:
        cert = certify_sphere(strip_isolated(s), g.d - 1)
        if cert.status != "certified":
            raise SphereNotSubcomplex(f"sphere certificate is {cert.status}")
    on_sphere = set(s.support_vertices)
    sphere_facets = set(s.facets)
    adj: dict[int, set[int]] = {}
    for a, b in g.faces(1):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    outside = [v for v in g.support_vertices if v not in on_sphere]
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in outside:
        if start in comp_of:
            continue
        comp = [start]
        comp_of[start] = len(comps)
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in adj.get(x, ()):
                if y not in on_sphere and y not in comp_of:
                    comp_of[y] = len(comps)
                    comp.append(y)
                    frontier.append(y)
        comps.append(sorted(comp))
    grouped: dict[int, list[FaceKey]] = {i: [] for i in range(len(comps))}
    trivial_facets = []
    for f in g.facets:
        if f in sphere_facets:
            continue
        inside = [v for v in f if v not in on_sphere]
        if inside:
            grouped[comp_of[inside[0]]].append(f)
        else:
            trivial_facets.append(f)
    out = []
    for i, comp in enumerate(comps):
        facets = tuple(grouped[i])
        attachments = tuple(sorted({v for f in facets for v in f} & on_sphere))
        out.append(Bridge(tuple(comp), facets, attachments,
                          _shared_faces(s, facets), False))
    for f in trivial_facets:
        out.append(Bridge((), (f,), f, _shared_faces(s, [f]), True))
    return out


def segments(s: UniformComplex, projection: Iterable[Sequence[int]]) -> SegmentPartition:
    """Partition the sphere's facets by cutting the dual graph along the
    ridge-dimension faces of the projection."""
    proj = [face_key(f) for f in projection]
    for f in proj:
        if not f or len(f) >= s.d or not s.is_face(f):
            raise NotSubcomplex(f"{f} is not a proper face of the sphere")
    cut = {f for f in proj if len(f) == s.d - 1}
    by_ridge: dict[FaceKey, list[int]] = {}
    for idx, fac in enumerate(s.facets):
        for sub in itertools.combinations(fac, s.d - 1):
            by_ridge.setdefault(sub, []).append(idx)
    seen: dict[int, int] = {}
    blocks: list[list[int]] = []
    for start in range(len(s.facets)):
        if start in seen:
            continue
        blocks.append([start])
        seen[start] = len(blocks) - 1
        frontier = [start]
        while frontier:
            idx = frontier.pop()
            for sub in itertools.combinations(s.facets[idx], s.d - 1):
                if sub in cut:
                    continue
                for other in by_ridge[sub]:
                    if other not in seen:
                        seen[other] = len(blocks) - 1
                        blocks[-1].append(other)
                        frontier.append(other)
    block_keys = tuple(tuple(s.facets[i] for i in sorted(b)) for b in blocks)
    return SegmentPartition(tuple(sorted(block_keys)), tuple(sorted(cut)))


def _within_one_block(attachments: Sequence[int], part: SegmentPartition) -> bool:
    want = set(attachments)
    for block in part.blocks:
        if want <= {v for f in block for v in f}:
            return True
    return False


def _connected_face_subsets(adj: Sequence[int], universe: int, seed: int,
                            counter: list[int]) -> Iterator[int]:
    """Connected subsets (as bitmasks) of `universe` with minimum bit `seed`.

    counter[0] is a shared node allowance; enumeration stops silently when
    it runs out, so callers treat exhaustion as an inconclusive search.
    """
    bit = 1 << seed
    if not universe & bit:
        return
    allowed = universe & ~(bit - 1)

    def rec(bset: int, nbr: int, banned: int) -> Iterator[int]:
        if counter[0] <= 0:
            return
        counter[0] -= 1
        yield bset
        cand = nbr & allowed & ~banned
        while cand:
            low = cand & -cand
            cand ^= low
            child = bset | low
            yield from rec(child, (nbr | adj[low.bit_length() - 1]) & ~child,
                           banned)
            banned |= low

    yield from rec(bit, adj[seed] & ~bit, 0)


_SKEW_FACE_BOUND = 24
_SKEW_NODE_CAP = 200000


def _skew_split(s: UniformComplex, owner: Bridge,
                other: Bridge) -> Optional[str]:
    """A certified sphere inside owner's projection that separates two
    segments each holding an attachment of `other` strictly inside."""
    d = s.d

    def separates(cut_faces: Sequence[FaceKey]) -> bool:
        part = segments(s, cut_faces)
        if len(part.blocks) != 2:
            return False
        rim = {v for f in cut_faces for v in f}
        for block in part.blocks:
            inside = {v for f in block for v in f} - rim
            if not inside & set(other.attachments):
                return False
        return True

    if d == 2:
        points = [f for f in owner.projection if len(f) == 1]
        for a, b in itertools.combinations(points, 2):
            if separates((a, b)):
                return f"two-point split at {a[0]} and {b[0]}"
        return None
    ridges = [f for f in owner.projection if len(f) == d - 1]
    if len(ridges) > _SKEW_FACE_BOUND:
        return None
    adj = [0] * len(ridges)
    for i, j in itertools.combinations(range(len(ridges)), 2):
        if len(set(ridges[i]) & set(ridges[j])) >= d - 2:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    universe = (1 << len(ridges)) - 1
    counter = [_SKEW_NODE_CAP]
    for seed in range(len(ridges)):
        for mask in _connected_face_subsets(adj, universe, seed, counter):
            chosen = [ridges[i] for i in range(len(ridges)) if mask >> i & 1]
            if len(chosen) < 3:
                continue
            counts: dict[FaceKey, int] = {}
            for f in chosen:
                for sub in itertools.combinations(f, d - 2):
                    counts[sub] = counts.get(sub, 0) + 1
            if any(m != 2 for m in counts.values()):
                continue
            verts = sorted({v for f in chosen for v in f})
            remap = {v: k for k, v in enumerate(verts)}
            cand = UniformComplex(d - 1, len(verts),
                                  [tuple(remap[v] for v in f) for f in chosen])
            if certify_sphere(cand, d - 2).status != "certified":
                continue
            if separates(chosen):
                return f"split along a {len(chosen)}-face sphere"
    return None


def classify_pair(g: UniformComplex, s: UniformComplex, b1: Bridge,
                  b2: Bridge) -> PairVerdict:
    """Avoid / skew / equivalent classification of two bridges of s.

    Avoidance demands each bridge's attachments sit inside a single closed
    segment of the other's partition; requiring both directions matches
    the classical picture where one bridge's projection cuts nothing.
    """
    known = bridges(g, s, assert_sphere=True)
    if b1 not in known or b2 not in known:
        raise BridgesOfDifferentSpheres("bridge does not belong to this sphere")
    if b1 == b2:
        raise BadParameters("cannot classify a bridge against itself")
    part1 = segments(s, b1.projection)
    part2 = segments(s, b2.projection)
    if (_within_one_block(b2.attachments, part1)
            and _within_one_block(b1.attachments, part2)):
        return PairVerdict("avoid")
    if (b1.attachments == b2.attachments and b1.projection == b2.projection
            and len(b1.attachments) == g.d + 1):
        return PairVerdict("equivalent-d-plus-1",
                           f"shared {g.d + 1}-vertex attachment")
    found = _skew_split(s, b1, b2) or _skew_split(s, b2, b1)
    if found:
        return PairVerdict("skew", found)
    big = max(len([f for f in b.projection if len(f) == s.d - 1])
              for b in (b1, b2))
    if big > _SKEW_FACE_BOUND:
        return PairVerdict("other",
                           f"projection has {big} ridge faces, beyond the "
                           f"skew search bound of {_SKEW_FACE_BOUND}")
    return PairVerdict("other", "overlapping but neither skew nor equivalent")


@dataclass(frozen=True)
class Ear:
    facets: tuple[FaceKey, ...]
    boundary: tuple[FaceKey, ...]
    internal_vertices: tuple[int, ...]
    certificate: ManifoldCertificate


@dataclass(frozen=True)
class EarDecomposition:
    base: tuple[FaceKey, ...]
    base_certificate: ManifoldCertificate
    ears: tuple[Ear, ...]


def _facet_adjacency(facets: Sequence[FaceKey], d: int) -> list[int]:
    by_ridge: dict[FaceKey, list[int]] = {}
    for idx, f in enumerate(facets):
        for sub in itertools.combinations(f, d - 1):
            by_ridge.setdefault(sub, []).append(idx)
    adj = [0] * len(facets)
    for members in by_ridge.values():
        for i, j in itertools.combinations(members, 2):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def _ridge_counts(facets: Iterable[FaceKey], d: int) -> dict[FaceKey, int]:
    counts: dict[FaceKey, int] = {}
    for f in facets:
        for sub in itertools.combinations(f, d - 1):
            counts[sub] = counts.get(sub, 0) + 1
    return counts


def _certified_sub(g: UniformComplex, facets: Sequence[FaceKey], kind: str,
                   k: int) -> Optional[ManifoldCertificate]:
    piece = strip_isolated(subcomplex(g, facets))
    cert = (certify_sphere if kind == "sphere" else certify_ball)(piece, k)
    return cert if cert.status == "certified" else None


def ear_decomposition(g: UniformComplex,
                      hint: Optional[Union[UniformComplex, Iterable[Sequence[int]]]] = None,
                      node_cap: int = 50000) -> Optional[EarDecomposition]:
    """A certified base sphere plus certified ball ears covering g.

    Backtracking search, bounded by node_cap for determinism; None means
    no decomposition was found within the bound, not that none exists.
    """
    if g.pendant_facets():
        raise NotClosed("complex has pendant facets")
    if len(support_components(g)) != 1 or g.isolated_vertices:
        raise Disconnected("complex is not connected")
    facets = list(g.facets)
    index = {f: i for i, f in enumerate(facets)}
    adj = _facet_adjacency(facets, g.d)
    counter = [node_cap]

    def base_candidates() -> Iterator[tuple[FaceKey, ...]]:
        if hint is not None:
            keys = (hint.facets if isinstance(hint, UniformComplex)
                    else tuple(sorted(face_key(f) for f in hint)))
            for f in keys:
                if f not in index:
                    raise SphereNotSubcomplex(f"{f} is not a host facet")
            yield keys
            return
        universe = (1 << len(facets)) - 1
        for seed in range(len(facets)):
            for mask in _connected_face_subsets(adj, universe, seed, counter):
                chosen = [facets[i] for i in range(len(facets)) if mask >> i & 1]
                if all(m == 2 for m in _ridge_counts(chosen, g.d).values()):
                    yield tuple(chosen)

    def search(used: int, current_facets: set[FaceKey],
               memo: set[int]) -> Optional[list[Ear]]:
        if used.bit_count() == len(facets):
            return []
        if used in memo:
            return None
        memo.add(used)
        current_faces = set()
        for f in current_facets:
            for sub in itertools.combinations(f, g.d - 1):
                current_faces.add(sub)
        current_verts = {v for f in current_facets for v in f}
        remaining = ((1 << len(facets)) - 1) & ~used
        for seed in range(len(facets)):
            if not remaining >> seed & 1:
                continue
            for mask in _connected_face_subsets(adj, remaining, seed, counter):
                chosen = [facets[i] for i in range(len(facets)) if mask >> i & 1]
                counts = _ridge_counts(chosen, g.d)
                if any(m > 2 for m in counts.values()):
                    continue
                boundary = tuple(sorted(f for f, m in counts.items() if m == 1))
                if not boundary:
                    continue
                if not all(f in current_faces for f in boundary):
                    continue
                rim = {v for f in boundary for v in f}
                internal = tuple(sorted({v for f in chosen for v in f} - rim))
                if any(v in current_verts for v in internal):
                    continue
                cert = _certified_sub(g, chosen, "ball", g.d - 1)
                if cert is None:
                    continue
                rest = search(used | mask, current_facets | set(chosen), memo)
                if rest is not None:
                    return [Ear(tuple(chosen), boundary, internal, cert)] + rest
            if counter[0] <= 0:
                return None
        return None

    for base in base_candidates():
        cert = _certified_sub(g, base, "sphere", g.d - 1)
        if cert is None:
            continue
        used = 0
        for f in base:
            used |= 1 << index[f]
        ears = search(used, set(base), set())
        if ears is not None:
            return EarDecomposition(tuple(base), cert, tuple(ears))
        if counter[0] <= 0:
            return None
    return None


def verify_ear_decomposition(g: UniformComplex,
                             dec: EarDecomposition) -> bool:
    """Independently recheck every certificate and nesting condition."""
    if any(not g.has_facet(f) for f in dec.base):
        return False
    if _certified_sub(g, dec.base, "sphere", g.d - 1) is None:
        return False
    current = set(dec.base)
    for ear in dec.ears:
        if any(not g.has_facet(f) for f in ear.facets):
            return False
        if current & set(ear.facets):
            return False
        counts = _ridge_counts(ear.facets, g.d)
        boundary = tuple(sorted(f for f, m in counts.items() if m == 1))
        if boundary != tuple(sorted(ear.boundary)):
            return False
        current_faces = set()
        for f in current:
            for sub in itertools.combinations(f, g.d - 1):
                current_faces.add(sub)
        if not all(f in current_faces for f in boundary):
            return False
        rim = {v for f in boundary for v in f}
        internal = {v for f in ear.facets for v in f} - rim
        if tuple(sorted(internal)) != tuple(sorted(ear.internal_vertices)):
            return False
        if internal & {v for f in current for v in f}:
            return False
        if _certified_sub(g, ear.facets, "ball", g.d - 1) is None:
            return False
        current |= set(ear.facets)
    return current == set(g.facets)


@dataclass(frozen=True)
class MarkedComponent:
    complex: UniformComplex
    marker: FaceKey
    marker_was_added: bool


def marked_s_decomposition(g: UniformComplex,
                           cut: Iterable[int]) -> list[MarkedComponent]:
    """One component of g minus the cut per entry, each carrying the cut
    as a marker facet (added when not already present)."""
    cut_key = face_key(cut)
    if len(cut_key) != g.d:
        raise BadParameters(f"cut must have exactly {g.d} vertices")
    if any(not 0 <= v < g.n for v in cut_key):
        raise BadParameters(f"cut {cut_key} outside the vertex table")
    comps = one_skeleton(g).components(frozenset(cut_key))
    if len(comps) < 2:
        raise NotACut(f"{cut_key} does not disconnect the 1-skeleton")
    parts = []
    for comp in comps:
        verts = sorted(set(comp) | set(cut_key))
        back = {v: i for i, v in enumerate(verts)}
        sub = g.induced(verts)
        marker = tuple(back[v] for v in cut_key)
        present = sub.has_facet(marker)
        if not present:
            sub = UniformComplex(sub.d, sub.n, list(sub.facets) + [marker],
                                 sub.names)
        parts.append(MarkedComponent(sub, marker, not present))
    return parts


def _name_order(name: str) -> tuple[int, str]:
    return len(name), name


def reassemble(parts: Sequence[MarkedComponent],
               drop_marker: bool = True) -> UniformComplex:
    """Union of marked components, identifying vertices by name.

    The marker facet is removed only when drop_marker is set and every
    part recorded the marker as added.
    """
    if not parts:
        raise BadParameters("nothing to reassemble")
    d = parts[0].complex.d
    if any(p.complex.d != d for p in parts):
        raise InconsistentMarkers("parts have different uniformity")
    marker_names = {frozenset(p.complex.name_of(v) for v in p.marker)
                    for p in parts}
    flags = {p.marker_was_added for p in parts}
    if len(marker_names) != 1 or len(flags) != 1:
        raise InconsistentMarkers("marker vertex sets or flags disagree")
    names = sorted({p.complex.name_of(v) for p in parts
                    for v in range(p.complex.n)}, key=_name_order)
    gid = {name: i for i, name in enumerate(names)}
    facets = set()
    for p in parts:
        for f in p.complex.facets:
            facets.add(tuple(sorted(gid[p.complex.name_of(v)] for v in f)))
    if drop_marker and flags == {True}:
        marker = tuple(sorted(gid[n] for n in next(iter(marker_names))))
        facets.discard(marker)
    return UniformComplex(d, len(names), sorted(facets), names)
