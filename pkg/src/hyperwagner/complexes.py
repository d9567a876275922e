"""Pure d-uniform facet complexes.

A complex is a vertex table 0..n-1 plus a set of facets, each a strictly
increasing tuple of d distinct vertex ids. Lower-dimensional faces are never
stored: they are enumerated from the facets on demand and memoized per
dimension. Vertices that appear in no facet are legal but flagged isolated.

Canonical labeling (iterative color refinement plus individualization
backtracking on the vertex-facet incidence structure) provides isomorphism
tests, deduplication keys, and byte-stable serialization order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    BadParameters,
    DimensionOutOfRange,
    DuplicateFacet,
    LoopFacet,
    NonUniformFacet,
    NotAFace,
    NotAVertex,
    VertexOutOfRange,
)

FaceKey = tuple[int, ...]


def face_key(vertices: Iterable[int]) -> FaceKey:
    """Normalize a vertex collection into a strictly increasing tuple."""
    key = tuple(sorted(vertices))
    for a, b in zip(key, key[1:]):
        if a == b:
            raise LoopFacet(f"repeated vertex {a} in face {key}")
    return key


class UniformComplex:
    """A pure complex: all facets have exactly d vertices.

    The constructor validates fully; ``d >= 1`` is accepted so that links
    and skeletons of 2-uniform complexes stay representable. The public
    entry point :func:`build_complex` additionally enforces ``d >= 2``.
    """

    __slots__ = ("d", "n", "facets", "names", "_facet_set", "_faces_memo",
                 "_canon_memo")

    def __init__(self, d: int, n: int, facets: Iterable[Sequence[int]],
                 names: Optional[Sequence[str]] = None):
        if d < 1:
            raise BadParameters(f"uniformity d={d}, need d >= 1")
        if n < 0:
            raise BadParameters(f"vertex count n={n}, need n >= 0")
        keys: list[FaceKey] = []
        for raw in facets:
            fac = tuple(raw)
            if len(fac) != d:
                raise NonUniformFacet(f"facet {fac} has {len(fac)} vertices, expected {d}")
            key = face_key(fac)
            for v in key:
                if not (0 <= v < n):
                    raise VertexOutOfRange(f"vertex {v} of facet {fac} outside 0..{n - 1}")
            keys.append(key)
        keys.sort()
        for a, b in zip(keys, keys[1:]):
            if a == b:
                raise DuplicateFacet(f"facet {a} listed more than once")
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n:
                raise BadParameters(f"{len(names)} names for {n} vertices")
        self.d = d
        self.n = n
        self.facets: tuple[FaceKey, ...] = tuple(keys)
        self.names = names
        self._facet_set = frozenset(keys)
        self._faces_memo: dict[int, tuple[FaceKey, ...]] = {d - 1: self.facets}
        self._canon_memo: Optional[tuple] = None

    # basic queries ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniformComplex):
            return NotImplemented
        return (self.d, self.n, self.facets) == (other.d, other.n, other.facets)

    def __hash__(self) -> int:
        return hash((self.d, self.n, self.facets))

    def __repr__(self) -> str:
        return f"UniformComplex(d={self.d}, n={self.n}, facets={len(self.facets)})"

    def name_of(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def has_facet(self, fac: FaceKey) -> bool:
        return fac in self._facet_set

    @property
    def support_vertices(self) -> tuple[int, ...]:
        """Vertices that appear in at least one facet, ascending."""
        seen = set()
        for fac in self.facets:
            seen.update(fac)
        return tuple(sorted(seen))

    @property
    def isolated_vertices(self) -> tuple[int, ...]:
        support = set(self.support_vertices)
        return tuple(v for v in range(self.n) if v not in support)

    def faces(self, i: int) -> tuple[FaceKey, ...]:
        """All i-dimensional faces ((i+1)-vertex subsets of facets), sorted."""
        if not (0 <= i <= self.d - 1):
            raise DimensionOutOfRange(f"dimension {i} outside 0..{self.d - 1}")
        if i not in self._faces_memo:
            out = set()
            for fac in self.facets:
                out.update(itertools.combinations(fac, i + 1))
            self._faces_memo[i] = tuple(sorted(out))
        return self._faces_memo[i]

    def face_set(self, i: int) -> frozenset:
        return frozenset(self.faces(i))

    def is_face(self, key: FaceKey) -> bool:
        if not key:
            return False
        dim = len(key) - 1
        if dim > self.d - 1:
            return False
        return key in self.face_set(dim)

    def degree(self, a: Iterable[int], j: int) -> int:
        """Number of j-faces incident (j > dim a) or adjacent (j = dim a) to a.

        Adjacent means the intersection is a common face of one dimension
        lower. For two vertices the rule degenerates, so adjacency there is
        sharing a facet.
        """
        key = face_key(a)
        dim = len(key) - 1
        if not self.is_face(key):
            raise NotAFace(f"{key} is not a face of this complex")
        if j < dim or j > self.d - 1:
            raise DimensionOutOfRange(f"j={j} outside {dim}..{self.d - 1}")
        aset = set(key)
        if j > dim:
            return sum(1 for f in self.faces(j) if aset.issubset(f))
        if dim == 0:
            v = key[0]
            neigh = set()
            for fac in self.facets:
                if v in fac:
                    neigh.update(fac)
            neigh.discard(v)
            return len(neigh)
        want = len(key) - 1
        return sum(1 for f in self.faces(j)
                   if f != key and len(aset.intersection(f)) == want)

    def link(self, v: int) -> "UniformComplex":
        """The (d-1)-uniform complex of facets through v with v removed.

        The vertex table is restricted to the neighbours of v; original
        identities are preserved through the name table.
        """
        if not (0 <= v < self.n):
            raise NotAVertex(f"vertex {v} outside 0..{self.n - 1}")
        if self.d < 2:
            raise DimensionOutOfRange("links of 1-uniform complexes are not defined")
        neigh = set()
        star = []
        for fac in self.facets:
            if v in fac:
                rest = tuple(u for u in fac if u != v)
                star.append(rest)
                neigh.update(rest)
        order = sorted(neigh)
        index = {u: i for i, u in enumerate(order)}
        names = tuple(self.name_of(u) for u in order)
        facets = [tuple(index[u] for u in rest) for rest in star]
        return UniformComplex(self.d - 1, len(order), facets, names)

    def skeleton(self, k: int) -> "UniformComplex":
        """The (k+1)-uniform complex whose facets are this complex's k-faces."""
        if not (0 <= k <= self.d - 1):
            raise DimensionOutOfRange(f"k={k} outside 0..{self.d - 1}")
        return UniformComplex(k + 1, self.n, self.faces(k), self.names)

    def pendant_facets(self) -> tuple[FaceKey, ...]:
        """Facets with a (d-2)-face shared with no other facet.

        For graphs this picks out edges with an endpoint of degree one.
        """
        if self.d < 2:
            return ()
        counts: dict[FaceKey, int] = {}
        for fac in self.facets:
            for sub in itertools.combinations(fac, self.d - 1):
                counts[sub] = counts.get(sub, 0) + 1
        out = []
        for fac in self.facets:
            if any(counts[sub] == 1 for sub in itertools.combinations(fac, self.d - 1)):
                out.append(fac)
        return tuple(out)

    def is_closed(self) -> bool:
        return not self.pendant_facets()

    def induced(self, vertices: Iterable[int]) -> "UniformComplex":
        """The complex on the given vertices with every facet fully inside.

        Vertices are renumbered 0..|S|-1 in ascending original order; the
        name table keeps original identities.
        """
        sub = sorted(set(vertices))
        for v in sub:
            if not (0 <= v < self.n):
                raise NotAVertex(f"vertex {v} outside 0..{self.n - 1}")
        index = {v: i for i, v in enumerate(sub)}
        keep = set(sub)
        facets = [tuple(index[u] for u in fac) for fac in self.facets
                  if keep.issuperset(fac)]
        names = tuple(self.name_of(v) for v in sub)
        return UniformComplex(self.d, len(sub), facets, names)


def build_complex(d: int, n: int, facets: Iterable[Sequence[int]],
                  names: Optional[Sequence[str]] = None) -> UniformComplex:
    """Validated public constructor; rejects d < 2."""
    if d < 2:
        raise BadParameters(f"uniformity d={d}, need d >= 2")
    return UniformComplex(d, n, facets, names)


def subcomplex(parent: UniformComplex, facets: Iterable[Sequence[int]]) -> UniformComplex:
    """A complex on the parent's vertex table using only the given facets.

    Every facet must be a facet of the parent. Vertex ids are unchanged, so
    results can be compared against the parent directly.
    """
    from .errors import NotSubcomplex
    keys = [face_key(f) for f in facets]
    for key in keys:
        if not parent.has_facet(key):
            raise NotSubcomplex(f"{key} is not a facet of the parent complex")
    return UniformComplex(parent.d, parent.n, keys, parent.names)


def strip_isolated(c: UniformComplex) -> UniformComplex:
    """Restrict the vertex table to the facet support."""
    return c.induced(c.support_vertices)


# isomorphism ----------------------------------------------------------


@dataclass(frozen=True)
class IsoCertificate:
    """A vertex bijection from one complex onto another."""
    mapping: tuple[int, ...]  # mapping[v in a] = vertex in b

    def verify(self, a: UniformComplex, b: UniformComplex) -> bool:
        if a.d != b.d or a.n != b.n or len(self.mapping) != a.n:
            return False
        if sorted(self.mapping) != list(range(b.n)):
            return False
        image = {tuple(sorted(self.mapping[v] for v in fac)) for fac in a.facets}
        return image == set(b.facets)


def _refine(facets: tuple[FaceKey, ...], vcol: dict[int, int]) -> dict[int, int]:
    """Iterated color refinement on the vertex-facet incidence structure."""
    fcol = {fac: 0 for fac in facets}
    while True:
        fsig = {fac: (fcol[fac], tuple(sorted(vcol[v] for v in fac))) for fac in facets}
        fpal = {sig: i for i, sig in enumerate(sorted(set(fsig.values())))}
        new_fcol = {fac: fpal[fsig[fac]] for fac in facets}
        incident: dict[int, list[int]] = {v: [] for v in vcol}
        for fac in facets:
            for v in fac:
                incident[v].append(new_fcol[fac])
        vsig = {v: (vcol[v], tuple(sorted(incident[v]))) for v in vcol}
        vpal = {sig: i for i, sig in enumerate(sorted(set(vsig.values())))}
        new_vcol = {v: vpal[vsig[v]] for v in vcol}
        if len(set(new_vcol.values())) == len(set(vcol.values())) and \
           len(set(new_fcol.values())) == len(set(fcol.values())):
            return new_vcol
        vcol, fcol = new_vcol, new_fcol


def _canonical_support(c: UniformComplex) -> tuple[tuple[FaceKey, ...], tuple[int, ...]]:
    """Canonical facet tuple over the support, plus the support labeling.

    Returns (canonical facets, perm) where perm maps support vertices (in
    ascending order) to canonical labels 0..s-1. Individualization explores
    every member of the first non-singleton color class, so the minimum
    over leaves is isomorphism invariant.
    """
    support = c.support_vertices
    facets = c.facets
    if not facets:
        return (), ()
    # complete complexes are already canonical under any labeling
    s = len(support)
    full = 1
    for i in range(c.d):
        full = full * (s - i) // (i + 1)
    dense = {v: i for i, v in enumerate(support)}
    if len(facets) == full:
        relabeled = tuple(sorted(tuple(sorted(dense[v] for v in fac)) for fac in facets))
        return relabeled, tuple(range(s))

    best: list = [None, None]

    def leaf(vcol: dict[int, int]) -> None:
        order = sorted(vcol, key=lambda v: vcol[v])
        label = {v: i for i, v in enumerate(order)}
        relabeled = tuple(sorted(tuple(sorted(label[v] for v in fac)) for fac in facets))
        if best[0] is None or relabeled < best[0]:
            best[0] = relabeled
            best[1] = tuple(label[v] for v in support)

    def search(vcol: dict[int, int]) -> None:
        vcol = _refine(facets, vcol)
        classes: dict[int, list[int]] = {}
        for v, col in vcol.items():
            classes.setdefault(col, []).append(v)
        target = None
        for col in sorted(classes):
            if len(classes[col]) > 1:
                target = sorted(classes[col])
                break
        if target is None:
            leaf(vcol)
            return
        shifted = {v: 2 * col + 2 for v, col in vcol.items()}
        for v in target:
            child = dict(shifted)
            child[v] = shifted[v] - 1
            search(child)

    search({v: 0 for v in support})
    return best[0], best[1]


def canonical_key(c: UniformComplex) -> tuple:
    """A hashable value equal across isomorphic complexes (and only those)."""
    if c._canon_memo is None:
        canon, _ = _canonical_support(c)
        c._canon_memo = (c.d, c.n, len(c.isolated_vertices), canon)
    return c._canon_memo


def support_key(c: UniformComplex) -> tuple:
    """Canonical key that ignores isolated vertices."""
    canon, _ = _canonical_support(c)
    return (c.d, len(c.support_vertices), canon)


def canonical_labeling(c: UniformComplex) -> tuple[int, ...]:
    """A full-vertex labeling realizing the canonical form.

    Support vertices receive their canonical labels; isolated vertices are
    appended afterwards in ascending id order.
    """
    support = c.support_vertices
    _, perm = _canonical_support(c)
    out = [-1] * c.n
    for pos, v in enumerate(support):
        out[v] = perm[pos]
    nxt = len(support)
    for v in range(c.n):
        if out[v] < 0:
            out[v] = nxt
            nxt += 1
    return tuple(out)


def is_isomorphic(a: UniformComplex, b: UniformComplex) -> Optional[IsoCertificate]:
    """Certificate mapping a onto b, or None when no isomorphism exists."""
    if canonical_key(a) != canonical_key(b):
        return None
    la = canonical_labeling(a)
    lb = canonical_labeling(b)
    inv_b = [0] * b.n
    for v, lab in enumerate(lb):
        inv_b[lab] = v
    mapping = tuple(inv_b[la[v]] for v in range(a.n))
    cert = IsoCertificate(mapping)
    # refinement is invariant, so equal keys always yield a valid map;
    # verify anyway so a bug here can never silently corrupt callers
    if not cert.verify(a, b):
        raise AssertionError("canonical labeling produced an invalid isomorphism")
    return cert
