"""Exact vertex connectivity of 1-skeletons.

Connectivity is computed by unit-capacity max-flow on the vertex-split
digraph, with the source ranging over a seed set of kappa+1 vertices (some
minimum cut misses at least one of them, so the minimum over those flows is
exact). Deterministic: vertices are scanned in ascending id order and the
reported cut is the one extracted from the first flow attaining the minimum.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .complexes import UniformComplex
from .errors import (
    BadParameters,
    PreconditionViolated,
    TooLargeForEnumeration,
    TooSmall,
)


@dataclass(frozen=True)
class VertexCut:
    vertices: tuple[int, ...]
    component_sizes: tuple[int, ...]


class SkeletonGraph:
    """A simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise BadParameters(f"vertex count {n}")
        seen = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadParameters(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise BadParameters(f"loop at {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                continue
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_complete(self) -> bool:
        return all(len(self.adj[v]) == self.n - 1 for v in range(self.n))

    def components(self, removed: frozenset[int] = frozenset()) -> list[tuple[int, ...]]:
        comps = []
        seen = set(removed)
        for start in range(self.n):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in comp and w not in seen:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    def contract_edge(self, edge: tuple[int, int]) -> "SkeletonGraph":
        u, v = min(edge), max(edge)
        if v not in self.adj[u]:
            raise BadParameters(f"({u},{v}) is not an edge")
        def relabel(w: int) -> int:
            if w == v:
                w = u
            return w if w < v else w - 1
        out = set()
        for a, b in self.edges:
            x, y = relabel(a), relabel(b)
            if x != y:
                out.add((min(x, y), max(x, y)))
        return SkeletonGraph(self.n - 1, out)


def one_skeleton(c: UniformComplex) -> SkeletonGraph:
    """The graph of 1-faces on the full vertex table of c."""
    if c.d < 2:
        raise BadParameters("1-skeleton needs a complex of uniformity >= 2")
    return SkeletonGraph(c.n, c.faces(1))


def _min_vertex_cut(g: SkeletonGraph, s: int, t: int) -> tuple[int, tuple[int, ...]]:
    """Max-flow value and a minimum s,t vertex cut (s,t non-adjacent)."""
    inf = g.n + 1
    # node 2v is the entry copy of v, 2v+1 the exit copy
    cap: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        cap[(2 * v, 2 * v + 1)] = inf if v in (s, t) else 1
    for u, v in g.edges:
        cap[(2 * u + 1, 2 * v)] = inf
        cap[(2 * v + 1, 2 * u)] = inf
    succ: dict[int, list[int]] = {}
    for a, b in cap:
        succ.setdefault(a, []).append(b)
        succ.setdefault(b, [])
    for a in succ:
        succ[a].sort()
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: -1}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in succ[a]:
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] = cap.get((b, a), 0) + 1
            if cap.get((b, a), 0) > 0 and a not in succ.get(b, ()):
                succ.setdefault(b, []).append(a)
                succ[b].sort()
            b = a
        flow += 1
    reach = {source}
    stack = [source]
    while stack:
        a = stack.pop()
        for b in succ[a]:
            if b not in reach and cap.get((a, b), 0) > 0:
                reach.add(b)
                stack.append(b)
    cut = tuple(v for v in range(g.n)
                if 2 * v in reach and 2 * v + 1 not in reach)
    return flow, cut


def vertex_connectivity(g: SkeletonGraph) -> tuple[int, Optional[VertexCut]]:
    """Exact connectivity with a witnessing minimum cut (None for complete)."""
    if g.n < 2:
        raise TooSmall("connectivity needs at least 2 vertices")
    if g.is_complete():
        return g.n - 1, None
    comps = g.components()
    if len(comps) > 1:
        return 0, VertexCut((), tuple(len(c) for c in comps))
    kappa = g.n - 1
    best: Optional[tuple[int, ...]] = None
    s = 0
    while s <= kappa and s < g.n:
        non_adjacent = [t for t in range(g.n)
                        if t != s and t not in g.adj[s]]
        for t in non_adjacent:
            value, cut = _min_vertex_cut(g, s, t)
            if value < kappa or best is None:
                kappa = value
                best = cut
        s += 1
    assert best is not None
    sizes = tuple(len(c) for c in g.components(frozenset(best)))
    return kappa, VertexCut(best, sizes)


def is_k_connected(g: SkeletonGraph, k: int) -> bool:
    if k < 0:
        raise BadParameters(f"k={k}")
    if k == 0:
        return g.n > 0
    if g.n <= k:
        return False
    kappa, _ = vertex_connectivity(g)
    return kappa >= k


def contractible_edge(g: SkeletonGraph, k: int) -> Optional[tuple[int, int]]:
    """First edge (canonical order) whose contraction stays k-connected.

    None when no edge qualifies; the octahedron at k=4 is the known
    boundary case where that happens despite 4-connectivity.
    """
    if g.n < k + 1 or not is_k_connected(g, k):
        raise PreconditionViolated(f"graph is not {k}-connected with >= {k + 1} vertices")
    for edge in g.edges:
        if is_k_connected(g.contract_edge(edge), k):
            return edge
    return None


def enumerate_cuts(g: SkeletonGraph, size: int) -> list[VertexCut]:
    """All vertex cuts of exactly the given size, lexicographic."""
    if g.n > 16:
        raise TooLargeForEnumeration(f"n={g.n} exceeds the exhaustive guard of 16")
    if size < 0 or size > g.n - 2:
        raise PreconditionViolated(f"cut size {size} outside 0..{g.n - 2}")
    out = []
    for combo in itertools.combinations(range(g.n), size):
        comps = g.components(frozenset(combo))
        if len(comps) >= 2:
            out.append(VertexCut(combo, tuple(len(c) for c in comps)))
    return out
