"""Shared builders for the test suite.

Graphs are 2-uniform complexes; the d=3 surface constructions return
3-uniform complexes. Everything here is deterministic given its
arguments.
"""
from __future__ import annotations

import itertools
import random

import pytest

from hyperwagner import UniformComplex


def graph(n: int, edges) -> UniformComplex:
    return UniformComplex(2, n, edges)


def cycle_graph(n: int) -> UniformComplex:
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> UniformComplex:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph(10, outer + spokes + inner)


def grid_graph(rows: int, cols: int) -> UniformComplex:
    def idx(i, j):
        return i * cols + j
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((idx(i, j), idx(i, j + 1)))
            if i + 1 < rows:
                edges.append((idx(i, j), idx(i + 1, j)))
    return graph(rows * cols, edges)


def wheel(k: int) -> UniformComplex:
    """Cycle of length k plus a hub adjacent to every rim vertex."""
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return graph(k + 1, edges)


def octahedron_graph() -> UniformComplex:
    edges = [e for e in itertools.combinations(range(6), 2)
             if e not in [(0, 5), (1, 4), (2, 3)]]
    return graph(6, edges)


def icosahedron_graph() -> UniformComplex:
    top, bot = 0, 11
    upper = list(range(1, 6))
    lower = list(range(6, 11))
    edges = []
    for i in range(5):
        edges.append((top, upper[i]))
        edges.append((upper[i], upper[(i + 1) % 5]))
        edges.append((bot, lower[i]))
        edges.append((lower[i], lower[(i + 1) % 5]))
        edges.append((upper[i], lower[i]))
        edges.append((upper[(i + 1) % 5], lower[i]))
    return graph(12, edges)


def mobius_kantor() -> UniformComplex:
    edges = []
    for i in range(8):
        edges.append((i, (i + 1) % 8))
        edges.append((i, 8 + i))
        edges.append((8 + i, 8 + (i + 3) % 8))
    return graph(16, edges)


def stacked_triangulation(n: int, seed: int) -> UniformComplex:
    """Random maximal planar graph grown by repeated face subdivision."""
    rng = random.Random(seed)
    faces = [(0, 1, 2)]
    edges = {(0, 1), (0, 2), (1, 2)}
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, v), (a, c, v), (b, c, v)]
        edges |= {(a, v), (b, v), (c, v)}
    return graph(n, sorted(edges))


def octahedron_surface() -> UniformComplex:
    """The 8-triangle sphere: antipodal pairs (0,5), (1,4), (2,3)."""
    facets = [f for f in itertools.combinations(range(6), 3)
              if not ({0, 5} <= set(f) or {1, 4} <= set(f) or {2, 3} <= set(f))]
    return UniformComplex(3, 6, facets)


def bipyramid(k: int) -> UniformComplex:
    """Sphere made of two cones over a k-cycle; apexes are k and k+1."""
    facets = []
    for i in range(k):
        j = (i + 1) % k
        facets.append((i, j, k))
        facets.append((i, j, k + 1))
    return UniformComplex(3, k + 2, facets)


def theta_suspension(path_lengths, extra_caps: int = 0,
                     seed: int = 0) -> UniformComplex:
    """Suspension of a generalized theta graph; closed at d=3.

    Two hubs joined by disjoint paths (each with the given number of
    interior vertices, at least one), crossed with two apexes. Each
    path's suspension strip is a membrane bounded by the hub-apex
    square, so any two strips attach along the same four vertices.
    With extra_caps > 0, tetrahedral caps are glued over empty
    triangles when available.
    """
    hub_a, hub_b = 0, 1
    nxt = 2
    paths = []
    for length in path_lengths:
        inner = list(range(nxt, nxt + length))
        nxt += length
        paths.append([hub_a] + inner + [hub_b])
    top, bot = nxt, nxt + 1
    nxt += 2
    facets = []
    for path in paths:
        for a, b in zip(path, path[1:]):
            facets.append((a, b, top))
            facets.append((a, b, bot))
    if extra_caps:
        rng = random.Random(seed)
        base = UniformComplex(3, nxt, facets)
        edge_set = set(base.faces(1))
        empty = [t for t in itertools.combinations(range(nxt), 3)
                 if not base.has_facet(t)
                 and all(e in edge_set for e in itertools.combinations(t, 2))]
        rng.shuffle(empty)
        for t in empty[:extra_caps]:
            w = nxt
            nxt += 1
            a, b, c = t
            facets += [(a, b, w), (a, c, w), (b, c, w)]
    return UniformComplex(3, nxt, facets)


@pytest.fixture
def boundary_tetrahedron() -> UniformComplex:
    return UniformComplex(3, 4, list(itertools.combinations(range(4), 3)))
