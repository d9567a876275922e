from __future__ import annotations

import itertools
from math import comb

import pytest

from hyperwagner import (
    BuildStep,
    BuildTrace,
    UniformComplex,
    complete_bipartite_uniform,
    complete_uniform,
    homology,
    projective_plane,
    replay_trace,
    simplex_boundary,
    staged_build,
)
from hyperwagner.errors import BadParameters, NoLegalAttachment, PreconditionViolated


# complete families -------------------------------------------------------

@pytest.mark.parametrize("n,i", [(4, 2), (6, 2), (5, 3), (6, 3), (7, 4)])
def test_complete_uniform_counts(n, i):
    c = complete_uniform(n, i)
    assert c.d == i and c.n == n
    assert len(c.facets) == comb(n, i)
    for j in range(i):
        assert len(c.faces(j)) == comb(n, j + 1)


def test_complete_uniform_rejects_bad_shapes():
    with pytest.raises(BadParameters):
        complete_uniform(3, 1)
    with pytest.raises(BadParameters):
        complete_uniform(2, 3)


@pytest.mark.parametrize("p,q,i,expected", [
    (2, 4, 3, comb(4, 3) + 2 * comb(4, 2)),   # 16
    (3, 4, 3, comb(4, 3) + 3 * comb(4, 2)),   # 22
    (3, 3, 2, comb(3, 2) + 3 * comb(3, 1)),   # 12
    (1, 5, 4, comb(5, 4) + 1 * comb(5, 3)),
])
def test_complete_bipartite_counts(p, q, i, expected):
    c = complete_bipartite_uniform(p, q, i)
    assert c.n == p + q
    assert len(c.facets) == expected


def test_complete_bipartite_structure():
    p, q, i = 3, 4, 3
    c = complete_bipartite_uniform(p, q, i)
    a_side = set(range(p))
    for f in c.facets:
        assert len(a_side.intersection(f)) <= 1
    # no facet touches two A vertices, and every one-A facet exists
    for a in range(p):
        for tail in itertools.combinations(range(p, p + q), i - 1):
            assert c.has_facet(tuple(sorted((a,) + tail)))


def test_complete_bipartite_rejects_bad_shapes():
    with pytest.raises(BadParameters):
        complete_bipartite_uniform(0, 4, 3)
    with pytest.raises(BadParameters):
        complete_bipartite_uniform(2, 2, 3)


def test_simplex_boundary_counts():
    for d in (2, 3, 4):
        c = simplex_boundary(d)
        assert c.d == d and c.n == d + 1
        assert len(c.facets) == d + 1
        assert c.is_closed()
    with pytest.raises(BadParameters):
        simplex_boundary(1)


# projective plane ---------------------------------------------------------

def test_projective_plane_combinatorics():
    c = projective_plane()
    assert c.d == 3 and c.n == 6
    assert len(c.facets) == 10
    assert len(c.faces(1)) == 15
    assert c.is_closed()
    counts = {}
    for f in c.facets:
        for e in itertools.combinations(f, 2):
            counts[e] = counts.get(e, 0) + 1
    assert set(counts.values()) == {2}
    assert 6 - 15 + 10 == 1  # Euler characteristic of the surface
    assert homology(c).euler == 1


# staged builds -------------------------------------------------------------

def test_staged_build_deterministic():
    a, trace_a = staged_build(3, steps=12, seed=4)
    b, trace_b = staged_build(3, steps=12, seed=4)
    assert a.facets == b.facets and a.n == b.n
    assert trace_a == trace_b
    assert len(trace_a.steps) == 12
    assert trace_a.steps[0].kind == "start"
    assert all(s.kind in ("ball", "sphere") for s in trace_a.steps[1:])


def test_staged_build_seeds_differ():
    a, _ = staged_build(3, steps=15, seed=0)
    b, _ = staged_build(3, steps=15, seed=1)
    assert a.facets != b.facets


def test_staged_build_two_uniform():
    c, trace = staged_build(2, steps=8, seed=11)
    assert c.d == 2
    assert len(c.facets) == 8
    assert replay_trace(trace).facets == c.facets


def test_staged_build_single_step():
    c, trace = staged_build(3, steps=1, seed=0)
    assert c.facets == ((0, 1, 2),)
    assert trace.steps == (BuildStep((0, 1, 2), "start", ()),)


def test_staged_build_parameter_validation():
    with pytest.raises(BadParameters):
        staged_build(1, steps=3, seed=0)
    with pytest.raises(BadParameters):
        staged_build(3)
    with pytest.raises(BadParameters):
        staged_build(3, steps=0, seed=0)
    with pytest.raises(BadParameters):
        staged_build(3, script=[])


def test_script_replays_exactly():
    script = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    c, trace = staged_build(3, script=script)
    assert c.facets == simplex_boundary(3).facets
    assert trace.steps[-1].kind == "sphere"
    assert len(trace.steps[-1].faces) == 3
    assert replay_trace(trace).facets == c.facets


def test_script_rejects_disconnected_gluing():
    with pytest.raises(NoLegalAttachment):
        staged_build(3, script=[(0, 1, 2), (3, 4, 5)])


def test_script_rejects_duplicate_facet():
    with pytest.raises(NoLegalAttachment):
        staged_build(3, script=[(0, 1, 2), (0, 1, 2)])


def test_script_rejects_vertex_only_contact():
    # new facet meets the complex in a vertex, not a ridge
    with pytest.raises(NoLegalAttachment):
        staged_build(3, script=[(0, 1, 2), (2, 3, 4)])


def test_replay_trace_detects_tampering():
    _, trace = staged_build(3, steps=5, seed=2)
    forged = BuildTrace(trace.d, trace.steps[:-1] + (
        BuildStep(trace.steps[-1].facet, "sphere", trace.steps[-1].faces),))
    if trace.steps[-1].kind == "sphere":
        forged = BuildTrace(trace.d, trace.steps[:-1] + (
            BuildStep(trace.steps[-1].facet, "ball", trace.steps[-1].faces),))
    with pytest.raises(PreconditionViolated):
        replay_trace(forged)


def test_random_builds_grow_legally():
    for seed in range(6):
        c, trace = staged_build(3, steps=10, seed=seed)
        assert len(c.facets) == 10
        # each non-start step glued along at least one ridge of the facet
        for step in trace.steps[1:]:
            assert step.faces
            for ridge in step.faces:
                assert set(ridge) <= set(step.facet)
