"""Acceptance gate: one test per release criterion.

Each test prints nothing and relies on pytest's one-line-per-test output;
corpora and seeds are frozen so reruns exercise identical instances.
"""
from __future__ import annotations

import itertools
import json
import random
import time

from hyperwagner import (
    UniformComplex,
    bridges,
    brute_force_minor,
    canonical_key,
    classify_pair,
    complete_bipartite_uniform,
    complete_uniform,
    contractible_edge,
    has_minor,
    homology,
    is_embeddable,
    is_k_connected,
    marked_s_decomposition,
    one_skeleton,
    reassemble,
    serialize,
    simplex_boundary,
    staged_build,
    vertex_connectivity,
    verify_witness,
    wagner_d2,
)
from hyperwagner.cli import run
from hyperwagner.generators import projective_plane
from hyperwagner.minors import FOUND, NOT_FOUND
from hyperwagner.recognizer import EMBEDDABLE, NON_EMBEDDABLE, bipartite_target

from conftest import (
    bipyramid,
    graph,
    grid_graph,
    icosahedron_graph,
    mobius_kantor,
    octahedron_graph,
    octahedron_surface,
    petersen,
    stacked_triangulation,
    theta_suspension,
    wheel,
)
from test_connectivity import oracle_kappa
from test_structure import padded, worked_skew_example


def random_instance(rng: random.Random, d: int) -> UniformComplex:
    n = rng.randint(d + 1, 8)
    pool = list(itertools.combinations(range(n), d))
    rng.shuffle(pool)
    m = rng.randint(1, min(12, len(pool)))
    return UniformComplex(d, n, pool[:m])


def test_criterion_1_forbidden_hosts_are_refuted_with_witnesses():
    for host in (complete_uniform(6, 3), complete_bipartite_uniform(3, 4, 3)):
        started = time.perf_counter()
        verdict = is_embeddable(host, assert_triangulated=True)
        elapsed = time.perf_counter() - started
        assert verdict.status == NON_EMBEDDABLE
        assert verdict.witness is not None
        target = (complete_uniform(6, 3) if verdict.which == "complete"
                  else bipartite_target(3))
        assert verify_witness(host, target, verdict.witness)
        assert elapsed < 10.0


def test_criterion_2_planarity_corpus_has_no_mismatches():
    corpus = [
        (complete_uniform(5, 2), False),
        (complete_bipartite_uniform(3, 3, 2), False),
        (petersen(), False),
        (complete_uniform(6, 2), False),
        (mobius_kantor(), False),
        (grid_graph(4, 4), True),
        (wheel(5), True),
        (wheel(6), True),
        (wheel(7), True),
        (wheel(8), True),
        (graph(5, [e for e in itertools.combinations(range(5), 2)
                   if e != (3, 4)]), True),
        (octahedron_graph(), True),
        (icosahedron_graph(), True),
    ]
    for n, seed in ((5, 1), (7, 2), (8, 3), (9, 4), (10, 5), (11, 6), (12, 7)):
        corpus.append((stacked_triangulation(n, seed), True))
    assert len(corpus) == 20

    started = time.perf_counter()
    mismatches = []
    for g, planar in corpus:
        verdict = wagner_d2(g)
        expected = EMBEDDABLE if planar else NON_EMBEDDABLE
        if verdict.status != expected:
            mismatches.append((g.n, len(g.facets), verdict.status))
    assert mismatches == []
    assert time.perf_counter() - started < 60.0


def test_criterion_3_search_agrees_with_exhaustive_oracle():
    rng = random.Random(20260814)
    instances = []
    for k in range(200):
        instances.append(random_instance(rng, 2 if k % 2 == 0 else 3))
    fixed = {2: [complete_uniform(5, 2), complete_bipartite_uniform(3, 3, 2)],
             3: [complete_uniform(6, 3), complete_bipartite_uniform(3, 4, 3)]}
    random_targets: dict[int, list[UniformComplex]] = {2: [], 3: []}
    for d in (2, 3):
        while len(random_targets[d]) < 5:
            tn = rng.randint(d + 1, 5)
            pool = list(itertools.combinations(range(tn), d))
            rng.shuffle(pool)
            random_targets[d].append(
                UniformComplex(d, tn, pool[:rng.randint(1, 4)]))

    disagreements = []
    checked = 0
    for g in instances:
        for h in fixed[g.d] + random_targets[g.d]:
            expect = brute_force_minor(g, h)
            out = has_minor(g, h)
            assert out.status in (FOUND, NOT_FOUND)
            if (out.status == FOUND) != expect:
                disagreements.append((g.facets, h.facets))
            checked += 1
    assert checked == 1400
    assert disagreements == []


def test_criterion_4_homology_is_exact():
    for d in (2, 3, 4):
        profile = homology(simplex_boundary(d))
        expected = tuple(1 if i == d - 1 else 0 for i in range(d))
        assert profile.betti == expected
        assert all(t == () for t in profile.torsion)

    rp2 = homology(projective_plane())
    assert rp2.betti == (0, 0, 0)
    assert rp2.torsion == ((), (2,), ())

    corpus = [simplex_boundary(2), simplex_boundary(3), simplex_boundary(4),
              projective_plane(), octahedron_surface(), bipyramid(5),
              complete_uniform(6, 3), complete_bipartite_uniform(3, 4, 3)]
    rng = random.Random(4)
    corpus += [random_instance(rng, 2 + k % 2) for k in range(60)]
    for c in corpus:
        profile = homology(c)
        from_faces = sum((-1) ** i * f for i, f in enumerate(profile.f_vector))
        from_betti = 1 + sum((-1) ** i * b for i, b in enumerate(profile.betti))
        assert profile.euler == from_faces == from_betti


def test_criterion_5_every_staged_build_prefix_has_trivial_first_homology():
    violations = []
    prefixes = 0
    for seed in range(100):
        steps = 5 + seed % 26
        _, trace = staged_build(3, steps=steps, seed=seed)
        script = [s.facet for s in trace.steps]
        assert len(script) == steps <= 30
        for k in range(1, len(script) + 1):
            prefix, _ = staged_build(3, script=script[:k])
            if homology(prefix).betti[1] != 0:
                violations.append((seed, k))
            prefixes += 1
    assert prefixes == 1706
    assert violations == []


def test_criterion_6_closed_complexes_are_d_connected():
    closed = [simplex_boundary(2), simplex_boundary(3), simplex_boundary(4),
              octahedron_surface(), projective_plane(),
              bipyramid(3), bipyramid(4), bipyramid(5), bipyramid(6),
              bipyramid(7), complete_uniform(6, 3),
              complete_bipartite_uniform(3, 4, 3),
              theta_suspension((1, 1, 1)), theta_suspension((1, 1, 1, 1)),
              theta_suspension((2, 1, 2))]
    for c in closed:
        assert c.is_closed() and c.facets
        assert is_k_connected(one_skeleton(c), c.d)

    small = [one_skeleton(c) for c in closed if c.n <= 9]
    small += [one_skeleton(g) for g in
              (complete_uniform(5, 2), complete_bipartite_uniform(3, 3, 2),
               wheel(5), wheel(8), grid_graph(3, 3),
               octahedron_graph(), stacked_triangulation(9, 4))]
    assert len(small) >= 15
    for g in small:
        kappa, cut = vertex_connectivity(g)
        assert kappa == oracle_kappa(g)
        if cut is not None:
            assert len(cut.vertices) == kappa

    # the octahedron sits exactly on the contractibility boundary: it is
    # 4-connected but no single contraction stays 4-connected
    assert contractible_edge(one_skeleton(octahedron_graph()), 4) is None


def glue_along_facet(a: UniformComplex, b: UniformComplex,
                     fa, fb) -> tuple[UniformComplex, tuple[int, ...]]:
    """Disjoint union of two closed complexes, identified along one facet
    which is then removed from both sides."""
    shared = tuple(sorted(fa))
    relabel = dict(zip(sorted(fb), shared))
    nxt = a.n
    for v in range(b.n):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    facets = [f for f in a.facets if f != shared]
    for f in b.facets:
        mapped = tuple(sorted(relabel[v] for v in f))
        if mapped != shared:
            facets.append(mapped)
    return UniformComplex(a.d, nxt, facets), shared


def test_criterion_7_marked_decomposition_round_trips():
    rng = random.Random(41)
    pool = [simplex_boundary(3), octahedron_surface(),
            bipyramid(3), bipyramid(4), bipyramid(5), bipyramid(6)]
    saw_embeddable = saw_refuted = False
    for trial in range(50):
        a = rng.choice(pool)
        b = complete_uniform(6, 3) if trial % 7 == 3 else rng.choice(pool)
        g, cut = glue_along_facet(a, b, rng.choice(a.facets),
                                  rng.choice(b.facets))
        parts = marked_s_decomposition(g, cut)
        assert len(parts) == 2

        back = reassemble(parts)
        assert back.facets == g.facets and back.n == g.n
        assert canonical_key(back) == canonical_key(g)

        verdicts = []
        for part in parts:
            assert has_minor(g, part.complex).status == FOUND
            verdicts.append(
                is_embeddable(part.complex, assert_triangulated=True).status)
        whole = is_embeddable(g, assert_triangulated=True).status
        if all(v == EMBEDDABLE for v in verdicts):
            assert whole == EMBEDDABLE
            saw_embeddable = True
        else:
            assert whole == NON_EMBEDDABLE
            saw_refuted = True
    assert saw_embeddable and saw_refuted


def suspension_sphere(lengths, n: int) -> UniformComplex:
    """The sub-sphere of theta_suspension spanned by its first two paths."""
    interiors, nxt = [], 2
    for length in lengths:
        interiors.append(list(range(nxt, nxt + length)))
        nxt += length
    top, bot = nxt, nxt + 1
    chain = [0] + interiors[0] + [1] + list(reversed(interiors[1])) + [0]
    facets = []
    for u, v in zip(chain, chain[1:]):
        facets.append(tuple(sorted((u, v, top))))
        facets.append(tuple(sorted((u, v, bot))))
    return UniformComplex(3, n, facets)


def capped_bipyramid(k: int, rng: random.Random):
    sphere = bipyramid(k)
    f1, f2 = rng.sample(list(sphere.facets), 2)
    u, v = sphere.n, sphere.n + 1
    facets = list(sphere.facets)
    facets += [tuple(sorted(e + (u,))) for e in itertools.combinations(f1, 2)]
    facets += [tuple(sorted(e + (v,))) for e in itertools.combinations(f2, 2)]
    return UniformComplex(3, sphere.n + 2, facets), padded(sphere, sphere.n + 2)


def double_membrane(k: int):
    """Bipyramid sphere with one equator cone and one vertex joined to
    every sphere edge."""
    sphere = bipyramid(k)
    x, y = k + 2, k + 3
    facets = list(sphere.facets)
    for i in range(k):
        facets.append(tuple(sorted((i, (i + 1) % k, x))))
    edges = {e for f in sphere.facets for e in itertools.combinations(f, 2)}
    for e in sorted(edges):
        facets.append(tuple(sorted(e + (y,))))
    return UniformComplex(3, k + 4, facets), padded(sphere, k + 4)


def test_criterion_8_bridge_pairs_avoid_or_overlap_properly():
    rng = random.Random(8)
    corpora = []
    for lengths in ((1, 1, 1, 1), (1, 1, 1, 2), (1, 2, 1, 2), (2, 1, 2, 1),
                    (1, 1, 2, 2), (2, 2, 2, 2), (1, 1, 1, 1, 1), (1, 2, 3, 1),
                    (3, 1, 1, 1), (1, 1, 3, 2), (2, 3, 2, 1), (1, 1, 1, 2, 2),
                    (2, 1, 1, 1, 2), (1, 2, 1, 2, 1), (3, 2, 1, 2, 3)):
        g = theta_suspension(lengths)
        corpora.append((g, suspension_sphere(lengths, g.n)))
    for k in (3, 4, 5, 6, 7):
        corpora.append(double_membrane(k))
    while len(corpora) < 50:
        corpora.append(capped_bipyramid(rng.randint(3, 8), rng))
    assert len(corpora) == 50

    pairs = 0
    for g, s in corpora:
        assert g.is_closed() and g.facets
        nontrivial = [b for b in bridges(g, s) if not b.trivial]
        assert len(nontrivial) >= 2
        for b1, b2 in itertools.combinations(nontrivial, 2):
            verdict = classify_pair(g, s, b1, b2)
            assert verdict.kind in ("avoid", "skew", "equivalent-d-plus-1")
            pairs += 1
    assert pairs >= 50

    # pole-to-pole bridge against an equatorial cone: the skew prototype
    equator_sphere = []
    for i in range(5):
        j = (i + 1) % 5
        equator_sphere.append(tuple(sorted((i, j, 5))))
        equator_sphere.append(tuple(sorted((i, j, 6))))
    cone = [tuple(sorted((i, (i + 1) % 5, 7))) for i in range(5)]
    axis = [(5, 6, 8)]
    g = UniformComplex(3, 9, equator_sphere + cone + axis)
    s = UniformComplex(3, 9, equator_sphere)
    b_u, b_v = bridges(g, s)
    assert classify_pair(g, s, b_u, b_v).kind == "skew"

    # the engulfing-bridge host: skew pair whose bipartite completion is
    # exactly the 22-facet complete bipartite complex, rediscovered by the
    # minor search with singleton branch sets
    host, sphere = worked_skew_example()
    b1, b2 = bridges(host, sphere)
    assert classify_pair(host, sphere, b1, b2).kind == "skew"
    extra = [(4, 5, 6)] + [(0, 3, yi) for yi in (4, 5, 6)]
    completed = UniformComplex(3, 7, list(host.facets) + extra)
    target = complete_bipartite_uniform(3, 4, 3)
    assert canonical_key(completed) == canonical_key(target)
    out = has_minor(completed, target)
    assert out.status == FOUND
    assert sorted(len(bs) for bs in out.witness.branch_sets) == [1] * 7
    assert verify_witness(completed, target, out.witness)


def test_criterion_9_reports_are_byte_identical(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HYPERWAGNER_THREADS", "2")
    k63 = tmp_path / "k63.json"
    serialize(complete_uniform(6, 3), str(k63))
    rp2 = tmp_path / "rp2.json"
    serialize(projective_plane(), str(rp2))

    invocations = [
        ["validate", str(k63)],
        ["homology", str(rp2)],
        ["connectivity", str(k63)],
        ["minor", str(k63), "--target", "complete"],
        ["embeddable", str(k63), "--assert-triangulated"],
        ["generate", "procedure-x", "--d", "3", "--steps", "8", "--seed", "5"],
    ]
    for argv in invocations:
        outputs = []
        for _ in range(2):
            code = run(argv)
            outputs.append(capsys.readouterr().out)
            assert code == 0
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["version"] == "0.1.0"
