from __future__ import annotations

import itertools
import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hyperwagner import (
    UniformComplex,
    certify_ball,
    certify_sphere,
    fundamental_group_status,
    homology,
    projective_plane,
    rd_shape_check,
    simplex_boundary,
)
from hyperwagner.errors import BadParameters, Disconnected
from hyperwagner.homology import boundary_matrices, smith_normal_form

from conftest import cycle_graph, graph, octahedron_surface


# oracle ----------------------------------------------------------------

def oracle_profile(c: UniformComplex):
    """Reduced betti/torsion computed independently through sympy.

    Rank and invariant factors of each boundary matrix come from sympy's
    Smith normal form over ZZ; the augmentation contributes one extra
    rank at dimension 0 exactly as in the reduced chain complex.
    """
    dims = c.d
    f = [len(c.faces(i)) for i in range(dims)]
    rank = [0] * (dims + 1)
    torsion = [()] * (dims + 1)
    rank[0] = 1 if f[0] else 0
    for mat in boundary_matrices(c):
        m = sympy.Matrix(mat.entries)
        if m.rows == 0 or m.cols == 0:
            continue
        diag = [int(x) for x in sympy_snf(m, domain=sympy.ZZ).diagonal()]
        factors = sorted(abs(x) for x in diag if x != 0)
        rank[mat.dim] = len(factors)
        torsion[mat.dim] = tuple(x for x in factors if x > 1)
    betti = tuple(f[i] - rank[i] - rank[i + 1] for i in range(dims))
    return betti, tuple(torsion[i + 1] for i in range(dims))


def random_complex(rng: random.Random, d: int, n: int, count: int) -> UniformComplex:
    pool = list(itertools.combinations(range(n), d))
    rng.shuffle(pool)
    return UniformComplex(d, n, pool[:count])


# smith normal form ------------------------------------------------------

def test_snf_known_matrix():
    factors, rank = smith_normal_form([[2, 4], [6, 8]])
    assert factors == (2, 4)
    assert rank == 2


def test_snf_rejects_ragged():
    with pytest.raises(BadParameters):
        smith_normal_form([[1, 2], [3]])


def test_snf_zero_matrix():
    factors, rank = smith_normal_form([[0, 0], [0, 0]])
    assert factors == () and rank == 0


def test_snf_divisibility_chain_random():
    rng = random.Random(7)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        entries = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        factors, rank = smith_normal_form(entries)
        assert rank == len(factors)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0
        m = sympy.Matrix(entries)
        assert rank == m.rank()
        if rank:
            diag = [abs(int(x)) for x in sympy_snf(m, domain=sympy.ZZ).diagonal()]
            assert sorted(x for x in diag if x) == list(factors)


def test_boundary_of_boundary_vanishes(boundary_tetrahedron):
    mats = boundary_matrices(boundary_tetrahedron)
    assert [m.dim for m in mats] == [1, 2]
    assert len(mats[0].rows) == 4 and len(mats[0].cols) == 6
    assert len(mats[1].rows) == 6 and len(mats[1].cols) == 4


# homology ---------------------------------------------------------------

@pytest.mark.parametrize("d", [2, 3, 4])
def test_boundary_simplex_is_a_homology_sphere(d):
    profile = homology(simplex_boundary(d))
    expected = tuple(0 if i < d - 1 else 1 for i in range(d))
    assert profile.betti == expected
    assert all(t == () for t in profile.torsion)


def test_projective_plane_torsion():
    profile = homology(projective_plane())
    assert profile.betti == (0, 0, 0)
    assert profile.torsion == ((), (2,), ())
    assert profile.euler == 1
    assert profile.f_vector == (6, 15, 10)


def test_circle_homology():
    profile = homology(cycle_graph(5))
    assert profile.betti == (0, 1)
    assert profile.euler == 0


def test_two_components_bump_betti_zero():
    c = graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    assert homology(c).betti[0] == 1


def test_isolated_vertices_do_not_count():
    with_isolated = UniformComplex(2, 5, [(0, 1), (1, 2), (0, 2)])
    without = UniformComplex(2, 3, [(0, 1), (1, 2), (0, 2)])
    assert homology(with_isolated) == homology(without)


def test_homology_matches_sympy_oracle_on_random_complexes():
    rng = random.Random(20260814)
    for _ in range(30):
        d = rng.choice([2, 3, 4])
        n = rng.randint(d, 7)
        count = rng.randint(0, min(10, len(list(itertools.combinations(range(n), d)))))
        c = random_complex(rng, d, n, count)
        profile = homology(c)
        betti, torsion = oracle_profile(c)
        assert profile.betti == betti
        assert profile.torsion == torsion
        # Euler characteristic two ways: face counts and homology ranks
        chi = sum((-1) ** i * profile.f_vector[i] for i in range(len(profile.f_vector)))
        assert profile.euler == chi
        reduced_chi = sum((-1) ** i * profile.betti[i] for i in range(c.d))
        if profile.f_vector[0]:
            assert chi == 1 + reduced_chi


# fundamental group ------------------------------------------------------

def test_pi1_trivial_for_simplex_boundary(boundary_tetrahedron):
    assert fundamental_group_status(boundary_tetrahedron) == "trivial"


def test_pi1_nontrivial_from_abelianization():
    # the projective plane abelianizes to Z/2, which settles it
    assert fundamental_group_status(projective_plane()) == "nontrivial"


def test_pi1_requires_connected():
    c = UniformComplex(3, 6, [(0, 1, 2), (3, 4, 5)])
    with pytest.raises(Disconnected):
        fundamental_group_status(c)


# shape check ------------------------------------------------------------

def test_shape_pass_boundary_tetrahedron(boundary_tetrahedron):
    report = rd_shape_check(boundary_tetrahedron)
    assert report.verdict == "PASS"
    assert report.connected
    assert report.pi1 == "trivial"
    assert report.failures == ()


def test_shape_fail_projective_plane():
    report = rd_shape_check(projective_plane())
    assert report.verdict == "FAIL"
    assert any("torsion" in f or "window" in f for f in report.failures)


def test_shape_fail_disconnected():
    c = UniformComplex(2, 4, [(0, 1), (2, 3)])
    assert rd_shape_check(c).verdict == "FAIL"


def test_shape_graphs_need_only_connectivity():
    assert rd_shape_check(cycle_graph(5)).verdict == "PASS"
    theta = graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert rd_shape_check(theta).verdict == "PASS"


# certificates -----------------------------------------------------------

class TestSphereCertificates:
    def test_boundary_tetrahedron(self, boundary_tetrahedron):
        cert = certify_sphere(boundary_tetrahedron, 2)
        assert cert.status == "certified"

    def test_octahedron(self):
        assert certify_sphere(octahedron_surface(), 2).status == "certified"

    def test_projective_plane_refuted(self):
        cert = certify_sphere(projective_plane(), 2)
        assert cert.status == "refuted"

    def test_circle(self):
        assert certify_sphere(cycle_graph(6), 1).status == "certified"

    def test_path_refuted(self):
        assert certify_sphere(graph(3, [(0, 1), (1, 2)]), 1).status == "refuted"

    def test_two_circles_refuted(self):
        c = graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert certify_sphere(c, 1).status == "refuted"

    def test_two_points(self):
        c = UniformComplex(1, 2, [(0,), (1,)])
        assert certify_sphere(c, 0).status == "certified"
        assert certify_sphere(UniformComplex(1, 1, [(0,)]), 0).status == "refuted"


class TestBallCertificates:
    def test_single_triangle(self):
        c = UniformComplex(3, 3, [(0, 1, 2)])
        assert certify_ball(c, 2).status == "certified"

    def test_sphere_minus_facet(self, boundary_tetrahedron):
        c = UniformComplex(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
        assert certify_ball(c, 2).status == "certified"

    def test_closed_sphere_is_not_a_ball(self, boundary_tetrahedron):
        assert certify_ball(boundary_tetrahedron, 2).status == "refuted"

    def test_path_is_a_one_ball(self):
        assert certify_ball(graph(4, [(0, 1), (1, 2), (2, 3)]), 1).status == "certified"

    def test_cycle_is_not_a_one_ball(self):
        assert certify_ball(cycle_graph(4), 1).status == "refuted"

    def test_wedge_of_triangles_refuted(self):
        c = UniformComplex(3, 5, [(0, 1, 2), (0, 3, 4)])
        assert certify_ball(c, 2).status == "refuted"

    def test_single_point(self):
        assert certify_ball(UniformComplex(1, 1, [(0,)]), 0).status == "certified"
