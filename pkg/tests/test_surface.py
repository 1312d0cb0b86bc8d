"""
Tests for surface reconstruction and classification: the full matching
matrix, trigon propagation, edge weights, Euler characteristics,
components, orientability, and the known topological answers.
"""

import math

import pytest

from lensq.errors import (
    EmptyVector,
    NotASolution,
    SquareConditionViolated,
)
from lensq.qsystem import basis_vectors
from lensq.surface import (
    FullCoordinates,
    classify,
    edge_weights,
    euler_characteristic,
    glue_disks,
    haken_fundamental_criterion,
    haken_matrix,
    haken_residual,
    reconstruct_trigons,
    surface_name,
)
from lensq.triangulation import build_triangulation


def coprime_pairs(max_p):
    return [(p, q) for p in range(2, max_p + 1) for q in range(1, p)
            if math.gcd(p, q) == 1]


def rotate(v, p, shift):
    """Shift block i to block i+shift, cyclically."""
    blocks = [tuple(v[3 * i: 3 * i + 3]) for i in range(p)]
    return tuple(x for k in range(p)
                 for x in blocks[(k - shift) % p])


# ------------------------------------------------------------ full system

@pytest.mark.parametrize("p,q", coprime_pairs(6))
def test_haken_matrix_shape_and_entries(p, q):
    rows = haken_matrix(build_triangulation(p, q))
    assert len(rows) == 6 * p
    assert all(len(r) == 7 * p for r in rows)
    for row in rows:
        assert all(x in (-1, 0, 1) for x in row)
        assert sum(1 for x in row if x == 1) == 2
        assert sum(1 for x in row if x == -1) == 2


@pytest.mark.parametrize("p,q", [(2, 1), (5, 2), (7, 3), (8, 3)])
def test_reconstruction_kills_full_matching_system(p, q):
    tri = build_triangulation(p, q)
    _, t_vecs = basis_vectors(tri)
    full = reconstruct_trigons(tri, t_vecs[0])
    assert not any(haken_residual(tri, full))


def test_reconstruction_validation():
    tri = build_triangulation(3, 1)
    with pytest.raises(EmptyVector):
        reconstruct_trigons(tri, (0,) * 9)
    with pytest.raises(NotASolution):
        reconstruct_trigons(tri, (1, 0, 0, 0, 0, 0, 0, 0, 0))
    s_vecs, _ = basis_vectors(tri)
    with pytest.raises(SquareConditionViolated):
        reconstruct_trigons(tri, s_vecs[0])


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (8, 3)])
def test_reconstruction_has_no_trivial_component(p, q):
    tri = build_triangulation(p, q)
    _, t_vecs = basis_vectors(tri)
    full = reconstruct_trigons(tri, t_vecs[0])
    assert all(x >= 0 for x in full.entries)
    for corner_class in tri.vertex_classes():
        assert min(full.trigons(tet, c) for tet, c in corner_class) == 0


# ------------------------------------------------------------ edge weights

def test_axis_torus_avoids_the_cores():
    tri = build_triangulation(5, 1)
    full = reconstruct_trigons(tri, (1, 0, 0) * 5)
    weights = edge_weights(tri, full)
    assert weights["Ev"] == 0 and weights["Eh"] == 0
    assert all(weights[f"e{i}"] == 1 for i in tri.tetrahedra)


def test_projective_plane_crosses_cores_once():
    tri = build_triangulation(2, 1)
    full = reconstruct_trigons(tri, (0, 1, 0, 0, 0, 1))
    weights = edge_weights(tri, full)
    assert weights["Ev"] % 2 == 1 and weights["Eh"] % 2 == 1


def test_zero_surface_weights_and_graph():
    tri = build_triangulation(3, 1)
    empty = FullCoordinates(tri, (0,) * 21)
    assert all(w == 0 for w in edge_weights(tri, empty).values())
    graph = glue_disks(tri, empty)
    assert graph.disks == () and graph.arcs == ()
    assert euler_characteristic(tri, empty) == 0


# ------------------------------------------------------------------ euler

@pytest.mark.parametrize("p", [3, 5, 7])
def test_axis_torus_euler(p):
    tri = build_triangulation(p, 1)
    full = reconstruct_trigons(tri, (1, 0, 0) * p)
    assert euler_characteristic(tri, full) == 0


def test_projective_plane_euler():
    tri = build_triangulation(2, 1)
    full = reconstruct_trigons(tri, (0, 1, 0, 0, 0, 1))
    assert euler_characteristic(tri, full) == 1


@pytest.mark.parametrize("p", [4, 6, 8])
def test_alternating_vector_euler(p):
    tri = build_triangulation(p, 1)
    v = (0, 1, 0, 0, 0, 1) * (p // 2)
    full = reconstruct_trigons(tri, v)
    assert euler_characteristic(tri, full) == 2 - p // 2


# ------------------------------------------------------------- components

def test_sphere_vector_is_one_component():
    tri = build_triangulation(4, 1)
    _, t_vecs = basis_vectors(tri)
    report = classify(tri, t_vecs[0])
    assert report.components == ((2, True),)
    assert report.edge_weights["Ev"] % 2 == 0
    assert report.edge_weights["e1"] == 0


def test_axis_torus_is_connected():
    tri = build_triangulation(3, 1)
    report = classify(tri, (1, 0, 0) * 3)
    assert report.components == ((0, True),)


def test_doubled_two_sided_surface_splits():
    tri = build_triangulation(5, 1)
    report = classify(tri, (2, 0, 0) * 5)
    assert report.euler == 0
    assert report.components == ((0, True), (0, True))


def test_doubled_one_sided_surface_is_its_double_cover():
    # Doubling the projective plane in (2,1) yields the sphere around
    # the second slanted edge, still one component.
    tri = build_triangulation(2, 1)
    report = classify(tri, (0, 2, 0, 0, 0, 2))
    assert report.euler == 2
    assert report.components == ((2, True),)
    assert report.orientable


# ----------------------------------------------------------- orientability

def test_two_one_classifications():
    tri = build_triangulation(2, 1)
    torus = classify(tri, (1, 0, 0, 1, 0, 0))
    assert (torus.euler, torus.orientable) == (0, True)
    for v in ((0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0)):
        report = classify(tri, v)
        assert (report.euler, report.orientable) == (1, False)
        assert surface_name(*report.components[0]) == "projective plane"


@pytest.mark.parametrize("p", [4, 6])
def test_alternating_vectors_classify_as_cross_cap_sums(p):
    tri = build_triangulation(p, 1)
    for v in ((0, 1, 0, 0, 0, 1) * (p // 2), (0, 0, 1, 0, 1, 0) * (p // 2)):
        report = classify(tri, v)
        assert report.euler == 2 - p // 2
        assert not report.orientable
        assert len(report.components) == 1


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (4, 1), (5, 2), (8, 3)])
def test_parity_law_for_basis_spheres(p, q):
    tri = build_triangulation(p, q)
    _, t_vecs = basis_vectors(tri)
    for t in t_vecs:
        report = classify(tri, t)
        assert report.orientable
        assert report.edge_weights["Ev"] % 2 == 0
        assert report.edge_weights["Eh"] % 2 == 0


# ------------------------------------------------------ rotation symmetry

@pytest.mark.parametrize("p,q", [(5, 1), (5, 2), (7, 3)])
def test_sphere_vectors_are_rotations_of_each_other(p, q):
    tri = build_triangulation(p, q)
    _, t_vecs = basis_vectors(tri)
    for i in range(p):
        assert rotate(t_vecs[0], p, i) == t_vecs[i]


def test_rotation_preserves_classification():
    tri = build_triangulation(6, 1)
    v = (0, 1, 0, 0, 0, 1) * 3
    base = classify(tri, v)
    rotated = classify(tri, rotate(v, 6, 2))
    assert (base.euler, base.orientable) == (rotated.euler,
                                             rotated.orientable)


# ------------------------------------------------------ doubling identities

@pytest.mark.parametrize("p", [4, 6])
def test_doubled_alternating_vectors_are_sphere_sums(p):
    tri = build_triangulation(p, 1)
    _, t_vecs = basis_vectors(tri)
    for start, parity in ((2, 1), (3, 0)):
        if start == 2:
            v = (0, 1, 0, 0, 0, 1) * (p // 2)
        else:
            v = (0, 0, 1, 0, 1, 0) * (p // 2)
        doubled = tuple(2 * x for x in v)
        total = [0] * (3 * p)
        for k in range(parity, p, 2):
            for j, x in enumerate(t_vecs[k]):
                total[j] += x
        assert doubled == tuple(total)


def test_doubling_two_sided_euler_doubles():
    tri = build_triangulation(7, 1)
    v = (1, 0, 0) * 7
    single = classify(tri, v)
    double = classify(tri, tuple(2 * x for x in v))
    assert double.euler == 2 * single.euler


def test_multiples_of_a_one_sided_surface():
    # k copies of a one-sided surface normalize to floor(k/2) copies of
    # the orientable double cover plus one odd copy.
    tri = build_triangulation(4, 1)
    v = (0, 1, 0, 0, 0, 1) * 2  # Klein bottle, double cover is a torus
    for k, expected in ((1, ((0, False),)),
                        (2, ((0, True),)),
                        (3, ((0, True), (0, False))),
                        (4, ((0, True), (0, True)))):
        report = classify(tri, tuple(k * x for x in v))
        assert tuple(sorted(report.components)) == tuple(sorted(expected))


def test_multiples_of_a_sphere_stay_parallel_spheres():
    tri = build_triangulation(8, 3)
    _, t_vecs = basis_vectors(tri)
    for k in (1, 2, 3):
        report = classify(tri, tuple(k * x for x in t_vecs[0]))
        assert report.components == ((2, True),) * k


def test_sum_of_sphere_vectors_with_shared_block():
    # The sphere vectors around edges 1 and 3 of T(8,3) share a block;
    # the minimal representative of their coordinate sum is the tube
    # sum, a torus, not the disjoint union.
    tri = build_triangulation(8, 3)
    _, t_vecs = basis_vectors(tri)
    v = tuple(a + b for a, b in zip(t_vecs[0], t_vecs[2]))
    report = classify(tri, v)
    assert report.components == ((0, True),)


def test_sum_with_block_conflict_is_rejected():
    tri = build_triangulation(8, 3)
    _, t_vecs = basis_vectors(tri)
    v = tuple(a + b for a, b in zip(t_vecs[0], t_vecs[1]))
    with pytest.raises(SquareConditionViolated):
        classify(tri, v)


# ------------------------------------------------------------- criterion

def test_criterion_on_the_alternating_surface():
    tri = build_triangulation(8, 3)
    v = (0, 0, 1, 0, 1, 0) * 4
    assert haken_fundamental_criterion(tri, v)


def test_criterion_fails_for_core_avoiding_torus():
    tri = build_triangulation(5, 1)
    assert not haken_fundamental_criterion(tri, (1, 0, 0) * 5)


# ---------------------------------------------------------------- naming

def test_surface_names():
    assert surface_name(2, True) == "sphere"
    assert surface_name(0, True) == "torus"
    assert surface_name(-2, True) == "orientable genus-2 surface"
    assert surface_name(1, False) == "projective plane"
    assert surface_name(0, False) == "Klein bottle"
    assert surface_name(-3, False) == "non-orientable genus-5 surface"
