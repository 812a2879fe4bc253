from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ripslab.gallery import crosspolytope_cloud, lifted_hexagon_cloud
from ripslab.local_checks import (
    TheoremViolation,
    betti_consequences,
    check_pi0_surjectivity,
    classify_planar_pseudomanifold,
    surface_edge_bound_check,
)
from ripslab.shadow import shadow_betti
from ripslab.simplicial import (
    PointCloud,
    SimplicialComplex,
    crosspolytope,
    decompose,
    is_isomorphic_to_crosspolytope,
    rips_complex,
)
from conftest import csaszar_torus, icosahedron
from oracles import flag_surfaces

coord = st.fractions(min_value=0, max_value=2, max_denominator=4)
space = st.lists(st.tuples(coord, coord, coord), min_size=2, max_size=9, unique=True).map(
    lambda p: PointCloud(tuple(p))
)
planar = st.lists(st.tuples(coord, coord), min_size=1, max_size=10, unique=True).map(lambda p: PointCloud(tuple(p)))


def test_hexagon_counterexample():
    cloud = lifted_hexagon_cloud()
    rep = check_pi0_surjectivity(cloud, 0)
    assert not rep.passed
    assert rep.components_total == 2 and rep.components_with_link_piece == 1
    assert ((0, 2, 4), (1, 3, 5)) in rep.witness
    link = rips_complex(decompose(cloud, 0).x_v)
    assert sorted(link.edges()) == [(1, 2), (1, 5), (2, 4), (4, 5)]
    assert rep.to_json()["pass"] is False


def test_failing_component_misses_link_hulls():
    from ripslab.shadow import HullOracle

    cloud = lifted_hexagon_cloud()
    rep = check_pi0_surjectivity(cloud, 0)
    oracle = HullOracle(cloud)
    link_faces = rips_complex(decompose(cloud, 0).x_v).facets
    for A, B in rep.witness:
        assert not any(oracle.common(A, B, C) for C in link_faces)


def test_isolated_vertex_passes_vacuously():
    cloud = PointCloud(((0, 0, 0), (5, 0, 0), (5, F(1, 2), 0)))
    rep = check_pi0_surjectivity(cloud, 0)
    assert rep.passed and rep.pieces_total == 0


def test_invalid_vertex():
    with pytest.raises(KeyError):
        check_pi0_surjectivity(PointCloud(((0, 0, 0),)), 7)


@given(space, st.data())
@settings(max_examples=40)
def test_pi0_surjective_in_space(cloud, data):
    v = data.draw(st.sampled_from(cloud.ids))
    assert check_pi0_surjectivity(cloud, v).passed


@given(space, st.data(), st.integers(2, 5), st.tuples(coord, coord, coord))
@settings(max_examples=25)
def test_report_invariant_under_scaling_and_translation(cloud, data, k, shift):
    v = data.draw(st.sampled_from(cloud.ids))
    moved = PointCloud(
        tuple(tuple(k * c + s for c, s in zip(p, shift)) for p in cloud.points), cloud.scale * k
    )
    a, b = check_pi0_surjectivity(cloud, v), check_pi0_surjectivity(moved, v)
    assert (a.pieces_total, a.components_total, a.components_with_link_piece, a.passed) == (
        b.pieces_total, b.components_total, b.components_with_link_piece, b.passed
    )


@given(space, st.data())
@settings(max_examples=30)
def test_components_bounded_by_link_shadow(cloud, data):
    v = data.draw(st.sampled_from(cloud.ids))
    rep = check_pi0_surjectivity(cloud, v)
    link = decompose(cloud, v).x_v
    b0 = shadow_betti(link, 0)[0] if len(link) else 0
    assert rep.passed
    assert rep.components_total <= b0


# -- Betti consequences


def test_hexagon_pattern_betti():
    rep = betti_consequences(crosspolytope_cloud(2))
    assert rep.rips_betti == [1, 0] and rep.shadow_betti == [1, 0] and rep.ok
    from ripslab.homology import homology

    assert homology(rips_complex(crosspolytope_cloud(2))).betti == [1, 0, 1]


def test_far_pair_betti():
    rep = betti_consequences(PointCloud(((0, 0), (4, 0))))
    assert rep.rips_betti[0] == rep.shadow_betti[0] == 2


def test_unsupported_dimension():
    with pytest.raises(ValueError):
        betti_consequences(PointCloud(((0,), (1,))))


def test_r4_reports_without_assertion():
    rep = betti_consequences(lifted_hexagon_cloud())
    assert rep.ok and rep.notes


@given(planar)
@settings(max_examples=40)
def test_planar_consequences(cloud):
    assert betti_consequences(cloud).ok


@given(space)
@settings(max_examples=30)
def test_spatial_consequences(cloud):
    assert betti_consequences(cloud).ok


# -- classifier


def test_classify_hexagon_pattern():
    c = classify_planar_pseudomanifold(crosspolytope_cloud(2))
    assert (c.kind, c.dim) == ("crosspolytope", 2)


def test_classify_cluster_and_squares():
    small = PointCloud(((0, 0), (F(1, 10), 0), (0, F(1, 10)), (F(1, 10), F(1, 10))))
    assert classify_planar_pseudomanifold(small).kind == "not_pm"
    side = F(9, 10)  # diagonal 1.27 exceeds the scale
    sq = PointCloud(((0, 0), (side, 0), (side, side), (0, side)))
    assert (classify_planar_pseudomanifold(sq).kind, classify_planar_pseudomanifold(sq).dim) == ("pm1", 1)
    side = F(7, 10)  # diagonal 0.99 below the scale
    sq = PointCloud(((0, 0), (side, 0), (side, side), (0, side)))
    assert classify_planar_pseudomanifold(sq).kind == "not_pm"


def test_classify_subset():
    cloud = crosspolytope_cloud(3)
    c = classify_planar_pseudomanifold(cloud, subset=[0, 1, 2, 4, 5, 6])
    assert (c.kind, c.dim) == ("crosspolytope", 2)


def test_classify_needs_plane():
    with pytest.raises(ValueError):
        classify_planar_pseudomanifold(PointCloud(((0, 0, 0),)))


@given(planar, st.data())
@settings(max_examples=60)
def test_classifier_never_raises(cloud, data):
    subset = data.draw(st.none() | st.sets(st.sampled_from(cloud.ids), min_size=1))
    try:
        classify_planar_pseudomanifold(cloud, subset)
    except TheoremViolation as exc:  # pragma: no cover
        pytest.fail(f"release-blocking finding: {exc}")


# -- surfaces


def test_octahedron_equality():
    r = surface_edge_bound_check(crosspolytope(2))
    assert r.edges == 12 == r.lower_bound and r.two_v_edges and r.equality and r.links_are_4_cycles


def test_icosahedron_links_are_pentagons():
    r = surface_edge_bound_check(icosahedron())
    assert r.edges == 30 == r.lower_bound
    assert not r.links_are_4_cycles and r.is_flag


def test_torus_exceeds_bound():
    r = surface_edge_bound_check(csaszar_torus())
    assert r.edges == 21 > r.lower_bound and not r.is_flag


def test_edge_check_needs_surface():
    with pytest.raises(ValueError):
        surface_edge_bound_check(SimplicialComplex([(0, 1, 2)]))


@pytest.mark.parametrize("n", [4, 5])
def test_no_small_flag_surfaces(n):
    assert flag_surfaces(n) == []
