import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ripslab.gallery import crosspolytope_cloud, lifted_hexagon_cloud
from ripslab.geometry import GeometryError, hulls_intersect
from ripslab.shadow import (
    ConvexPiece,
    HullOracle,
    multi_hull_common_point,
    nerve,
    piece_graph_components,
    shadow_betti,
    shadow_contains,
    shadow_pieces,
)
from ripslab.simplicial import PointCloud, rips_complex
from ripslab.local_checks import rips_component_count
from oracles import planar_hull_contains, raster_components


def ring(n=6, radius=F(3, 5)):
    pts = [
        (radius * F(math.cos(2 * math.pi * k / n)).limit_denominator(1000),
         radius * F(math.sin(2 * math.pi * k / n)).limit_denominator(1000))
        for k in range(n)
    ]
    return PointCloud(tuple(pts))


THIN = [
    ConvexPiece((0, 1, 2), ((F(-1), F(0)), (F(5), F(0)), (F(2), F(-1, 10)))),
    ConvexPiece((3, 4, 5), ((F(0), F(-1)), (F(0), F(5)), (F(-1, 10), F(2)))),
    ConvexPiece((6, 7, 8), ((F(5), F(-1)), (F(-1), F(5)), (F(21, 10), F(21, 10)))),
]

coord = st.fractions(min_value=0, max_value=2, max_denominator=6)
planar = st.lists(st.tuples(coord, coord), min_size=1, max_size=8, unique=True).map(lambda p: PointCloud(tuple(p)))


def test_pieces_are_maximal_faces():
    cloud = PointCloud(((0, 0), (F(1, 2), 0), (5, 5)))
    gens = [p.generators for p in shadow_pieces(cloud)]
    assert gens == [(0, 1), (2,)]


def test_pieces_refuse_product_metric():
    from ripslab.geometry import PRODUCT_L1_L2

    with pytest.raises(GeometryError):
        shadow_pieces(PointCloud(((0, 0, 0),), metric=PRODUCT_L1_L2))


def test_multi_hull_examples():
    assert multi_hull_common_point(THIN[:1])
    for a, b in itertools.combinations(THIN, 2):
        assert multi_hull_common_point([a, b])
    assert not multi_hull_common_point(THIN)
    shared = [ConvexPiece((0, 1), ((0, 0), (1, 0))), ConvexPiece((1, 2), ((1, 0), (2, 2)))]
    assert multi_hull_common_point(shared)
    with pytest.raises(GeometryError):
        multi_hull_common_point([])


def test_thin_triangles_nerve_is_hollow():
    N = nerve(THIN, 2)
    assert len(N.complex.edges()) == 3 and N.complex.faces(2) == []


def test_nerve_disjoint_and_chain():
    disjoint = [ConvexPiece((i,), ((F(3 * i), F(0)),)) for i in range(3)]
    assert nerve(disjoint, 2).complex.facets == ((0,), (1,), (2,))
    chain = [ConvexPiece((i, i + 1), ((F(i), F(0)), (F(i + 1), F(0)))) for i in range(4)]
    assert nerve(chain, 2).complex.facets == ((0, 1), (1, 2), (2, 3))
    with pytest.raises(ValueError):
        nerve(chain, -1)


def test_collinear_segment():
    cloud = PointCloud(((0, 0), (F(1, 2), 0), (1, 0)))
    assert shadow_betti(cloud, 1) == [1, 0]


def test_ring_has_a_hole():
    cloud = ring()
    assert shadow_betti(cloud, 1) == [1, 1]
    assert rips_component_count(cloud) == 1


def test_hexagon_pattern_shadow_is_disk():
    cloud = crosspolytope_cloud(2)
    assert shadow_betti(cloud, 2) == [1, 0, 0]
    comps, _ = raster_components(cloud, -F(1, 2), F(1, 2), 24)
    assert comps == 1


def test_far_pair():
    assert shadow_betti(PointCloud(((0, 0), (3, 0))), 1) == [2, 0]


def test_degree_above_ambient_rejected():
    with pytest.raises(ValueError):
        shadow_betti(PointCloud(((0, 0),)), 3)


def test_shadow_contains():
    cloud = lifted_hexagon_cloud()
    for p in cloud.points:
        assert shadow_contains(cloud, p)
    # conv{v0, v2, v4} is not a face; ask every maximal face directly
    origin = (F(0),) * 4
    expect = any(face_contains(cloud, f, origin) for f in rips_complex(cloud).facets)
    assert expect and shadow_contains(cloud, origin)
    assert not shadow_contains(cloud, (F(9),) * 4)


def face_contains(cloud, face, x):
    from ripslab.geometry import hull_contains

    return hull_contains(x, [cloud.point(v) for v in face])


def test_raster_membership_spot_check():
    cloud = ring()
    n = 16
    _, inside = raster_components(cloud, -F(3, 4), F(3, 4), n)
    step = F(3, 2) / n
    for i in range(0, n + 1, 3):
        for j in range(0, n + 1, 3):
            x = (-F(3, 4) + i * step, -F(3, 4) + j * step)
            assert shadow_contains(cloud, x) == ((i, j) in inside)


@given(planar)
@settings(max_examples=40)
def test_nerve_one_skeleton_is_pairwise_intersection(cloud):
    pieces = shadow_pieces(cloud)
    N = nerve(pieces, 1)
    edges = set(N.complex.edges())
    for i, j in itertools.combinations(range(len(pieces)), 2):
        assert ((i, j) in edges) == hulls_intersect(list(pieces[i].coords), list(pieces[j].coords))


@given(planar)
@settings(max_examples=40)
def test_beta0_matches_piece_graph_and_rips(cloud):
    b0 = shadow_betti(cloud, 0)[0]
    assert b0 == piece_graph_components(shadow_pieces(cloud))
    assert b0 == rips_component_count(cloud)


@given(st.lists(st.tuples(coord, coord, coord), min_size=1, max_size=8, unique=True))
@settings(max_examples=25)
def test_beta0_matches_rips_in_space(pts):
    cloud = PointCloud(tuple(pts))
    assert shadow_betti(cloud, 0)[0] == rips_component_count(cloud)


@given(planar, st.tuples(coord, coord), st.tuples(coord, coord))
@settings(max_examples=30)
def test_membership_monotone_in_cloud(cloud, extra, x):
    if extra in cloud.points:
        return
    bigger = PointCloud(cloud.points + (extra,))
    if shadow_contains(cloud, x):
        assert shadow_contains(bigger, x)


@given(planar, st.tuples(coord, coord))
@settings(max_examples=30)
def test_membership_matches_planar_oracle(cloud, x):
    faces = [[cloud.point(v) for v in p.generators] for p in shadow_pieces(cloud)]
    assert shadow_contains(cloud, x) == any(planar_hull_contains(x, f) for f in faces)


def test_oracle_counts_lps():
    cloud = ring()
    oracle = HullOracle(cloud)
    shadow_betti(cloud, 1, oracle)
    before = oracle.lp_calls
    shadow_betti(cloud, 1, oracle)
    assert oracle.lp_calls == before
