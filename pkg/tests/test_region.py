import math
from fractions import Fraction

import pytest

from temperlab.region import (GridSubgraph, RectilinearPolygon,
                              TemperleyanPolyomino, approximate_polygon,
                              boundary_turning, cell_class,
                              temperleyan_from_subgraph, trace_boundary,
                              EpsTooLarge, NotSimplyConnected,
                              BaseNotOnBoundary, PointNotOnBoundary)
from conftest import l_shaped_subgraph, random_subgraph


def test_path_graph_superposition():
    h = GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0))
    p = temperleyan_from_subgraph(h)
    assert sorted(p.cells) == [(1, 0), (2, 0)]
    assert {cell_class(c) for c in p.cells} == {"W0", "B0"}


def test_2x2_grid_gives_3x3_minus_corner():
    h = GridSubgraph.rectangle(2, 2)
    p = temperleyan_from_subgraph(h)
    assert p.area == 8
    assert p.base_square == (0, 0)
    # Euler audit: vertices + edges + faces - base
    assert p.area == 4 - 1 + 4 + 1
    # area identity in grid units: 4*4 - 4 - 4 = 8
    assert p.area == 4 * 4 - 4 - 4


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 5)])
def test_mxn_gives_odd_rectangle_minus_corner(m, n):
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(m, n))
    xs = [c[0] for c in p.cells]
    ys = [c[1] for c in p.cells]
    assert max(xs) - min(xs) + 1 == 2 * m - 1
    assert max(ys) - min(ys) + 1 == 2 * n - 1
    assert p.area == (2 * m - 1) * (2 * n - 1) - 1
    p.validate()


def test_euler_audit_random_regions(rng):
    for _ in range(25):
        h = random_subgraph(rng)
        p = temperleyan_from_subgraph(h)
        assert p.area == len(h.vertices) - 1 + len(h.edges) + len(h.faces())
        cc = p.class_counts()
        assert cc["B0"] + cc["B1"] == cc["W0"] + cc["W1"]


def test_area_perimeter_identities_disk_regions():
    for h in [GridSubgraph.rectangle(3, 3), GridSubgraph.rectangle(2, 5),
              l_shaped_subgraph(base=(0, 0))]:
        assert h.is_disk()
        p = temperleyan_from_subgraph(h)
        n_v = len(h.vertices)
        n_b = len(h.boundary_vertices())
        assert p.area == 4 * n_v - n_b - 4
        if len(h.neighbors(h.base_vertex)) == 2:
            assert p.perimeter() == 2 * n_b + 4


def test_not_simply_connected_rejected():
    # 8-cycle around a missing center vertex
    ring = [(0, 0), (2, 0), (4, 0), (0, 2), (4, 2), (0, 4), (2, 4), (4, 4)]
    edges = []
    for (x, y) in ring:
        for d in ((2, 0), (0, 2)):
            nb = (x + d[0], y + d[1])
            if nb in ring and not (x == 2 and nb == (2, 2)):
                edges.append(((x, y), nb))
    with pytest.raises(NotSimplyConnected):
        GridSubgraph.from_edges(edges, (0, 0))


def test_base_must_be_on_boundary():
    h = GridSubgraph.rectangle(3, 3)
    with pytest.raises(BaseNotOnBoundary):
        GridSubgraph(h.vertices, h.edges, (2, 2)).validate()
    with pytest.raises(BaseNotOnBoundary):
        GridSubgraph(h.vertices, h.edges, (20, 20)).validate()


def test_ascii_round_trip():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 4))
    q = TemperleyanPolyomino.from_ascii(p.to_ascii())
    assert q.cells == p.cells and q.base_square == p.base_square


def test_polygon_json_round_trip():
    u = RectilinearPolygon.rectangle(1, Fraction(3, 2))
    v = RectilinearPolygon.from_json(u.to_json())
    assert v.corners == u.corners and v.base_point == u.base_point


def test_approximate_unit_square():
    u = RectilinearPolygon.rectangle(1, 1)
    p = approximate_polygon(u, Fraction(1, 9))
    assert p.area == 9 * 9 - 1
    p.validate()


def test_approximate_l_shape_parity():
    half = Fraction(1, 2)
    L = RectilinearPolygon([(0, 0), (1, 0), (1, half), (half, half), (half, 1), (0, 1)],
                           (0, 0))
    p = approximate_polygon(L, Fraction(1, 20))
    walk = trace_boundary(p.cells | {p.base_square})
    assert sum(1 for _, t in walk if t != 0) == 6
    p.validate()   # includes the side-parity audit


def test_approximate_eps_too_large():
    with pytest.raises(EpsTooLarge):
        approximate_polygon(RectilinearPolygon.rectangle(1, 1), 0.6)


def test_approximate_corner_proximity():
    u = RectilinearPolygon.rectangle(1, 1)
    for eps in (Fraction(1, 9), Fraction(1, 17), Fraction(1, 18)):
        p = approximate_polygon(u, eps)
        walk = trace_boundary(p.cells | {p.base_square})
        corners = [pt for pt, t in walk if t != 0]
        for (cx, cy) in u.corners:
            dmin = min(math.hypot(float(eps) * (x / 2) - cx, float(eps) * (y / 2) - cy)
                       for (x, y) in corners)
            assert dmin <= 2 * float(eps)


def test_refinement_stability():
    u = RectilinearPolygon.rectangle(1, 1)
    p1 = approximate_polygon(u, Fraction(1, 12))
    p2 = approximate_polygon(u, Fraction(1, 24))
    w1 = [pt for pt, t in trace_boundary(p1.cells | {p1.base_square}) if t != 0]
    w2 = [pt for pt, t in trace_boundary(p2.cells | {p2.base_square}) if t != 0]
    for (x1, y1) in w1:
        gx, gy = x1 / 2 / 12, y1 / 2 / 12
        dmin = min(math.hypot(x2 / 2 / 24 - gx, y2 / 2 / 24 - gy) for (x2, y2) in w2)
        assert dmin <= 2 / 12


def test_boundary_turning_square():
    sq = RectilinearPolygon.rectangle(1, 1)
    assert boundary_turning(sq, (1, Fraction(1, 4))) == pytest.approx(math.pi / 2)
    assert boundary_turning(sq, (Fraction(1, 2), 0)) == 0.0
    assert sq.total_turning() == pytest.approx(2 * math.pi)


def test_boundary_turning_l_shape():
    half = Fraction(1, 2)
    L = RectilinearPolygon([(0, 0), (1, 0), (1, half), (half, half), (half, 1), (0, 1)],
                           (0, 0))
    # past two convex corners and the concave one: pi/2 + pi/2 - pi/2
    t = boundary_turning(L, (half, Fraction(3, 4)))
    assert t == pytest.approx(math.pi / 2)


def test_boundary_turning_errors():
    sq = RectilinearPolygon.rectangle(1, 1)
    with pytest.raises(PointNotOnBoundary):
        boundary_turning(sq, (Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(PointNotOnBoundary):
        boundary_turning(sq, (1, 1))   # corners are ambiguous
