import math

import mpmath as mp
import pytest

from temperlab.region import GridSubgraph
from temperlab.treelap import (RectangleSpec, catalan_constant, dedekind_eta,
                               rectangle_log_trees, rectform_expansion,
                               spanning_tree_count, verify_temperley,
                               tree_count_deletion_contraction, Disconnected,
                               DomainError)
from conftest import l_shaped_subgraph, random_subgraph


def test_tiny_tree_counts():
    assert spanning_tree_count(GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0))) == 1
    assert spanning_tree_count(GridSubgraph.rectangle(2, 2)) == 4
    assert spanning_tree_count(GridSubgraph.rectangle(3, 3)) == 192


def test_tree_count_base_independent():
    h = GridSubgraph.rectangle(3, 4)
    counts = {spanning_tree_count(GridSubgraph(h.vertices, h.edges, b))
              for b in h.boundary_vertices()}
    assert len(counts) == 1


def test_matrix_tree_vs_deletion_contraction(rng):
    for _ in range(10):
        h = random_subgraph(rng, max_cells=4)
        if len(h.vertices) > 10:
            continue
        idx = {v: i for i, v in enumerate(sorted(h.vertices))}
        edges = [tuple(idx[v] for v in e) for e in h.edges]
        assert spanning_tree_count(h) == tree_count_deletion_contraction(edges)


def test_verify_temperley_fixtures(rng):
    assert verify_temperley(GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0))) == (1, 1, True)
    assert verify_temperley(GridSubgraph.rectangle(2, 2)) == (4, 4, True)
    assert verify_temperley(GridSubgraph.rectangle(3, 3)) == (192, 192, True)
    t, c, eq = verify_temperley(l_shaped_subgraph())
    assert eq
    for _ in range(8):
        h = random_subgraph(rng, max_cells=5)
        assert verify_temperley(h)[2]


def test_rectangle_log_trees_small():
    assert rectangle_log_trees(RectangleSpec(1, 1)) == 0
    assert float(rectangle_log_trees(RectangleSpec(2, 2))) == pytest.approx(math.log(4), abs=1e-12)
    r = rectangle_log_trees(RectangleSpec(3, 3)) - mp.log(192)
    assert abs(float(r)) < 1e-10


def test_rectangle_log_trees_matches_exact_counts():
    for (m, n) in [(4, 5), (6, 6), (5, 9), (12, 12)]:
        exact = spanning_tree_count(GridSubgraph.rectangle(m, n))
        lt = rectangle_log_trees(RectangleSpec(m, n), 128)
        with mp.workprec(128):
            assert abs(float(lt - mp.log(exact))) < 2.0 ** -64


def test_rectangle_log_trees_symmetry():
    a = rectangle_log_trees(RectangleSpec(5, 8), 128)
    b = rectangle_log_trees(RectangleSpec(8, 5), 128)
    assert abs(float(a - b)) < 1e-35


def test_catalan_constant():
    g = catalan_constant(64)
    assert float(g) == pytest.approx(0.915965594177219015, abs=1e-15)
    # independent accelerated alternating series
    with mp.workprec(80):
        series = mp.nsum(lambda k: (-1) ** k / (2 * k + 1) ** 2, [0, mp.inf],
                         method="a")
        assert abs(float(catalan_constant(80) - series)) < 1e-18
    assert float(4 * g / mp.pi) == pytest.approx(1.166243616, abs=1e-8)
    c1 = float(g / (2 * mp.pi) + mp.log(mp.sqrt(2) - 1) / 4)
    assert c1 == pytest.approx(-0.0745649, abs=1e-5)
    with pytest.raises(ValueError):
        catalan_constant(8)


def test_dedekind_eta():
    v = dedekind_eta(float(mp.e ** (-2 * mp.pi)), 128)
    assert float(v) == pytest.approx(0.7682254223260566, abs=1e-12)
    # q -> 0: eta(q)/q^(1/24) -> 1
    q = 1e-9
    assert float(dedekind_eta(q, 64) / mp.mpf(q) ** (mp.mpf(1) / 24)) == pytest.approx(1.0, abs=1e-8)
    # truncation-depth stability
    a = dedekind_eta(0.3, 80)
    b = dedekind_eta(0.3, 160)
    assert abs(float(a - b)) < 2.0 ** -78
    with pytest.raises(DomainError):
        dedekind_eta(1.5, 64)


def test_rectform_expansion_residuals():
    # remainder is O(1/(mn)); coefficient measured well under the bound 10
    for (m, n) in [(16, 16), (16, 32), (32, 64), (64, 64)]:
        r = float(rectangle_log_trees(RectangleSpec(m, n), 128)
                  - rectform_expansion(RectangleSpec(m, n), 128))
        assert abs(r) <= 10.0 / (m * n)


def test_rectform_remainder_shrinks_like_1_over_mn():
    r1 = float(rectangle_log_trees(RectangleSpec(16, 32), 128)
               - rectform_expansion(RectangleSpec(16, 32), 128))
    r2 = float(rectangle_log_trees(RectangleSpec(32, 64), 128)
               - rectform_expansion(RectangleSpec(32, 64), 128))
    assert r1 / r2 == pytest.approx(4.0, rel=0.25)


def test_rectform_small_case_finite():
    val = float(rectform_expansion(RectangleSpec(2, 2)))
    assert math.isfinite(val)
    # residual vs exact log 4 recorded; no tolerance claim at this size
    assert abs(val - math.log(4)) < 1.0


def test_rectform_transposition_symmetry():
    a = float(rectform_expansion(RectangleSpec(24, 48), 160))
    b = float(rectform_expansion(RectangleSpec(48, 24), 160))
    bound = 2 * 10.0 / (24 * 48)
    assert abs(a - b) <= bound


def test_disconnected_raises():
    h = GridSubgraph.rectangle(2, 2)
    bad = GridSubgraph(frozenset(list(h.vertices) + [(100, 100)]), h.edges, (0, 0))
    with pytest.raises(Disconnected):
        spanning_tree_count(bad)
