import math
from collections import Counter
from fractions import Fraction

import pytest
from scipy import stats

from temperlab.region import (GridSubgraph, cell_class, is_black,
                              temperleyan_from_subgraph)
from temperlab.lerw import (BNotOnBoundary, HoleColorMismatch,
                            InsufficientSamples, VertexMissing, angular_profile,
                            branch, growth_exponent, lerw_between, loop_erase,
                            sample_ust, spanning_trees_of,
                            two_hole_bijection_check, two_hole_log_ratio,
                            _ratio_polyomino)


def tree_key(t):
    return frozenset((v, p) for v, p in t.parent.items() if p is not None)


def test_loop_erase_traces():
    assert loop_erase(["a", "b", "a", "c"]).vertices == ["a", "c"]
    assert loop_erase(["a", "b", "c", "a", "d"]).vertices == ["a", "d"]
    assert loop_erase(["a", "b", "c"]).vertices == ["a", "b", "c"]


def test_loop_erase_idempotent(rng):
    for _ in range(20):
        walk = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(40)]
        once = loop_erase(walk).vertices
        assert loop_erase(once).vertices == once


def test_sample_ust_deterministic():
    g = GridSubgraph.rectangle(2, 3)
    t1 = sample_ust(g, (0, 0), 7)
    t2 = sample_ust(g, (0, 0), 7)
    assert t1.parent == t2.parent


def test_sample_ust_uniform_4cycle():
    g = GridSubgraph.rectangle(2, 2)
    cnt = Counter(tree_key(sample_ust(g, (0, 0), s)) for s in range(40000))
    assert len(cnt) == 4
    chi = stats.chisquare(list(cnt.values()))
    assert chi.pvalue > 0.001
    # each frequency within 4 sigma of N/4
    n = 40000
    sigma = math.sqrt(n * 0.25 * 0.75)
    for c in cnt.values():
        assert abs(c - n / 4) < 4 * sigma


def test_sample_ust_uniform_2x3():
    g = GridSubgraph.rectangle(2, 3)
    assert len(spanning_trees_of(g)) == 15
    cnt = Counter(tree_key(sample_ust(g, (0, 0), s)) for s in range(30000))
    assert len(cnt) == 15
    assert stats.chisquare(list(cnt.values())).pvalue > 0.001


def test_path_graph_unique_tree():
    g = GridSubgraph.from_edges([((0, 0), (2, 0)), ((2, 0), (4, 0))], (0, 0))
    keys = {tree_key(sample_ust(g, (0, 0), s)) for s in range(10)}
    assert len(keys) == 1


def test_branch_basics():
    g = GridSubgraph.rectangle(2, 2)
    t = sample_ust(g, (2, 2), 1)
    assert branch(t, (2, 2)).vertices == [(2, 2)]
    b = branch(t, (0, 0))
    assert b.vertices[0] == (0, 0) and b.vertices[-1] == (2, 2)
    assert len(b) - 1 >= 2   # lattice distance in H steps
    with pytest.raises(VertexMissing):
        branch(t, (9, 9))


def test_branch_matches_direct_lerw_distribution():
    g = GridSubgraph.rectangle(2, 2)
    n = 6000
    b_cnt = Counter(tuple(branch(sample_ust(g, (2, 2), s), (0, 0)).vertices)
                    for s in range(n))
    l_cnt = Counter(tuple(lerw_between(g, (0, 0), (2, 2), 10 ** 6 + s).vertices)
                    for s in range(n))
    keys = sorted(set(b_cnt) | set(l_cnt))
    table = [[b_cnt.get(k, 0) for k in keys], [l_cnt.get(k, 0) for k in keys]]
    res = stats.chi2_contingency(table)
    assert res.pvalue > 1e-4


def test_two_hole_bijection_3x3_and_5x5():
    for m in (2, 3):
        p = temperleyan_from_subgraph(GridSubgraph.rectangle(m, m))
        pairs = 0
        for b in [c for c in sorted(p.cells) if cell_class(c) == "B0"]:
            for w in [c for c in sorted(p.cells) if not is_black(c)]:
                try:
                    tq, tc, eq = two_hole_bijection_check(p, b, w)
                except BNotOnBoundary:
                    continue
                pairs += 1
                assert eq, (b, w, tq, tc)
        assert pairs > 0


def test_two_hole_interior_b_flagged():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    with pytest.raises(BNotOnBoundary):
        two_hole_bijection_check(p, (2, 2), (1, 0))


def test_two_hole_color_mismatch():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    with pytest.raises(HoleColorMismatch):
        two_hole_bijection_check(p, (1, 1), (1, 0))   # b in B1
    with pytest.raises(HoleColorMismatch):
        two_hole_bijection_check(p, (2, 0), (1, 1))   # w black


def test_growth_exponent_small_window_and_determinism():
    fit = growth_exponent([16, 32, 64, 128], 120, seed=11)
    assert 1.1 < fit.exponent < 1.4
    assert fit.std_error > 0
    fit2 = growth_exponent([16, 32, 64, 128], 120, seed=11)
    assert fit2.exponent == fit.exponent and fit2.std_error == fit.std_error
    assert fit2.means == fit.means


def test_growth_exponent_se_scaling():
    se1 = growth_exponent([16, 32, 64, 128], 100, seed=3).std_error
    se2 = growth_exponent([16, 32, 64, 128], 400, seed=3).std_error
    assert se1 / se2 == pytest.approx(2.0, rel=0.5)


def test_growth_exponent_validation():
    with pytest.raises(InsufficientSamples):
        growth_exponent([16, 32, 64], 10, seed=0)
    with pytest.raises(InsufficientSamples):
        growth_exponent([16, 32, 64, 128], 1, seed=0)


def test_angular_profile_small():
    rep = angular_profile(64, 1500, seed=9)
    assert -1.1 < rep.radial_slope < -0.4
    # reflection symmetry of the angular ratios within a loose band
    ths = sorted(rep.angular_ratio)
    for th in ths:
        if th > 0.1 and -th in rep.angular_ratio:
            a, b = rep.angular_ratio[th], rep.angular_ratio[-th]
            assert abs(a - b) < 0.35
    with pytest.raises(InsufficientSamples):
        angular_profile(32, 5, seed=1)


def test_ratio_beta_reflection_symmetry():
    p = _ratio_polyomino(Fraction(1, 16))
    r1 = two_hole_log_ratio(p, Fraction(1, 2), Fraction(1, 4))
    r2 = two_hole_log_ratio(p, Fraction(1, 2), Fraction(-1, 4))
    assert r1 == pytest.approx(r2, abs=1e-9)


def test_ratio_single_eps_alpha_monotone():
    # the ratio decreases as the white hole moves away from the source edge
    p = _ratio_polyomino(Fraction(1, 32))
    r = [two_hole_log_ratio(p, a, Fraction(0)) for a in
         (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2))]
    assert r[0] > r[1] > r[2]
