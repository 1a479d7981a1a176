import math
import random

import pytest

from temperlab._exact import bareiss_det_gaussian
from temperlab.region import GridSubgraph, cell_class, is_black, temperleyan_from_subgraph
from temperlab.kasteleyn import (HoleSpec, build_kasteleyn, count_tilings_exact,
                                 enumerate_tilings, full_adjacency,
                                 kasteleyn_with_holes, log_count_tilings,
                                 CapExceeded, UnbalancedColors)
from conftest import random_subgraph


def cells_rect(w, h):
    return [(x, y) for x in range(w) for y in range(h)]


def test_white_weight_rule():
    k = build_kasteleyn(cells_rect(3, 3) + [(3, 0)])
    w = (1, 0)
    assert k.entry(w, (2, 0)) == (1, 0)     # right
    assert k.entry(w, (1, 1)) == (0, 1)     # up
    assert k.entry(w, (0, 0)) == (-1, 0)    # left


def test_domino_region():
    p = temperleyan_from_subgraph(GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0)))
    k = build_kasteleyn(p)
    assert k.n == 1
    assert count_tilings_exact(k) == 1


def test_small_counts_vs_enumeration():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 2))
    assert count_tilings_exact(build_kasteleyn(p)) == 4
    assert len(enumerate_tilings(p)) == 4
    assert count_tilings_exact(build_kasteleyn(cells_rect(3, 2))) == 3
    assert count_tilings_exact(build_kasteleyn(cells_rect(2, 2))) == 2


def test_8x8_square_known_count():
    assert count_tilings_exact(build_kasteleyn(cells_rect(8, 8))) == 12988816


def test_unbalanced_colors():
    with pytest.raises(UnbalancedColors):
        build_kasteleyn(cells_rect(3, 3))


def test_enumeration_edge_cases():
    assert enumerate_tilings([(0, 0), (1, 0), (2, 0)]) == []
    ts = enumerate_tilings(cells_rect(2, 2))
    assert len(ts) == 2
    with pytest.raises(CapExceeded):
        enumerate_tilings(cells_rect(6, 6), cap=3)


def test_log_count_small():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 2))
    assert log_count_tilings(build_kasteleyn(p)) == pytest.approx(math.log(4), abs=1e-9)
    k22 = build_kasteleyn(cells_rect(2, 2))
    assert log_count_tilings(k22) == pytest.approx(math.log(2), abs=1e-9)


def test_log_count_vs_exact_21x21():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(11, 11))
    k = build_kasteleyn(p)
    exact = count_tilings_exact(k)
    approx = log_count_tilings(k)
    assert abs(approx - math.log(exact)) / math.log(exact) < 1e-6


def test_high_precision_log_count():
    k = build_kasteleyn(cells_rect(4, 4))
    lc = float(log_count_tilings(k, precision_bits=128))
    assert lc == pytest.approx(math.log(36), abs=1e-20)


def test_counts_match_enumeration_random(rng):
    for _ in range(12):
        h = random_subgraph(rng, max_cells=4)
        p = temperleyan_from_subgraph(h)
        assert count_tilings_exact(build_kasteleyn(p)) == len(enumerate_tilings(p))


def test_relabeling_invariance(rng):
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    k = build_kasteleyn(p)
    base = count_tilings_exact(k)
    rows = k.rows()
    for _ in range(5):
        perm = list(range(k.n))
        rng.shuffle(perm)
        shuffled = [rows[i][:] for i in perm]
        d = bareiss_det_gaussian(shuffled)
        assert abs(d[0]) + abs(d[1]) == base


def test_full_adjacency_square_of_count():
    for cells in (cells_rect(2, 2), cells_rect(2, 3), cells_rect(4, 2)):
        n = count_tilings_exact(build_kasteleyn(cells))
        d = bareiss_det_gaussian(full_adjacency(cells))
        assert math.isqrt(abs(d[0]) + abs(d[1])) ** 2 == abs(d[0]) + abs(d[1])
        assert abs(d[0]) + abs(d[1]) == n * n


# -- holes -------------------------------------------------------------------

def boundary_cells(cells):
    cs = set(cells)
    return [c for c in sorted(cs)
            if any((c[0] + d[0], c[1] + d[1]) not in cs
                   for d in ((1, 0), (-1, 0), (0, 1), (0, -1)))]


def test_holes_match_enumeration_5x5():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    cells = set(p.cells)
    blacks = [c for c in sorted(cells) if is_black(c)]
    whites = [c for c in sorted(cells) if not is_black(c)]
    for rb in blacks:
        for rw in whites:
            k = kasteleyn_with_holes(p, HoleSpec(rb, rw))
            assert count_tilings_exact(k) == len(enumerate_tilings(cells - {rb, rw}))


def test_hole_gauge_invariance(rng):
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    cells = set(p.cells)
    rb, rw = (0, 0 + 2), (2, 1)
    rb = [c for c in sorted(cells) if cell_class(c) == "B0"][1]
    rw = [c for c in sorted(cells) if not is_black(c)][5]
    expect = len(enumerate_tilings(cells - {rb, rw}))
    wx, wy = rw
    corners = [(2 * wx + sx, 2 * wy + sy) for sx in (-1, 1) for sy in (-1, 1)]
    for trial in range(10):
        tc = corners[trial % 4]
        # L-shaped corner path entering from a random outer column
        x0 = 2 * rng.randint(-3, -1) - 1
        y0 = 2 * rng.randint(-2, 6) + 1
        path = [(x0, y0)]
        x, y = x0, y0
        while x < tc[0]:
            x += 2
            path.append((x, y))
        while y < tc[1]:
            y += 2
            path.append((x, y))
        while y > tc[1]:
            y -= 2
            path.append((x, y))
        k = kasteleyn_with_holes(p, HoleSpec(rb, rw, path))
        assert count_tilings_exact(k) == expect


def test_hole_unbalanced_and_missing():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    with pytest.raises(UnbalancedColors):
        kasteleyn_with_holes(p, HoleSpec((1, 0), (0, 1)))   # two whites
    from temperlab.kasteleyn import CellMissing
    with pytest.raises(CellMissing):
        kasteleyn_with_holes(p, HoleSpec((40, 40), (1, 0)))
