from fractions import Fraction

import pytest

from temperlab._exact import QC
from temperlab.region import (GridSubgraph, cell_class, is_black,
                              temperleyan_from_subgraph)
from temperlab.kasteleyn import build_kasteleyn, enumerate_tilings
from temperlab.coupling import (average_height, coupling_matrix,
                                coupling_via_greens, discrete_greens,
                                dual_greens, height_function,
                                local_probability, ColorMismatch,
                                InconsistentTiling, NonAdjacentPair)
from conftest import l_shaped_subgraph, random_subgraph

CELLS22 = [(0, 0), (1, 0), (0, 1), (1, 1)]

FIXTURES = [
    GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0)),
    GridSubgraph.rectangle(2, 2),
    GridSubgraph.rectangle(2, 3),
    GridSubgraph.rectangle(3, 3),
    GridSubgraph.rectangle(2, 4),
    GridSubgraph.rectangle(3, 4),
    l_shaped_subgraph(),
]


def test_trivial_inverse():
    p = temperleyan_from_subgraph(GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0)))
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    (w,), (b,) = k.whites, k.blacks
    assert c.entries[(w, b)] * QC(*k.entry(w, b)) == QC(1, 0)


def test_inverse_verified_3x3():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 2))
    coupling_matrix(build_kasteleyn(p))   # raises if K*C != I


def test_entry_axis_structure():
    # same-sublattice pairs are real, mixed pairs purely imaginary, matching
    # the primal/dual Green's difference structure
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    for (w, b), v in c.entries.items():
        same = (cell_class(w) == "W0") == (cell_class(b) == "B0")
        if same:
            assert v.im == 0
        else:
            assert v.re == 0


@pytest.mark.parametrize("h", FIXTURES, ids=lambda h: f"{len(h.vertices)}v")
def test_greens_identity_exact(h):
    p = temperleyan_from_subgraph(h)
    assert p.area <= 60
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    greens = discrete_greens(h)
    dual = dual_greens(h)
    for w in k.whites:
        for b in k.blacks:
            assert coupling_via_greens(h, w, b, greens, dual) == c.entries[(w, b)]


def test_greens_defining_property():
    h = GridSubgraph.rectangle(2, 2)
    g = discrete_greens(h)
    base = tuple(h.base_vertex)
    for x in sorted(h.vertices):
        assert g(x, base) == 0
        for y in sorted(h.vertices):
            # Laplacian in the second argument: deg*G - sum of neighbors
            lap = len(h.neighbors(y)) * g(x, y) - sum(g(x, z) for z in h.neighbors(y))
            expect = Fraction(int(y == x) - int(y == base))
            assert lap == expect


def test_greens_symmetry_and_path_value():
    h = GridSubgraph.from_edges([((0, 0), (2, 0))], (0, 0))
    g = discrete_greens(h)
    assert g((2, 0), (2, 0)) == 1    # single free vertex with boundary degree 1
    h2 = GridSubgraph.rectangle(3, 3)
    g2 = discrete_greens(h2)
    vs = sorted(h2.vertices)
    for x in vs:
        for y in vs:
            assert g2(x, y) == g2(y, x)


def test_color_mismatch():
    h = GridSubgraph.rectangle(2, 2)
    with pytest.raises(ColorMismatch):
        coupling_via_greens(h, (0, 1), (1, 0))   # v1 black, v2 white


def test_local_probability_2x2():
    k = build_kasteleyn(CELLS22)
    c = coupling_matrix(k)
    pr = local_probability(c, k, [((1, 0), (0, 0))])
    assert pr == Fraction(1, 2)
    assert local_probability(c, k, []) == 1


def test_local_probability_forced():
    strip = [(0, 0), (1, 0), (2, 0), (3, 0)]
    k = build_kasteleyn(strip)
    c = coupling_matrix(k)
    assert local_probability(c, k, [((1, 0), (0, 0))]) == 1


def test_local_probability_equals_enumeration_frequency():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 2))
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    tilings = enumerate_tilings(p)
    n = len(tilings)
    for w in k.whites:
        for b in k.blacks:
            if abs(w[0] - b[0]) + abs(w[1] - b[1]) != 1:
                continue
            freq = sum((w, b) in t for t in tilings)
            assert local_probability(c, k, [(w, b)]) == Fraction(freq, n)


def test_single_domino_probabilities_sum_to_one():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    cells = set(p.cells)
    for w in k.whites:
        tot = Fraction(0)
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            b = (w[0] + d[0], w[1] + d[1])
            if b in cells:
                tot += local_probability(c, k, [(w, b)])
        assert tot == 1


def test_pair_probability_from_enumeration():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 3))
    k = build_kasteleyn(p)
    c = coupling_matrix(k)
    tilings = enumerate_tilings(p)
    n = len(tilings)
    doms = sorted({d for t in tilings for d in t})
    pair = (doms[0], doms[-1])
    if pair[0][0] != pair[1][0] and pair[0][1] != pair[1][1]:
        freq = sum(pair[0] in t and pair[1] in t for t in tilings)
        assert local_probability(c, k, list(pair)) == Fraction(freq, n)


def test_local_probability_errors():
    k = build_kasteleyn(CELLS22)
    c = coupling_matrix(k)
    with pytest.raises(NonAdjacentPair):
        local_probability(c, k, [((1, 0), (0, 1))])


def test_height_function_2x2():
    ts = enumerate_tilings(CELLS22)
    h1 = height_function(CELLS22, ts[0])
    h2 = height_function(CELLS22, ts[1])
    boundary = [q for q in h1.values if q != (1, 1)]
    assert all(h1.values[q] == h2.values[q] for q in boundary)
    assert abs(h1.values[(1, 1)] - h2.values[(1, 1)]) == 4


def test_height_loop_consistency():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(3, 3))
    for t in enumerate_tilings(p):
        height_function(p, t)   # BFS raises on any inconsistent loop


def test_height_rejects_bad_tiling():
    with pytest.raises(InconsistentTiling):
        height_function(CELLS22, [((1, 0), (0, 0))])


def test_average_height_2x2():
    ae = average_height(CELLS22, method="enumerate")
    ac = average_height(CELLS22, method="coupling")
    assert ae == ac
    assert ae[(1, 1)] == 0     # mean of the two tilings' +-2 values


def test_average_height_boundary_tiling_independent():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(2, 2))
    ts = enumerate_tilings(p)
    fields = [height_function(p, t) for t in ts]
    interior = {q for q in fields[0].values
                if all(abs(f.values[q] - fields[0].values[q]) == 0 for f in fields)}
    # every corner point on the region boundary has a tiling-independent height
    from temperlab.region import boundary_edges
    bpts = {pt for e in boundary_edges(p.cells) for pt in e}
    for q in bpts:
        assert all(f.values[q] == fields[0].values[q] for f in fields)


def test_average_height_7x7_double_computation():
    p = temperleyan_from_subgraph(GridSubgraph.rectangle(4, 4))
    assert average_height(p, method="enumerate") == average_height(p, method="coupling")


def test_coupling_scaling_toward_continuum():
    # (1/eps) C(u_eps, w_eps) approaches Re F0(u, w) on the unit square:
    # check a monotone error trend at the center for eps = 1/(2m) lattices
    import cmath
    from temperlab.conformal import ModelDomainMap, f_plus, f_minus
    # F0 on the unit square via transport is heavyweight; use the disk-free
    # plane-like trend instead: difference between successive refinements
    # shrinks (no rate asserted)
    vals = []
    for m in (3, 5, 7):
        h = GridSubgraph.rectangle(m, m)
        p = temperleyan_from_subgraph(h)
        k = build_kasteleyn(p)
        c = coupling_matrix(k)
        # white cell nearest the center, black neighbor to its right
        wc = min(k.whites, key=lambda w: (w[0] - (m - 1)) ** 2 + (w[1] - (m - 1)) ** 2)
        bc = (wc[0] + 1, wc[1]) if (wc[0] + 1, wc[1]) in set(k.blacks) else (wc[0] - 1, wc[1])
        eps = 1.0 / (2 * m - 1)
        vals.append(complex(c.entries[(wc, bc)]) / eps)
    diffs = [abs(vals[i + 1] - vals[i]) for i in range(len(vals) - 1)]
    assert diffs[1] < diffs[0]
