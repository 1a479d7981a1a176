"""Exact coupling functions (inverse Kasteleyn), local domino statistics,
discrete Green's functions on a region and its dual, and height functions.

Everything here is exact rational-complex arithmetic: the Green's-function
description of the coupling function is an identity, and it is tested as one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._exact import QC, QC_ZERO, qc_inverse, rational_inverse, fraction_sqrt
from .kasteleyn import KasteleynMatrix
from .region import GridSubgraph, TemperleyanPolyomino, cell_class, is_black, B0, B1, W0, W1


class ColorMismatch(Exception):
    pass


class NonAdjacentPair(Exception):
    pass


class InconsistentTiling(Exception):
    pass


class Disconnected(Exception):
    pass


# ---------------------------------------------------------------------------
# coupling matrix
# ---------------------------------------------------------------------------

@dataclass
class CouplingMatrix:
    whites: list
    blacks: list
    entries: dict    # (white cell, black cell) -> QC

    def __call__(self, w, b):
        return self.entries[(tuple(w), tuple(b))]


def coupling_matrix(k: KasteleynMatrix) -> CouplingMatrix:
    """Exact inverse of the Kasteleyn matrix, indexed (white, black): the
    entry C(w, b) is (K^-1)[b, w], so that sum_b K(w', b) C(w, b) = delta."""
    rows = [[QC(a, b) for (a, b) in row] for row in k.rows()]
    inv = qc_inverse(rows)   # inv[j][i] = (K^-1)[col j of K, row i of K]
    entries = {}
    for i, w in enumerate(k.whites):
        for j, b in enumerate(k.blacks):
            entries[(w, b)] = inv[j][i]
    c = CouplingMatrix(list(k.whites), list(k.blacks), entries)
    _check_inverse(k, c)
    return c


def _check_inverse(k: KasteleynMatrix, c: CouplingMatrix):
    n = k.n
    for i in range(n):
        for w2 in range(n):
            s = QC_ZERO
            for j in range(n):
                kv = k.entries.get((i, j))
                if kv:
                    s = s + QC(kv[0], kv[1]) * c.entries[(k.whites[w2], k.blacks[j])]
            expect = QC(1, 0) if i == w2 else QC_ZERO
            if s != expect:
                raise ArithmeticError("K * C != I")


def local_probability(c: CouplingMatrix, k: KasteleynMatrix, dominos) -> Fraction:
    """Probability that all listed (white, black) dominos occur in a uniform
    tiling: |det [C(w_i, b_j)]| (the Kasteleyn weights have modulus one)."""
    dominos = [(tuple(w), tuple(b)) for (w, b) in dominos]
    seen = set()
    for (w, b) in dominos:
        if abs(w[0] - b[0]) + abs(w[1] - b[1]) != 1:
            raise NonAdjacentPair(f"{w} and {b} are not adjacent")
        if is_black(w) or not is_black(b):
            raise ColorMismatch("dominos must be (white, black) pairs")
        if w in seen or b in seen:
            raise NonAdjacentPair("dominos are not disjoint")
        seen.update((w, b))
    m = len(dominos)
    if m == 0:
        return Fraction(1)
    sub = [[c.entries[(dominos[i][0], dominos[j][1])] for j in range(m)]
           for i in range(m)]
    det = _qc_det(sub)
    return fraction_sqrt(det.abs2())


def _qc_det(rows):
    n = len(rows)
    a = [row[:] for row in rows]
    det = QC(1, 0)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not a[i][col].is_zero():
                piv = i
                break
        if piv is None:
            return QC_ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f.is_zero():
                continue
            for j in range(col, n):
                a[i][j] = a[i][j] - f * a[col][j]
    return det


# ---------------------------------------------------------------------------
# discrete Green's functions
# ---------------------------------------------------------------------------

@dataclass
class DiscreteGreens:
    """Base-rooted Green's function on H: Delta G(x, .) = delta_x - delta_b
    and G(x, b) = 0, as exact rationals.  G is symmetric."""
    vertices: list
    base: tuple
    _inv: dict

    def __call__(self, x, y):
        x, y = tuple(x), tuple(y)
        if x == self.base or y == self.base:
            return Fraction(0)
        return self._inv[(x, y)]


def discrete_greens(h: GridSubgraph) -> DiscreteGreens:
    if not h.is_connected():
        raise Disconnected("Green's function needs a connected region")
    from .treelap import LaplacianMatrix
    lap = LaplacianMatrix.of(h)
    others = [v for v in lap.index if v != tuple(h.base_vertex)]
    inv = rational_inverse(lap.reduced(h.base_vertex))
    table = {}
    for i, x in enumerate(others):
        for j, y in enumerate(others):
            table[(x, y)] = inv[i][j]
    return DiscreteGreens(list(lap.index), tuple(h.base_vertex), table)


OUTER = "outer"


@dataclass
class DualGreens:
    """Green's function on the dual of H (faces plus the outer face), rooted
    at and vanishing on the outer face."""
    faces: list
    _inv: dict

    def __call__(self, f, g):
        if f == OUTER or g == OUTER:
            return Fraction(0)
        return self._inv[(tuple(f), tuple(g))]

    def interior(self, center):
        """The face at `center`, or the outer face marker."""
        return center if center in set(self.faces) else OUTER


def dual_greens(h: GridSubgraph) -> DualGreens:
    """Faces are indexed by their centers (the B1 cells of P(H))."""
    centers = [(x + 1, y + 1) for (x, y) in h.faces()]
    cset = set(centers)
    pos = {c: i for i, c in enumerate(sorted(cset))}
    n = len(pos)
    rows = [[0] * n for _ in range(n)]

    def face_of(center):
        return center if center in cset else OUTER

    for e in h.edges:
        (x1, y1), (x2, y2) = sorted(e)
        if y1 == y2:   # horizontal edge: faces above and below
            f1 = face_of((x1 + 1, y1 + 1))
            f2 = face_of((x1 + 1, y1 - 1))
        else:          # vertical edge: faces right and left
            f1 = face_of((x1 + 1, y1 + 1))
            f2 = face_of((x1 - 1, y1 + 1))
        for f in (f1, f2):
            if f != OUTER:
                rows[pos[f]][pos[f]] += 1
        if f1 != OUTER and f2 != OUTER:
            rows[pos[f1]][pos[f2]] -= 1
            rows[pos[f2]][pos[f1]] -= 1
    table = {}
    if n:
        inv = rational_inverse(rows)
        ordered = sorted(cset)
        for i, f in enumerate(ordered):
            for j, g in enumerate(ordered):
                table[(f, g)] = inv[i][j]
    return DualGreens(sorted(cset), table)


def coupling_via_greens(h: GridSubgraph, v1, v2,
                        greens: DiscreteGreens = None,
                        dual: DualGreens = None) -> QC:
    """Coupling-function entry from differences of the Green's function on H
    (black cells on vertices) or its dual (black cells on faces)."""
    v1, v2 = tuple(v1), tuple(v2)
    k1, k2 = cell_class(v1), cell_class(v2)
    if k1 not in (W0, W1) or k2 not in (B0, B1):
        raise ColorMismatch(f"need white v1 and black v2, got {k1}, {k2}")
    G = greens if greens is not None else discrete_greens(h)
    Gd = dual if dual is not None else dual_greens(h)
    x, y = v1
    # The dual difference for a horizontal edge runs below-minus-above: with
    # cells indexed by centers and the 1,i,-1,-i white gauge, that is the
    # orientation under which K annihilates these fields (checked exactly
    # against the inverse matrix on every test region).
    if k1 == W0:
        if k2 == B0:
            return QC(G((x + 1, y), v2) - G((x - 1, y), v2), 0)
        up, dn = Gd.interior((x, y + 1)), Gd.interior((x, y - 1))
        return QC(0, Gd(dn, v2) - Gd(up, v2))
    else:
        if k2 == B1:
            rt, lt = Gd.interior((x + 1, y)), Gd.interior((x - 1, y))
            return QC(Gd(rt, v2) - Gd(lt, v2), 0)
        return QC(0, -(G((x, y + 1), v2) - G((x, y - 1), v2)))


# ---------------------------------------------------------------------------
# height functions
# ---------------------------------------------------------------------------

@dataclass
class HeightField:
    """Integer heights on polyomino corner points (doubled coordinates)."""
    values: dict
    anchor: tuple


def _corner_points(cells):
    pts = set()
    for (i, j) in cells:
        for sx in (-1, 1):
            for sy in (-1, 1):
                pts.add((2 * i + sx, 2 * j + sy))
    return pts


def _edge_cells(u, d):
    """Cells flanking the unit corner step u -> u+d: (left_cell, right_cell)."""
    ux, uy = u
    if d == (2, 0):
        return ((ux + 1) // 2, (uy + 1) // 2), ((ux + 1) // 2, (uy - 1) // 2)
    if d == (-2, 0):
        return ((ux - 1) // 2, (uy - 1) // 2), ((ux - 1) // 2, (uy + 1) // 2)
    if d == (0, 2):
        return ((ux - 1) // 2, (uy + 1) // 2), ((ux + 1) // 2, (uy + 1) // 2)
    if d == (0, -2):
        return ((ux + 1) // 2, (uy - 1) // 2), ((ux - 1) // 2, (uy - 1) // 2)
    raise ValueError(d)


def _height_increment(cells, u, d, crossed):
    """Height step along u -> u+d, or None when the edge is outside the region
    or crossed by a domino."""
    left, right = _edge_cells(u, d)
    lin, rin = left in cells, right in cells
    if not lin and not rin:
        return None
    if crossed(left, right):
        return None
    if lin:
        return 1 if is_black(left) else -1
    return 1 if not is_black(right) else -1


def height_function(p, tiling, anchor=None) -> HeightField:
    """Height field of one tiling: +-1 edge increments by the color rule,
    anchored at the lowest-leftmost corner (or `anchor`) with value 0."""
    cells = set(p.cells) if isinstance(p, TemperleyanPolyomino) else set(map(tuple, p))
    covered = set()
    domset = set()
    for (w, b) in tiling:
        w, b = tuple(w), tuple(b)
        if w in covered or b in covered:
            raise InconsistentTiling("cell covered twice")
        covered.update((w, b))
        domset.add(frozenset((w, b)))
    if covered != cells:
        raise InconsistentTiling("tiling does not cover the region")

    def crossed(a, b):
        return frozenset((a, b)) in domset

    pts = _corner_points(cells)
    start = min(pts) if anchor is None else tuple(anchor)
    vals = {start: 0}
    stack = [start]
    while stack:
        u = stack.pop()
        for d in ((2, 0), (-2, 0), (0, 2), (0, -2)):
            v = (u[0] + d[0], u[1] + d[1])
            if v not in pts:
                continue
            inc = _height_increment(cells, u, d, crossed)
            if inc is None:
                continue
            hv = vals[u] + inc
            if v in vals:
                if vals[v] != hv:
                    raise InconsistentTiling(f"height conflict at {v}")
            else:
                vals[v] = hv
                stack.append(v)
    if set(vals) != pts:
        raise InconsistentTiling("height graph is disconnected")
    return HeightField(vals, start)


def average_height(p, method="coupling", cap=10 ** 6):
    """Expected height at every corner point, as exact rationals anchored at
    the lowest-leftmost corner.

    method='enumerate' averages over all tilings; method='coupling' uses
    linearity: along an uncrossable edge the expected step is s*(1 - 4*pr)
    where s is the color rule sign and pr the probability of the crossing
    domino.
    """
    from .kasteleyn import build_kasteleyn, enumerate_tilings
    cells = set(p.cells) if isinstance(p, TemperleyanPolyomino) else set(map(tuple, p))
    pts = _corner_points(cells)
    start = min(pts)

    if method == "enumerate":
        tilings = enumerate_tilings(cells, cap)
        if not tilings:
            raise InconsistentTiling("region has no tilings")
        counts = {}
        for t in tilings:
            for d in t:
                counts[frozenset(d)] = counts.get(frozenset(d), 0) + 1
        n = len(tilings)

        def crossing_prob(w, b):
            return Fraction(counts.get(frozenset((w, b)), 0), n)
    else:
        k = build_kasteleyn(cells)
        c = coupling_matrix(k)

        def crossing_prob(w, b):
            return local_probability(c, k, [(w, b)])

    def exp_step(u, d):
        # expected height step: every tiling contributes s or -3s, so the
        # mean over tilings is s*(1 - 4*pr) with pr the crossing probability
        left, right = _edge_cells(u, d)
        lin, rin = left in cells, right in cells
        if not lin and not rin:
            return None
        if lin:
            s = 1 if is_black(left) else -1
        else:
            s = 1 if not is_black(right) else -1
        if lin and rin:
            w, b = (left, right) if not is_black(left) else (right, left)
            pr = crossing_prob(w, b)
        else:
            pr = Fraction(0)
        return s * (1 - 4 * pr)

    vals = {start: Fraction(0)}
    stack = [start]
    while stack:
        u = stack.pop()
        for d in ((2, 0), (-2, 0), (0, 2), (0, -2)):
            v = (u[0] + d[0], u[1] + d[1])
            if v not in pts or v in vals:
                continue
            st = exp_step(u, d)
            if st is None:
                continue
            vals[v] = vals[u] + st
            stack.append(v)
    return vals
