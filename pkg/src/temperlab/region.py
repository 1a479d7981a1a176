"""Grid subgraphs, their Temperleyan polyominoes, and rectilinear polygons.

Coordinate conventions, used throughout the package:

* A grid subgraph H lives on the even sublattice 2Z^2 (both coordinates even);
  edges join vertices at distance 2.
* The polyomino P(H) is the superposition of H with its planar dual.  Its unit
  cells are indexed by integer centers: the cell (i, j) is the unit square
  with corners (i +- 1/2, j +- 1/2).  Cell classes follow coordinate parity:

      (even, even) -> B0   (sits on a vertex of H)
      (odd,  odd)  -> B1   (sits on a face of H)
      (odd,  even) -> W0   (sits on a horizontal edge of H)
      (even, odd)  -> W1   (sits on a vertical edge of H)

  so index arithmetic like "cell + 1" or "cell + i" moves between a white
  cell and its black neighbors literally.
* Corner points of cells are stored in doubled coordinates: the geometric
  point (i + 1/2, j + 1/2) is the integer pair (2i + 1, 2j + 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import pi


class NotSimplyConnected(Exception):
    pass


class BaseNotOnBoundary(Exception):
    pass


class EpsTooLarge(Exception):
    pass


class PointNotOnBoundary(Exception):
    pass


B0, B1, W0, W1 = "B0", "B1", "W0", "W1"


def cell_class(cell):
    x, y = cell
    if x % 2 == 0:
        return B0 if y % 2 == 0 else W1
    return W0 if y % 2 == 0 else B1


def is_black(cell):
    return (cell[0] + cell[1]) % 2 == 0


# ---------------------------------------------------------------------------
# GridSubgraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSubgraph:
    """Simply-connected subgraph of the grid 2Z^2 with a boundary base vertex."""

    vertices: frozenset
    edges: frozenset          # frozenset of frozenset pairs of vertices
    base_vertex: tuple

    @staticmethod
    def from_edges(edges, base_vertex):
        es = frozenset(frozenset(e) for e in edges)
        vs = frozenset(v for e in es for v in e)
        g = GridSubgraph(vs, es, tuple(base_vertex))
        g.validate()
        return g

    @staticmethod
    def rectangle(m, n, base=None):
        """m x n grid graph on {0,2,..,2(m-1)} x {0,2,..,2(n-1)}; base defaults
        to the lower-left corner."""
        vs = {(2 * i, 2 * j) for i in range(m) for j in range(n)}
        es = []
        for (x, y) in vs:
            if (x + 2, y) in vs:
                es.append(((x, y), (x + 2, y)))
            if (x, y + 2) in vs:
                es.append(((x, y), (x, y + 2)))
        return GridSubgraph.from_edges(es, base or (0, 0))

    @staticmethod
    def from_vertices(vertices, base_vertex):
        """Induced subgraph: every distance-2 pair of given vertices is an edge."""
        vs = set(map(tuple, vertices))
        es = []
        for (x, y) in vs:
            if (x + 2, y) in vs:
                es.append(((x, y), (x + 2, y)))
            if (x, y + 2) in vs:
                es.append(((x, y), (x, y + 2)))
        return GridSubgraph.from_edges(es, base_vertex)

    # -- derived structure --------------------------------------------------

    def has_edge(self, a, b):
        return frozenset((a, b)) in self.edges

    def neighbors(self, v):
        x, y = v
        return [w for w in ((x + 2, y), (x - 2, y), (x, y + 2), (x, y - 2))
                if self.has_edge(v, w)]

    def faces(self):
        """Interior faces as lower-left vertices of complete unit grid squares."""
        out = []
        for (x, y) in self.vertices:
            corners = ((x, y), (x + 2, y), (x, y + 2), (x + 2, y + 2))
            if not all(c in self.vertices for c in corners):
                continue
            if (self.has_edge(corners[0], corners[1]) and self.has_edge(corners[0], corners[2])
                    and self.has_edge(corners[1], corners[3]) and self.has_edge(corners[2], corners[3])):
                out.append((x, y))
        return sorted(out)

    def boundary_vertices(self):
        """Vertices adjacent to the outer face (incident to < 4 faces)."""
        faces = set(self.faces())
        out = []
        for v in self.vertices:
            x, y = v
            quads = [(x, y), (x - 2, y), (x - 2, y - 2), (x, y - 2)]
            if sum(q in faces for q in quads) < 4:
                out.append(v)
        return sorted(out)

    def is_connected(self):
        vs = set(self.vertices)
        if not vs:
            return False
        stack = [next(iter(vs))]
        seen = {stack[0]}
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vs

    def validate(self):
        """Connected, hole-free (every bounded face is a unit lattice square),
        base vertex on the outer boundary.

        The strict disk form (every vertex and edge carried by a closed face,
        no pinch points) is what the continuum statements assume, but the
        combinatorics (Temperley bijection, matrix-tree) also cover degenerate
        regions such as path graphs, so only hole-freeness is enforced here;
        `is_disk` reports the stricter property.
        """
        if not self.vertices:
            raise ValueError("empty vertex set")
        for (x, y) in self.vertices:
            if x % 2 or y % 2:
                raise ValueError(f"vertex {x, y} is not on the even sublattice")
        for e in self.edges:
            a, b = tuple(e)
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 2:
                raise ValueError(f"edge {a}-{b} does not join distance-2 vertices")
        if not self.is_connected():
            raise NotSimplyConnected("region is disconnected")
        n_bounded = len(self.edges) - len(self.vertices) + 1
        if len(self.faces()) != n_bounded:
            raise NotSimplyConnected("a bounded face is not a unit lattice square")
        if tuple(self.base_vertex) not in self.vertices:
            raise BaseNotOnBoundary("base vertex is not a vertex of the region")
        if tuple(self.base_vertex) not in set(self.boundary_vertices()):
            raise BaseNotOnBoundary("base vertex is not adjacent to the outer face")
        return True

    def is_disk(self):
        """True when the union of closed faces is a disk carrying all vertices
        and edges (no dangling structure, no pinch points)."""
        faces = set(self.faces())
        if not faces:
            return False
        face_edges = set()
        face_vertices = set()
        for (x, y) in faces:
            c = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)]
            face_vertices.update(c)
            for k in range(4):
                face_edges.add(frozenset((c[k], c[(k + 1) % 4])))
        if face_vertices != set(self.vertices) or face_edges != set(self.edges):
            return False
        for (x, y) in self.vertices:
            quads = [(x, y), (x - 2, y), (x - 2, y - 2), (x, y - 2)]
            mask = [q in faces for q in quads]
            runs = sum(1 for k in range(4) if mask[k] and not mask[k - 1])
            if runs > 1:
                return False
        return True


# ---------------------------------------------------------------------------
# TemperleyanPolyomino
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TemperleyanPolyomino:
    """Unit-cell region (cells indexed by integer centers) with one removed
    base square recorded separately.  `scale` is the physical side length of
    one cell when the polyomino approximates a continuum polygon."""

    cells: frozenset
    base_square: tuple
    scale: object = None

    @property
    def cell_class(self):
        return {c: cell_class(c) for c in self.cells}

    def whites(self):
        return sorted(c for c in self.cells if not is_black(c))

    def blacks(self):
        return sorted(c for c in self.cells if is_black(c))

    @property
    def area(self):
        return len(self.cells)

    def class_counts(self):
        out = {B0: 0, B1: 0, W0: 0, W1: 0}
        for c in self.cells:
            out[cell_class(c)] += 1
        return out

    def perimeter(self):
        return len(boundary_edges(self.cells))

    def boundary_corner_walk(self):
        return trace_boundary(self.cells)

    def h_graph(self):
        """Reconstruct the grid subgraph H with P(H) == self."""
        verts = [c for c in self.cells if cell_class(c) == B0]
        verts.append(tuple(self.base_square))
        edges = []
        for (x, y) in self.cells:
            k = cell_class((x, y))
            if k == W0:
                edges.append(((x - 1, y), (x + 1, y)))
            elif k == W1:
                edges.append(((x, y - 1), (x, y + 1)))
        return GridSubgraph.from_edges(edges, tuple(self.base_square))

    def validate(self):
        if cell_class(self.base_square) != B0:
            raise ValueError("base square must be of class B0")
        if self.base_square in self.cells:
            raise ValueError("base square must be removed from the cell set")
        cc = self.class_counts()
        if cc[B0] + cc[B1] != cc[W0] + cc[W1]:
            raise ValueError("black/white cell counts are unbalanced")
        # parity of boundary sides of the pre-removal polyomino Q
        walk = trace_boundary(self.cells | {self.base_square})
        for (length, turn_in, turn_out) in side_descriptions(walk):
            same_type = (turn_in == turn_out)
            if same_type and length % 2 == 0:
                raise ValueError("side between same-type corners has even length")
            if not same_type and length % 2 == 1:
                raise ValueError("side between mixed corners has odd length")
        self.h_graph().validate()
        return True

    # -- serialization -------------------------------------------------------

    def to_ascii(self):
        cells = set(self.cells) | {self.base_square}
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        lines = [f"origin: {x0} {y0}"]
        for y in range(y1, y0 - 1, -1):
            row = []
            for x in range(x0, x1 + 1):
                if (x, y) == tuple(self.base_square):
                    row.append("X")
                elif (x, y) in self.cells:
                    row.append("#")
                else:
                    row.append(".")
            lines.append("".join(row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_ascii(text, scale=None):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        x0 = y0 = 0
        if lines and lines[0].startswith("origin:"):
            _, xs, ys = lines[0].split()
            x0, y0 = int(xs), int(ys)
            lines = lines[1:]
        cells = set()
        base = None
        height = len(lines)
        for r, ln in enumerate(lines):
            y = y0 + (height - 1 - r)
            for cidx, ch in enumerate(ln):
                x = x0 + cidx
                if ch == "#":
                    cells.add((x, y))
                elif ch == "X":
                    base = (x, y)
        if base is None:
            raise ValueError("ASCII region has no base square 'X'")
        p = TemperleyanPolyomino(frozenset(cells), base, scale)
        p.validate()
        return p


# ---------------------------------------------------------------------------
# boundary tracing of a cell union
# ---------------------------------------------------------------------------

def boundary_edges(cells):
    """Directed boundary edges (doubled corner coords), region on the left."""
    cells = set(cells)
    out = []
    for (i, j) in cells:
        if (i, j - 1) not in cells:
            out.append(((2 * i - 1, 2 * j - 1), (2 * i + 1, 2 * j - 1)))
        if (i + 1, j) not in cells:
            out.append(((2 * i + 1, 2 * j - 1), (2 * i + 1, 2 * j + 1)))
        if (i, j + 1) not in cells:
            out.append(((2 * i + 1, 2 * j + 1), (2 * i - 1, 2 * j + 1)))
        if (i - 1, j) not in cells:
            out.append(((2 * i - 1, 2 * j + 1), (2 * i - 1, 2 * j - 1)))
    return out


def trace_boundary(cells):
    """Counterclockwise corner walk of the outer boundary.

    Returns a list of (corner_point, turn) where turn is +1 at a convex
    corner, -1 at a concave corner, 0 along a straight stretch, visiting
    each boundary lattice point once in ccw order.
    """
    edges = boundary_edges(cells)
    nxt = {}
    for a, b in edges:
        nxt.setdefault(a, []).append(b)
    start = min(a for a, _ in edges)
    walk = []
    prev_dir = None
    cur = start
    seen = 0
    total = len(edges)
    while True:
        outs = nxt[cur]
        if len(outs) == 1:
            dest = outs[0]
        else:
            # boundary touches itself at this corner; take the leftmost turn
            dx, dy = prev_dir
            best = None
            for cand in outs:
                cdx, cdy = cand[0] - cur[0], cand[1] - cur[1]
                cross = dx * cdy - dy * cdx
                key = (cross, -(dx * cdx + dy * cdy))
                if best is None or key > best[0]:
                    best = (key, cand)
            dest = best[1]
        d = (dest[0] - cur[0], dest[1] - cur[1])
        if prev_dir is None:
            turn = 0
        else:
            cross = prev_dir[0] * d[1] - prev_dir[1] * d[0]
            turn = 1 if cross > 0 else (-1 if cross < 0 else 0)
        walk.append((cur, turn))
        nxt[cur].remove(dest)
        cur, prev_dir = dest, d
        seen += 1
        if cur == start and not nxt[start]:
            break
        if seen > total:
            raise NotSimplyConnected("boundary of cell union is not a single cycle")
    if seen != total:
        raise NotSimplyConnected("cell union has more than one boundary cycle")
    # fix the turn at the start corner (computed against the closing edge)
    d_in = (start[0] - walk[-1][0][0], start[1] - walk[-1][0][1])
    d_out = (walk[1][0][0] - start[0], walk[1][0][1] - start[1]) if len(walk) > 1 else d_in
    cross = d_in[0] * d_out[1] - d_in[1] * d_out[0]
    walk[0] = (start, 1 if cross > 0 else (-1 if cross < 0 else 0))
    return walk


def side_descriptions(walk):
    """Sides of a traced boundary: (length_in_unit_edges, turn_at_start, turn_at_end)."""
    corners = [k for k, (_, t) in enumerate(walk) if t != 0]
    n = len(walk)
    out = []
    for a, b in zip(corners, corners[1:] + [corners[0] + n]):
        # unit edges have length 2 in doubled coordinates
        out.append(((b - a), walk[a % n][1], walk[b % n][1]))
    return out


# ---------------------------------------------------------------------------
# RectilinearPolygon
# ---------------------------------------------------------------------------

def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


@dataclass
class RectilinearPolygon:
    """Axis-aligned simple polygon given by its cyclic corner list (ccw) and a
    boundary base point."""

    corners: list
    base_point: tuple
    _sides: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.corners = [(_frac(x), _frac(y)) for x, y in self.corners]
        self.base_point = (_frac(self.base_point[0]), _frac(self.base_point[1]))
        n = len(self.corners)
        if n < 4 or n % 2:
            raise ValueError("rectilinear polygon needs an even corner count >= 4")
        for k in range(n):
            a, b = self.corners[k], self.corners[(k + 1) % n]
            if (a[0] == b[0]) == (a[1] == b[1]):
                raise ValueError("polygon sides must alternate horizontal/vertical")
        if self.signed_area() < 0:
            self.corners.reverse()
        self._sides = [(self.corners[k], self.corners[(k + 1) % n]) for k in range(n)]
        if self._locate(self.base_point) is None:
            raise PointNotOnBoundary("base point is not on the polygon boundary")

    @property
    def vertex_count(self):
        return len(self.corners)

    def signed_area(self):
        s = Fraction(0)
        n = len(self.corners)
        for k in range(n):
            (x1, y1), (x2, y2) = self.corners[k], self.corners[(k + 1) % n]
            s += x1 * y2 - x2 * y1
        return s / 2

    def corner_turns(self):
        """+1 at convex (left) corners, -1 at concave, in ccw order."""
        out = []
        n = len(self.corners)
        for k in range(n):
            a = self.corners[k - 1]
            b = self.corners[k]
            c = self.corners[(k + 1) % n]
            d1 = (b[0] - a[0], b[1] - a[1])
            d2 = (c[0] - b[0], c[1] - b[1])
            cross = d1[0] * d2[1] - d1[1] * d2[0]
            out.append(1 if cross > 0 else -1)
        return out

    def min_side_length(self):
        return min(abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in self._sides)

    def total_turning(self):
        return sum(self.corner_turns()) * pi / 2

    def _locate(self, p):
        """(side index, offset along side) for a boundary point, else None."""
        px, py = _frac(p[0]), _frac(p[1])
        for k, (a, b) in enumerate(self._sides):
            if a[0] == b[0] and px == a[0]:
                lo, hi = min(a[1], b[1]), max(a[1], b[1])
                if lo <= py <= hi:
                    return (k, abs(py - a[1]))
            if a[1] == b[1] and py == a[1]:
                lo, hi = min(a[0], b[0]), max(a[0], b[0])
                if lo <= px <= hi:
                    return (k, abs(px - a[0]))
        return None

    def contains(self, p):
        """Closed-region point test by exact ray casting."""
        if self._locate(p) is not None:
            return True
        px, py = _frac(p[0]), _frac(p[1])
        crossings = 0
        for (a, b) in self._sides:
            if a[0] == b[0]:  # vertical side
                lo, hi = min(a[1], b[1]), max(a[1], b[1])
                if a[0] > px and lo < py <= hi:
                    crossings += 1
        return crossings % 2 == 1

    def to_json(self):
        return json.dumps({
            "corners": [[str(x), str(y)] for x, y in self.corners],
            "base_point": [str(self.base_point[0]), str(self.base_point[1])],
        }, indent=2)

    @staticmethod
    def from_json(text):
        d = json.loads(text)
        corners = [(Fraction(x), Fraction(y)) for x, y in d["corners"]]
        bp = (Fraction(d["base_point"][0]), Fraction(d["base_point"][1]))
        return RectilinearPolygon(corners, bp)

    @staticmethod
    def rectangle(alpha, beta, base_point=None):
        a, b = _frac(alpha), _frac(beta)
        return RectilinearPolygon(
            [(0, 0), (a, 0), (a, b), (0, b)],
            base_point if base_point is not None else (0, 0))


def boundary_turning(u: RectilinearPolygon, x) -> float:
    """Cumulative turning (radians) of the boundary tangent from the base
    point counterclockwise to x; x must lie on the boundary off the corners."""
    loc = u._locate(x)
    if loc is None:
        raise PointNotOnBoundary(f"{x} is not on the polygon boundary")
    if tuple(map(_frac, x)) in set(u.corners):
        raise PointNotOnBoundary("turning is ambiguous at a corner")
    base = u._locate(u.base_point)
    turns = u.corner_turns()
    n = len(u.corners)
    k, off = base
    kx, offx = loc
    total = 0
    if kx == k and offx >= off:
        return 0.0
    side = k
    while True:
        side = (side + 1) % n
        total += turns[side]          # corner entered at the start of `side`
        if side == kx:
            return total * pi / 2


# ---------------------------------------------------------------------------
# construction operations
# ---------------------------------------------------------------------------

def temperleyan_from_subgraph(h: GridSubgraph) -> TemperleyanPolyomino:
    """Superpose H with its dual: one cell per vertex (except the base), edge
    and interior face of H."""
    h.validate()
    cells = set()
    for v in h.vertices:
        if v != tuple(h.base_vertex):
            cells.add(v)
    for e in h.edges:
        (x1, y1), (x2, y2) = sorted(e)
        cells.add(((x1 + x2) // 2, (y1 + y2) // 2))
    for (x, y) in h.faces():
        cells.add((x + 1, y + 1))
    p = TemperleyanPolyomino(frozenset(cells), tuple(h.base_vertex))
    # Euler audit: one cell per vertex (base dropped), edge, and bounded face
    assert p.area == len(h.vertices) - 1 + len(h.edges) + len(h.faces())
    if h.is_disk():
        # area/perimeter identities hold in the disk case
        n_v = len(h.vertices)
        n_b = len(h.boundary_vertices())
        assert p.area == 4 * n_v - n_b - 4, "area identity 4N - B - 4 failed"
        if len(h.neighbors(h.base_vertex)) == 2:   # base at a convex corner
            assert p.perimeter() == 2 * n_b + 4, "perimeter identity 2B + 4 failed"
    return p


def approximate_polygon(u: RectilinearPolygon, eps) -> TemperleyanPolyomino:
    """Temperleyan polyomino in the eps-lattice approximating u, corners within
    2*eps of the corners of u and base square within 2*eps of the base point."""
    eps = _frac(eps)
    if u.min_side_length() <= 4 * eps:
        raise EpsTooLarge(f"a side of the polygon is <= 4*eps = {4 * eps}")
    scaled = RectilinearPolygon(
        [(x / eps, y / eps) for x, y in u.corners],
        (u.base_point[0] / eps, u.base_point[1] / eps))
    xs = [c[0] for c in scaled.corners]
    ys = [c[1] for c in scaled.corners]

    def even_range(lo, hi):
        import math
        out = []
        v = 2 * math.ceil(Fraction(lo) / 2)
        while v <= hi:
            out.append(v)
            v += 2
        return out

    vs = []
    for x in even_range(min(xs), max(xs)):
        for y in even_range(min(ys), max(ys)):
            if scaled.contains((x, y)):
                vs.append((int(x), int(y)))
    vset = set(vs)
    edges = []
    for (x, y) in vs:
        for (nx, ny) in ((x + 2, y), (x, y + 2)):
            if (nx, ny) in vset and scaled.contains((x + (nx - x) // 2, y + (ny - y) // 2)):
                edges.append(((x, y), (nx, ny)))
    # drop structure not supported by complete faces
    faceset = set()
    eset = set(frozenset(e) for e in edges)
    for (x, y) in vs:
        corners = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)]
        if all(c in vset for c in corners) and all(
                frozenset((corners[k], corners[(k + 1) % 4])) in eset for k in range(4)):
            faceset.add((x, y))
    keep_e = set()
    keep_v = set()
    for (x, y) in faceset:
        c = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)]
        keep_v.update(c)
        for k in range(4):
            keep_e.add(frozenset((c[k], c[(k + 1) % 4])))
    if not keep_v:
        raise EpsTooLarge("no complete lattice face fits inside the polygon")
    bx, by = scaled.base_point
    boundary = GridSubgraph(frozenset(keep_v), frozenset(keep_e), min(keep_v)).boundary_vertices()
    base = min(boundary, key=lambda v: ((v[0] - bx) ** 2 + (v[1] - by) ** 2, v))
    h = GridSubgraph(frozenset(keep_v), frozenset(keep_e), base)
    h.validate()
    p = temperleyan_from_subgraph(h)
    p = TemperleyanPolyomino(p.cells, p.base_square, scale=eps)
    walk = trace_boundary(p.cells | {p.base_square})
    n_corners = sum(1 for _, t in walk if t != 0)
    if n_corners != u.vertex_count:
        raise EpsTooLarge("approximation has a different corner count than the polygon")
    return p
