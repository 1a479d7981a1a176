"""Uniform spanning trees, loop-erased random walks, the two-hole bijection
check, and the growth-exponent experiments.

Sampling is reproducible: all randomness flows from counter-based Philox
streams keyed by (seed, experiment indices), and the heavy walks run in a
numba kernel fed by pre-generated direction chunks.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .region import GridSubgraph, TemperleyanPolyomino, cell_class, is_black, B0
from .kasteleyn import (HoleSpec, build_kasteleyn, count_tilings_exact,
                        kasteleyn_with_holes)


class Disconnected(Exception):
    pass


class VertexMissing(Exception):
    pass


class InsufficientSamples(Exception):
    pass


class HoleColorMismatch(Exception):
    pass


class BNotOnBoundary(Exception):
    pass


# ---------------------------------------------------------------------------
# Wilson sampling on small graphs
# ---------------------------------------------------------------------------

@dataclass
class TreeSample:
    parent: dict
    root: object
    seed: int


@dataclass
class LerwPath:
    vertices: list

    def __len__(self):
        return len(self.vertices)


def _adjacency(graph):
    if isinstance(graph, GridSubgraph):
        return {v: sorted(graph.neighbors(v)) for v in sorted(graph.vertices)}
    return {v: sorted(ns) for v, ns in graph.items()}


def sample_ust(graph, root, seed) -> TreeSample:
    """Uniform spanning tree by Wilson's cycle-popping walk, rooted at `root`."""
    adj = _adjacency(graph)
    root = tuple(root) if isinstance(root, (list, tuple)) else root
    if root not in adj:
        raise VertexMissing(f"root {root} not in graph")
    rng = random.Random(seed)
    parent = {root: None}
    for start in sorted(adj):
        if start in parent:
            continue
        nxt = {}
        u = start
        while u not in parent:
            nxt[u] = rng.choice(adj[u])
            u = nxt[u]
        u = start
        while u not in parent:
            parent[u] = nxt[u]
            u = nxt[u]
    if len(parent) != len(adj):
        raise Disconnected("graph is disconnected")
    return TreeSample(parent, root, seed)


def loop_erase(walk) -> LerwPath:
    """Chronological loop erasure: each revisit truncates back to the first
    occurrence."""
    out = []
    pos = {}
    for v in walk:
        v = tuple(v) if isinstance(v, (list, tuple)) else v
        if v in pos:
            for w in out[pos[v] + 1:]:
                del pos[w]
            del out[pos[v] + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return LerwPath(out)


def branch(tree: TreeSample, v) -> LerwPath:
    """Path from v to the root along parent links."""
    v = tuple(v) if isinstance(v, (list, tuple)) else v
    if v not in tree.parent:
        raise VertexMissing(f"{v} not in tree")
    out = [v]
    while tree.parent[out[-1]] is not None:
        out.append(tree.parent[out[-1]])
    return LerwPath(out)


def lerw_between(graph, a, b, seed) -> LerwPath:
    """Direct loop-erased random walk from a to b."""
    adj = _adjacency(graph)
    rng = random.Random(seed)
    walk = [a]
    u = a
    while u != b:
        u = rng.choice(adj[u])
        walk.append(u)
    return loop_erase(walk)


# ---------------------------------------------------------------------------
# two-hole bijection check
# ---------------------------------------------------------------------------

def spanning_trees_of(h: GridSubgraph):
    """All spanning trees as edge frozensets (combinations filter; fine for
    the small fixtures this check runs on)."""
    vs = sorted(h.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    edges = [tuple(sorted(e)) for e in h.edges]
    out = []
    for combo in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for (a, b) in combo:
            ra, rb = find(idx[a]), find(idx[b])
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            out.append(frozenset(frozenset(e) for e in combo))
    return out


def _tree_branch_through(tree_edges, root, start, target_edge):
    adj = {}
    for e in tree_edges:
        a, b = tuple(e)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    # orient towards root by BFS
    parent = {root: None}
    queue = [root]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    u = start
    while parent[u] is not None:
        if frozenset((u, parent[u])) == target_edge:
            return True
        u = parent[u]
    return False


def two_hole_bijection_check(p: TemperleyanPolyomino, b, w):
    """(tilings_Q, trees_through_w, equal): tilings of p minus {b, w} against
    spanning trees of H whose branch from b to the base traverses the edge w."""
    b, w = tuple(b), tuple(w)
    if cell_class(b) != B0:
        raise HoleColorMismatch("b must be a B0 cell")
    if is_black(w):
        raise HoleColorMismatch("w must be a white cell")
    cells = set(p.cells)
    x, y = b
    if all((x + d[0], y + d[1]) in cells or (x + d[0], y + d[1]) == p.base_square
           for d in ((1, 0), (-1, 0), (0, 1), (0, -1))):
        raise BNotOnBoundary("the bijection needs b on the boundary of p")
    tilings_q = count_tilings_exact(kasteleyn_with_holes(p, HoleSpec(b, w)))
    h = p.h_graph()
    wx, wy = w
    if cell_class(w) == "W0":
        target = frozenset(((wx - 1, wy), (wx + 1, wy)))
    else:
        target = frozenset(((wx, wy - 1), (wx, wy + 1)))
    root = tuple(p.base_square)
    count = 0
    for t in spanning_trees_of(h):
        if _tree_branch_through(t, root, b, target):
            count += 1
    return tilings_q, count, tilings_q == count


# ---------------------------------------------------------------------------
# numba LERW kernel
# ---------------------------------------------------------------------------

_CHUNK = 1 << 19
_MODE_BOX = 0      # all four sides wired
_MODE_HALF = 1     # left edge free, other sides wired


def _philox(seed, tag, a=0, b=0):
    """Counter-based generator keyed by (seed, experiment, indices)."""
    word = (tag << 48) ^ (a << 24) ^ b
    return np.random.Generator(np.random.Philox(key=[seed & (2 ** 64 - 1), word]))


@njit(cache=True)
def _lerw_steps(dirs, W, H, mode, posidx, path_x, path_y, plen, x, y):
    """Advance the loop-erased walk by one direction chunk.

    Returns (done, plen, x, y).  `posidx` holds 1 + path position per vertex.
    """
    for t in range(dirs.shape[0]):
        d = dirs[t]
        nx, ny = x, y
        if d == 0:
            nx = x + 1
        elif d == 1:
            nx = x - 1
        elif d == 2:
            ny = y + 1
        else:
            ny = y - 1
        if nx < 0:
            if mode == 1:
                continue            # free edge: conditionally uniform redraw
            nx = 0                  # unreachable for box mode (wired earlier)
        k = posidx[ny * W + nx]
        if k > 0:
            for i in range(k, plen):
                posidx[path_y[i] * W + path_x[i]] = 0
            plen = k
            x, y = nx, ny
        else:
            path_x[plen] = nx
            path_y[plen] = ny
            posidx[ny * W + nx] = plen + 1
            plen += 1
            x, y = nx, ny
            if mode == 0:
                if nx == 0 or nx == W - 1 or ny == 0 or ny == H - 1:
                    return True, plen, x, y
            else:
                if nx == W - 1 or ny == 0 or ny == H - 1:
                    return True, plen, x, y
    return False, plen, x, y


def _run_lerw(W, H, sx, sy, mode, rng, posidx, path_x, path_y):
    posidx[:] = 0
    path_x[0] = sx
    path_y[0] = sy
    posidx[sy * W + sx] = 1
    plen, x, y = 1, sx, sy
    while True:
        dirs = rng.integers(0, 4, size=_CHUNK, dtype=np.uint8)
        done, plen, x, y = _lerw_steps(dirs, W, H, mode, posidx, path_x, path_y,
                                       plen, x, y)
        if done:
            return plen


# ---------------------------------------------------------------------------
# growth exponent
# ---------------------------------------------------------------------------

@dataclass
class ExponentFit:
    sizes: list
    means: list
    exponent: float
    std_error: float
    seed: int
    samples_per_size: int
    counts: dict = field(default_factory=dict, repr=False)


def _fit_loglog(sizes, means):
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(means, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def growth_exponent(sizes, samples_per_size, seed, box_factor=4) -> ExponentFit:
    """Mean number of branch vertices within Euclidean distance N of the
    source (center of a box of side box_factor*N, wired outer boundary as the
    root proxy), fitted as N^exponent by log-log least squares with a
    bootstrap standard error."""
    sizes = sorted(int(n) for n in sizes)
    if len(sizes) < 4:
        raise InsufficientSamples("need at least 4 sizes")
    if samples_per_size < 2:
        raise InsufficientSamples("need at least 2 samples per size")
    counts = {}
    for si, n in enumerate(sizes):
        L = box_factor * n
        W = Hh = L + 1
        sx = sy = L // 2
        posidx = np.zeros(W * Hh, dtype=np.int64)
        path_x = np.empty(W * Hh, dtype=np.int64)
        path_y = np.empty(W * Hh, dtype=np.int64)
        n2 = n * n
        vals = np.empty(samples_per_size, dtype=np.int64)
        for s in range(samples_per_size):
            rng = _philox(seed, 101, si, s)
            plen = _run_lerw(W, Hh, sx, sy, _MODE_BOX, rng, posidx, path_x, path_y)
            dx = path_x[:plen] - sx
            dy = path_y[:plen] - sy
            vals[s] = int(np.count_nonzero(dx * dx + dy * dy <= n2))
        counts[n] = vals
    means = [float(counts[n].mean()) for n in sizes]
    exponent = _fit_loglog(sizes, means)
    boot = _philox(seed, 202)
    bs = []
    for _ in range(200):
        bm = [float(boot.choice(counts[n], size=len(counts[n])).mean()) for n in sizes]
        bs.append(_fit_loglog(sizes, bm))
    return ExponentFit(sizes, means, exponent, float(np.std(bs)), seed,
                       samples_per_size, counts)


# ---------------------------------------------------------------------------
# angular profile on a half-plane box
# ---------------------------------------------------------------------------

@dataclass
class ProfileReport:
    n: int
    samples: int
    r_edges: np.ndarray
    theta_edges: np.ndarray
    density: np.ndarray        # hits per site per sample, (r_bin, theta_bin)
    radial_slope: float
    angular_ratio: dict        # theta bin center -> measured / cos^(1/4)
    seed: int


def angular_profile(n, samples, bins=9, seed=0) -> ProfileReport:
    """Hit frequencies of the branch from the left-edge midpoint of a
    half-plane-style box, binned in (r, theta)."""
    if samples < 10:
        raise InsufficientSamples("need at least 10 samples")
    W = 2 * n + 1
    Hh = 2 * n + 1
    sx, sy = 0, n
    posidx = np.zeros(W * Hh, dtype=np.int64)
    path_x = np.empty(W * Hh, dtype=np.int64)
    path_y = np.empty(W * Hh, dtype=np.int64)
    hits = np.zeros((Hh, W), dtype=np.int64)
    for s in range(samples):
        rng = _philox(seed, 303, 0, s)
        plen = _run_lerw(W, Hh, sx, sy, _MODE_HALF, rng, posidx, path_x, path_y)
        hits[path_y[:plen], path_x[:plen]] += 1
    X, Y = np.meshgrid(np.arange(W) - sx, np.arange(Hh) - sy)
    R = np.hypot(X, Y)
    TH = np.arctan2(Y, np.maximum(X, 1e-12))
    r_edges = np.geomspace(4, n, bins + 1)
    th_edges = np.linspace(-math.pi / 2, math.pi / 2, bins + 1)
    density = np.zeros((bins, bins))
    for i in range(bins):
        for j in range(bins):
            sel = ((R >= r_edges[i]) & (R < r_edges[i + 1])
                   & (TH >= th_edges[j]) & (TH < th_edges[j + 1]) & (X > 0))
            nsites = int(sel.sum())
            if nsites:
                density[i, j] = hits[sel].sum() / (nsites * samples)
    # radial slope near theta = 0 over r in [8, n/4]
    mid = (np.abs(TH) < math.pi / 8) & (X > 0)
    r_lo, r_hi = 8.0, n / 4.0
    redges = np.geomspace(r_lo, r_hi, 7)
    xs, ys = [], []
    for i in range(len(redges) - 1):
        sel = mid & (R >= redges[i]) & (R < redges[i + 1])
        nsites = int(sel.sum())
        if nsites:
            dens = hits[sel].sum() / (nsites * samples)
            if dens > 0:
                xs.append(math.log(math.sqrt(redges[i] * redges[i + 1])))
                ys.append(math.log(dens))
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    # angular shape at the r band [n/8, n/4]
    band = (R >= n / 8) & (R < n / 4) & (X > 0)
    th_centers = 0.5 * (th_edges[:-1] + th_edges[1:])
    ratios = {}
    base = None
    for j in range(bins):
        sel = band & (TH >= th_edges[j]) & (TH < th_edges[j + 1])
        nsites = int(sel.sum())
        if not nsites:
            continue
        dens = hits[sel].sum() / (nsites * samples)
        if abs(th_centers[j]) == min(abs(th_centers)):
            base = dens
        ratios[float(th_centers[j])] = dens
    if base:
        for k in list(ratios):
            ratios[k] = ratios[k] / base / max(math.cos(k), 1e-9) ** 0.25
    return ProfileReport(n, samples, r_edges, th_edges, density,
                         float(slope), ratios, seed)


# ---------------------------------------------------------------------------
# determinant ratio experiment
# ---------------------------------------------------------------------------

@dataclass
class RatioFit:
    rows: list                 # (eps, alpha, beta, log_ratio)
    eps_slope: float           # coefficient of log(1/eps)
    alpha_coef: float
    r2_coef: float             # coefficient of log(alpha^2 + beta^2)


def _ratio_polyomino(eps):
    """Temperleyan square on [0,1] x [-1/2, 1/2] with base mid right edge."""
    from fractions import Fraction
    from .region import RectilinearPolygon, approximate_polygon
    eps = Fraction(eps)
    half = Fraction(1, 2)
    u = RectilinearPolygon([(0, -half), (1, -half), (1, half), (0, half)],
                           base_point=(1, 0))
    return approximate_polygon(u, eps)


def two_hole_log_ratio(p: TemperleyanPolyomino, alpha, beta, log_np=None):
    """log(N(Q)/N(P)) with the white hole on the axis at distance alpha from
    the left edge and the black hole on the left edge at height beta."""
    from .kasteleyn import log_count_tilings
    eps = p.scale
    cells = set(p.cells)
    xw = round(float(alpha / eps))
    if xw % 2 == 0:
        xw += 1
    w = (xw, 0)
    yb = round(float(beta / eps))
    if yb % 2:
        yb += 1
    bcell = (0, yb)
    if w not in cells or bcell not in cells:
        raise VertexMissing("hole positions fall outside the region")
    if log_np is None:
        log_np = log_count_tilings(build_kasteleyn(p))
    log_nq = log_count_tilings(kasteleyn_with_holes(p, HoleSpec(bcell, w)))
    return log_nq - log_np


def ratio_experiment(alphas, betas, eps_list) -> RatioFit:
    """Exact count ratios regressed against log(1/eps), log alpha and
    log(alpha^2 + beta^2)."""
    from .kasteleyn import log_count_tilings
    rows = []
    for eps in eps_list:
        p = _ratio_polyomino(eps)
        log_np = log_count_tilings(build_kasteleyn(p))
        for a in alphas:
            for b in betas:
                lr = two_hole_log_ratio(p, a, b, log_np)
                rows.append((float(eps), float(a), float(b), float(lr)))
    x = np.array([[math.log(1 / r[0]), math.log(r[1]),
                   math.log(r[1] ** 2 + r[2] ** 2), 1.0] for r in rows])
    y = np.array([r[3] for r in rows])
    coef, *_ = np.linalg.lstsq(x, y, rcond=None)
    return RatioFit(rows, float(coef[0]), float(coef[1]), float(coef[2]))
