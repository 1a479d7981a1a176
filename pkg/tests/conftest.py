import random

import pytest

from temperlab.region import GridSubgraph


def l_shaped_subgraph(base=(4, 0)):
    """L-shaped grid subgraph: a 3x2 block with a 2x1 block on top."""
    vs = [(0, 0), (2, 0), (4, 0), (0, 2), (2, 2), (4, 2), (0, 4), (2, 4)]
    return GridSubgraph.from_vertices(vs, base)


def random_subgraph(rng, max_cells=6):
    """Random simply-connected union of lattice squares grown from a seed
    square, returned as the induced grid subgraph."""
    faces = {(0, 0)}
    target = rng.randint(1, max_cells)
    while len(faces) < target:
        fx, fy = rng.choice(sorted(faces))
        d = rng.choice([(2, 0), (-2, 0), (0, 2), (0, -2)])
        cand = (fx + d[0], fy + d[1])
        trial = faces | {cand}
        if _hole_free(trial):
            faces = trial
    verts = set()
    for (x, y) in faces:
        verts.update([(x, y), (x + 2, y), (x, y + 2), (x + 2, y + 2)])
    g0 = GridSubgraph.from_vertices(verts, min(verts))
    base = rng.choice(g0.boundary_vertices())
    try:
        return GridSubgraph.from_vertices(verts, base)
    except Exception:
        return g0


def _hole_free(faces):
    # containment test: a face-set has a hole iff some vertex is surrounded
    # by cells but a 4-cycle of cells misses it; growing square-by-square
    # with this check keeps the union simply connected
    verts = set()
    for (x, y) in faces:
        verts.update([(x, y), (x + 2, y), (x, y + 2), (x + 2, y + 2)])
    edges = set()
    for (x, y) in faces:
        c = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)]
        for k in range(4):
            edges.add(frozenset((c[k], c[(k + 1) % 4])))
    return len(verts) - len(edges) + len(faces) == 1


@pytest.fixture
def rng():
    return random.Random(20240811)
