# Temperleyan polyominoes and the tree/tiling bijection
#
# A grid subgraph H (vertices on the even sublattice) superposed with its
# planar dual gives a polyomino P(H) with one corner cell removed.  Domino
# tilings of P(H) are in bijection with spanning trees of H, so a Kasteleyn
# determinant and a reduced-Laplacian determinant must agree exactly.

from temperlab import (GridSubgraph, temperleyan_from_subgraph,
                       build_kasteleyn, count_tilings_exact,
                       enumerate_tilings, spanning_tree_count,
                       verify_temperley)

# %% the smallest cases, drawn as ASCII art
for m, n in [(2, 2), (2, 3), (3, 3)]:
    h = GridSubgraph.rectangle(m, n)
    p = temperleyan_from_subgraph(h)
    print(f"{m}x{n} grid graph -> {2*m-1}x{2*n-1} cells minus one corner")
    print(p.to_ascii())

# %% counting three ways: enumeration, Kasteleyn determinant, matrix-tree
for m, n in [(2, 2), (2, 3), (3, 3), (3, 4)]:
    h = GridSubgraph.rectangle(m, n)
    p = temperleyan_from_subgraph(h)
    by_enum = len(enumerate_tilings(p))
    by_det = count_tilings_exact(build_kasteleyn(p))
    by_trees = spanning_tree_count(h)
    print(f"{m}x{n}: enumeration={by_enum}  |det K|={by_det}  trees={by_trees}")

# %% the bijection holds for irregular regions too
vs = [(0, 0), (2, 0), (4, 0), (0, 2), (2, 2), (4, 2), (0, 4), (2, 4)]
h = GridSubgraph.from_vertices(vs, (4, 0))
trees, tilings, equal = verify_temperley(h)
print(f"\nL-shaped region: trees={trees} tilings={tilings} equal={equal}")

# %% and even for degenerate regions with no faces at all
path = GridSubgraph.from_edges([((0, 0), (2, 0)), ((2, 0), (4, 0))], (0, 0))
print("path graph:", verify_temperley(path))

# %% a big rectangle: the 8x8 checkerboard of dominoes
cells = [(x, y) for x in range(8) for y in range(8)]
print("\n8x8 square tilings:", count_tilings_exact(build_kasteleyn(cells)))
