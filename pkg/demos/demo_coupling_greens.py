# Coupling functions, Green's function identities, and height statistics
#
# The inverse Kasteleyn matrix ("coupling function") carries all local
# statistics of a random tiling.  Its entries are differences of the discrete
# Green's function on H (for black cells on vertices) or on the dual of H
# (for black cells on faces) -- an identity that holds exactly in rational
# arithmetic, tested entry by entry here.

from fractions import Fraction

from temperlab import (GridSubgraph, temperleyan_from_subgraph,
                       build_kasteleyn, coupling_matrix, coupling_via_greens,
                       discrete_greens, dual_greens, local_probability,
                       enumerate_tilings, average_height, cell_class)

# %% exact inverse on the 5x5-minus-corner region
h = GridSubgraph.rectangle(3, 3)
p = temperleyan_from_subgraph(h)
k = build_kasteleyn(p)
c = coupling_matrix(k)          # verifies K C = I exactly on construction
g = discrete_greens(h)
gd = dual_greens(h)

mismatches = 0
for w in k.whites:
    for b in k.blacks:
        if coupling_via_greens(h, w, b, g, gd) != c.entries[(w, b)]:
            mismatches += 1
print(f"Green's identity: {k.n * k.n} entries, {mismatches} mismatches")
some = [(w, b) for w in k.whites[:2] for b in k.blacks[:3]]
for w, b in some:
    print(f"  C({w},{b}) = {c.entries[(w, b)]}   [{cell_class(w)} -> {cell_class(b)}]")

# %% single-domino probabilities are exact rationals that sum to one
cells = set(p.cells)
w0 = k.whites[0]
tot = Fraction(0)
for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
    b = (w0[0] + d[0], w0[1] + d[1])
    if b in cells:
        pr = local_probability(c, k, [(w0, b)])
        tot += pr
        print(f"P[domino {w0}-{b}] = {pr}")
print("sum over the white cell's dominoes =", tot)

# %% probabilities agree with brute-force enumeration frequencies
tilings = enumerate_tilings(p)
n = len(tilings)
for d in ((1, 0), (0, 1)):
    b = (w0[0] + d[0], w0[1] + d[1])
    if b in cells:
        freq = sum((w0, b) in t for t in tilings)
        print(f"enumeration frequency {freq}/{n} vs coupling "
              f"{local_probability(c, k, [(w0, b)])}")

# %% average height function: enumeration route == coupling route, exactly
ah_enum = average_height(p, method="enumerate")
ah_coup = average_height(p, method="coupling")
print("\naverage heights equal:", ah_enum == ah_coup)
row = sorted(q for q in ah_enum if q[1] == 1)
print("heights along one row:", [str(ah_enum[q]) for q in row])
