# The exact rectangle formulas and their eta-function asymptotics
#
# The number of spanning trees of an m x n grid is an eigenvalue product; its
# log expands as
#   4 G m n / pi + (m+n) log(sqrt(2)-1) - (1/2) log m
#       + log eta(e^{-2 pi n/m}) + (5/4) log 2 + O(1/(mn)),
# with G Catalan's constant and eta the Dedekind eta function of the nome.
# The remainder coefficient is tiny (about -0.03 for squares).

import mpmath as mp

from temperlab import (RectangleSpec, catalan_constant, dedekind_eta,
                       rectangle_log_trees, rectform_expansion)

# %% constants
g = catalan_constant(128)
print("Catalan G =", mp.nstr(g, 25))
print("entropy per site 4G/pi =", mp.nstr(4 * g / mp.pi, 12))
print("perimeter coefficient G/(2 pi) + log(sqrt2 - 1)/4 =",
      mp.nstr(g / (2 * mp.pi) + mp.log(mp.sqrt(2) - 1) / 4, 12))
print("eta(e^-2pi) =", mp.nstr(dedekind_eta(mp.e ** (-2 * mp.pi), 128), 15))

# %% residuals scale like 1/(mn)
print("\n   m    n     log#trees        residual    residual*mn")
for (m, n) in [(8, 8), (16, 16), (32, 32), (64, 64), (16, 32), (32, 64), (16, 64)]:
    lt = rectangle_log_trees(RectangleSpec(m, n), 128)
    ex = rectform_expansion(RectangleSpec(m, n), 128)
    r = float(lt - ex)
    print(f"{m:4d} {n:4d} {float(lt):14.4f} {r:15.3e} {r * m * n:12.4f}")

# %% the expansion is exactly symmetric in m and n (eta modular relation)
a = rectform_expansion(RectangleSpec(24, 48), 160)
b = rectform_expansion(RectangleSpec(48, 24), 160)
print("\nsymmetry check |expansion(24,48) - expansion(48,24)| =",
      mp.nstr(abs(a - b), 3))
