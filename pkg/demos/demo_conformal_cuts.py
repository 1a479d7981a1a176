# Limiting coupling functions, conformal transport, and cut energetics
#
# The rescaled coupling functions converge to a pair F+, F- transforming as
# meromorphic / antimeromorphic 1-forms.  Closed forms on model domains
# transport through explicit maps; the Schwarzian derivative of sqrt(f) at a
# cut tip controls the per-step change of both the tiling count and the
# Dirichlet energy.

import cmath
import math

from temperlab import (ModelDomainMap, f_plus, f_minus, transport,
                       limiting_height, JetCoefficients, schwarzian_sqrt,
                       pq_jet, pq_from_jet, fpq_flow, fpq_energy_delta,
                       fpq_cut_energy_rate, schwarzian_pq, cut_step_rate,
                       lemma_cut_constant, elbow_jet, two_hole_coupling,
                       TwoHoleSpec, lerw_ratio_law)

PI = math.pi
RHP = ModelDomainMap("rhp")

# %% model-domain values and transport
print("plane F+(0,1) =", f_plus(ModelDomainMap("plane"), 0j, 1 + 0j), "= 2/pi")
print("slit  F+(1,4) =", f_plus(ModelDomainMap("slit_plane"), 1 + 0j, 4 + 0j), "= 1/pi")

f = lambda z: (1 + z) / (1 - z)          # disk -> half plane, base 1 -> infinity
fp = lambda z: 2 / (1 - z) ** 2
plus, minus = transport(f, fp, lambda v, z: f_plus(RHP, v, z),
                        lambda v, z: f_minus(RHP, v, z))
v, z = 0.2 + 0.1j, -0.4 + 0.3j
print("disk via transport:", plus(v, z))
print("disk closed form:  ", f_plus(ModelDomainMap("unit_disk"), v, z))

# %% limiting average height on the disk (path independent)
dk = ModelDomainMap("unit_disk")
h = limiting_height(dk, 0.5j, [0j, 0.5j])
print("\ndisk height at i/2:", h, " closed form:",
      (4 / PI) * cmath.log(1 - 0.5j).imag)

# %% jets at a cut tip and the two-parameter family
jet = JetCoefficients(1j, 1.0)
print("\nS sqrt(f)(0) for b=i, c=1:", schwarzian_sqrt(jet), "= 3c - (9/4) b^2")
p, q = pq_from_jet(jet)
print("matching family parameters p, q =", p, q)
print("round-trip jet:", pq_jet(p, q))

# %% the energy flow: extending a cut by 2 eps changes the normalized energy
# at the rate (5p+7q)(p-q)/(2 pi p^2 q^2), which is (8/pi) times the
# Schwarzian -- checked here by finite differences
p, q = 2j, -1.3j
dp_dfp, dq_dfp = fpq_flow(p, q)
rate = fpq_cut_energy_rate(p, q)
sig = 1e-6
ep = fpq_energy_delta(p + dp_dfp * -2 * sig, q + dq_dfp * -2 * sig, 0.5)
em = fpq_energy_delta(p - dp_dfp * -2 * sig, q - dq_dfp * -2 * sig, 0.5)
print(f"\nclosed-form rate {rate:.8f}  finite difference {(ep - em) / (2 * sig):.8f}")
print(f"(pi/8) * rate = {PI / 8 * rate:.8f} = S sqrt(f) = {schwarzian_pq(p, q):.8f}")

# %% cut boundary constants: start/end, edge/corner
print("\nkind          per-step rate at j=10    -(pi/48)-scaled constant")
for kind in ("edge_start", "corner_start", "edge_end", "corner_end"):
    s = schwarzian_sqrt(elbow_jet(kind, 10, 1e-3))
    print(f"{kind:13s} {cut_step_rate(kind, 10):.6f} "
          f"(= -(8 eps/pi) S = {-(8e-3 / PI) * s:.6f})   C = {lemma_cut_constant(kind)}")

# %% two-hole coupling functions: residue and boundary structure
spec = TwoHoleSpec("unit_disk", (cmath.exp(0.7j), cmath.exp(-2.0j)))
vv = 0.3 + 0.25j
zz = vv * (1 + 1e-6)
fpv, fmv = two_hole_coupling(spec, vv, zz)
print("\ndisk two-hole residue:", (zz - vv) * fpv, "= 2/pi")
zb = cmath.exp(2.2j)
fpb, fmb = two_hole_coupling(spec, vv, zb)
print("Im F0 on the circle:", ((fpb + fmb) / 2).imag)

# %% the ratio law that drives the 5/4 exponent
print("\nlog ratio law at alpha=0.4, beta=0.2:")
for eps in (1 / 16, 1 / 32, 1 / 64):
    print(f"  eps={eps:<10} {lerw_ratio_law(0.4, 0.2, eps):+.4f}")
