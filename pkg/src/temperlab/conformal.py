"""Closed-form limiting coupling functions on model domains, conformal
transport, jets and Schwarzian derivatives at a cut tip, the two-parameter
cut family f_{p,q} with its Dirichlet-energy flow, and two-hole formulas.

F_plus transforms as a meromorphic 1-form and F_minus as an antimeromorphic
1-form: for a conformal isomorphism f: V -> U fixing base points,

    F_plus^V(v, z)  = f'(v)        * F_plus^U(f(v), f(z))
    F_minus^V(v, z) = conj(f'(v))  * F_minus^U(f(v), f(z)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class PoleAt(Exception):
    pass


class BranchCutHit(Exception):
    pass


class PathThroughSingularity(Exception):
    pass


class ZeroB(Exception):
    pass


class DegenerateParameters(Exception):
    pass


PI = math.pi


def _ratio_sqrt(a, b):
    """sqrt(a/b) realized as exp((log a - log b)/2); equals 1 when a == b."""
    if a == b:
        return 1.0 + 0j
    return cmath.exp(0.5 * (cmath.log(a) - cmath.log(b)))


# ---------------------------------------------------------------------------
# model domains
# ---------------------------------------------------------------------------

@dataclass
class ModelDomainMap:
    """Domain tag plus parameters selecting one of the closed-form cases."""

    tag: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        known = {"plane", "rhp", "slit_plane", "unit_disk",
                 "f_pq", "elbow_edge", "elbow_corner",
                 "elbow_edge_end", "elbow_corner_end"}
        if self.tag not in known:
            raise ValueError(f"unknown domain tag {self.tag!r}")


def f_plus(domain: ModelDomainMap, v, z):
    """F_plus(v, z) on a model domain (the base point is at infinity for the
    plane, half-plane and slit plane, and at 1 for the unit disk)."""
    t = domain.tag
    if z == v:
        raise PoleAt(f"F_plus has its pole at z = v = {v}")
    if t == "plane":
        return 2.0 / (PI * (z - v))
    if t == "rhp":
        return 2.0 / (PI * (z - v))
    if t == "slit_plane":
        for w in (v, z):
            if w.imag == 0 and w.real <= 0:
                raise BranchCutHit(f"{w} lies on the slit")
        sv, sz = cmath.sqrt(v), cmath.sqrt(z)
        return 1.0 / (PI * sv * (sz - sv))
    if t == "unit_disk":
        return 2.0 * (1 - z) / (PI * (1 - v) * (z - v))
    return _image_domain_f(domain, v, z)[0]


def f_minus(domain: ModelDomainMap, v, z):
    t = domain.tag
    if t == "plane":
        return 0.0 + 0j
    if t == "rhp":
        return -2.0 / (PI * (z + v.conjugate()))
    if t == "slit_plane":
        for w in (v, z):
            if w.imag == 0 and w.real <= 0:
                raise BranchCutHit(f"{w} lies on the slit")
        vb = v.conjugate()
        return -1.0 / (PI * cmath.sqrt(vb) * (cmath.sqrt(z) + cmath.sqrt(vb)))
    if t == "unit_disk":
        vb = v.conjugate()
        return -(2.0 / PI) * (1 - z) / ((1 - vb) * (1 - z * vb))
    return _image_domain_f(domain, v, z)[1]


def transport(f, fprime, u_plus, u_minus):
    """Pull F back through a conformal isomorphism f: V -> U.

    Returns (plus, minus) callables on V.
    """

    def plus(v, z):
        return fprime(v) * u_plus(f(v), f(z))

    def minus(v, z):
        return fprime(v).conjugate() * u_minus(f(v), f(z))

    return plus, minus


# domains defined as images f(RHP): evaluate by inverting f with Newton

def _newton_inverse(fv, fpv, w, x0, tol=1e-13, maxit=80):
    x = complex(x0)
    for _ in range(maxit):
        dx = (fv(x) - w) / fpv(x)
        x -= dx
        if x.real <= 0:
            x = complex(1e-9, x.imag)   # stay inside the half-plane
        if abs(dx) < tol * max(1.0, abs(x)):
            return x
    raise ArithmeticError(f"Newton inversion failed for w={w}")


def _image_domain_f(domain: ModelDomainMap, v, z):
    fv, fpv = domain_map(domain)
    s_v = _newton_inverse(fv, fpv, v, x0=cmath.sqrt(v))
    s_z = _newton_inverse(fv, fpv, z, x0=cmath.sqrt(z))
    sp_v = 1.0 / fpv(s_v)
    plus = sp_v * 2.0 / (PI * (s_z - s_v))
    minus = sp_v.conjugate() * (-2.0) / (PI * (s_z + s_v.conjugate()))
    return plus, minus


def domain_map(domain: ModelDomainMap):
    """(f, f') for the map RHP -> domain, normalized f(z) = z^2 + O(z^3)."""
    t = domain.tag
    if t == "f_pq":
        p, q = domain.params["p"], domain.params["q"]
        return (lambda z: fpq_value(p, q, z)), (lambda z: fpq_prime(p, q, z))
    if t == "elbow_edge":
        q = domain.params["q"]
        return (lambda z: cmath.sqrt(2 * q * z * z + q * q) - q,
                lambda z: 2 * q * z / cmath.sqrt(2 * q * z * z + q * q))
    if t == "elbow_corner":
        q = domain.params["q"]
        c0 = 8 * q * q / 3.0

        def f(z):
            s = cmath.sqrt(z - q)
            return 2 * cmath.sqrt(-q) * (2.0 / 3.0 * s ** 3 + 2 * q * s) + c0

        def fp(z):
            return 2 * cmath.sqrt(-q) * z / cmath.sqrt(z - q)

        return f, fp
    if t == "elbow_edge_end":
        b2 = domain.params["B"] ** 2

        def f(z):
            return 2 * b2 - 2 * b2 ** 1.5 / cmath.sqrt(z * z + b2)

        def fp(z):
            return 2 * b2 ** 1.5 * z / (z * z + b2) ** 1.5

        return f, fp
    if t == "elbow_corner_end":
        # f = C - C'/(sqrt(z - iB)(z + 2iB)); f(0) = 0 and f = z^2 + O(z^3)
        # force C' = (8 B^2 / 3) * denom(0)
        B = domain.params["B"]
        iB = 1j * B

        def denom(z):
            return cmath.sqrt(z - iB) * (z + 2 * iB)

        d0 = denom(0)
        cp = 8.0 * B * B / 3.0 * d0

        def f(z):
            return cp * (1.0 / d0 - 1.0 / denom(z))

        def fp(z):
            s = cmath.sqrt(z - iB)
            dd = (z + 2 * iB) / (2 * s) + s  # d/dz denom
            return cp * dd / denom(z) ** 2

        return f, fp
    raise ValueError(f"domain {t!r} is not map-defined")


# ---------------------------------------------------------------------------
# limiting average height
# ---------------------------------------------------------------------------

def f_plus_star(domain: ModelDomainMap, z):
    """Diagonal regularization lim_{w->z} (F_plus(z, w) - 2/(pi (w - z)))."""
    t = domain.tag
    if t in ("plane", "rhp"):
        return 0.0 + 0j
    if t == "unit_disk":
        return -2.0 / (PI * (1 - z))
    if t == "slit_plane":
        if z.imag == 0 and z.real <= 0:
            raise BranchCutHit(f"{z} lies on the slit")
        return 1.0 / (2 * PI * z)
    raise ValueError(f"no closed diagonal form for domain {t!r}")


def _domain_singularities(domain: ModelDomainMap):
    if domain.tag == "unit_disk":
        return [1.0 + 0j]
    if domain.tag == "slit_plane":
        return [0.0 + 0j]
    return []


def limiting_height(domain: ModelDomainMap, v, path, v0=None) -> float:
    """h(v) = 2 Im int_{v0}^{v} F_plus_star(u) du along the given waypoints
    (the first entry is v0 unless v0 is passed separately)."""
    pts = [complex(p) for p in path]
    if v0 is not None:
        pts = [complex(v0)] + pts
    if pts[-1] != complex(v):
        pts.append(complex(v))
    sing = _domain_singularities(domain)
    total = 0.0 + 0j
    nodes, weights = np.polynomial.legendre.leggauss(64)
    for a, b in zip(pts, pts[1:]):
        for s in sing:
            # distance from segment ab to singularity
            ab = b - a
            tproj = 0.0 if ab == 0 else max(0.0, min(1.0, ((s - a) / ab).real))
            if abs(a + tproj * ab - s) < 1e-9:
                raise PathThroughSingularity(f"path passes through {s}")
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        acc = 0.0 + 0j
        for x, w in zip(nodes, weights):
            acc += w * f_plus_star(domain, mid + half * x)
        total += acc * half
    return 2.0 * total.imag


# ---------------------------------------------------------------------------
# jets and Schwarzians
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JetCoefficients:
    """Coefficients of f(z) = z^2 + b z^3 + c z^4 + O(z^5) for a map taking
    the imaginary axis to the real axis: b is purely imaginary, c real."""

    b: complex
    c: complex

    def __post_init__(self):
        scale = max(abs(self.b), abs(self.c), 1.0)
        if abs(self.b.real) > 1e-9 * scale:
            raise ValueError(f"jet coefficient b = {self.b} must be purely imaginary")
        if abs(self.c.imag) > 1e-9 * scale:
            raise ValueError(f"jet coefficient c = {self.c} must be real")


def schwarzian_sqrt(jet: JetCoefficients) -> float:
    """Schwarzian derivative of sqrt(f) at the cut tip: 3c - (9/4) b^2."""
    val = 3 * jet.c - 2.25 * jet.b * jet.b
    return val.real


def sqrt_jet(jet: JetCoefficients):
    """3-jet of sqrt(f): z + (b/2) z^2 + (c/2 - b^2/8) z^3 + O(z^4)."""
    return (jet.b / 2, jet.c / 2 - jet.b * jet.b / 8)


def inverse_jet(jet: JetCoefficients):
    """Puiseux coefficients of f^{-1}: z^{1/2} - (b/2) z + (5b^2/8 - c/2) z^{3/2}."""
    return (-jet.b / 2, 5 * jet.b * jet.b / 8 - jet.c / 2)


def pq_from_jet(jet: JetCoefficients):
    """Parameters with f_{p,q} matching the 4-jet: p = 12b/(16c - 27b^2),
    q = 12b/(16c + 9b^2)."""
    b, c = jet.b, jet.c
    if b == 0:
        raise ZeroB("b = 0 jets belong to the single-parameter elbow family")
    d1 = 16 * c - 27 * b * b
    d2 = 16 * c + 9 * b * b
    if d1 == 0 or d2 == 0:
        raise DegenerateParameters("jet lies on a degenerate parameter locus")
    return 12 * b / d1, 12 * b / d2


def pq_jet(p, q) -> JetCoefficients:
    """4-jet of f_{p,q}: b = (1/q - 1/p)/3, c = (3/(4q^2) - 1/(2pq) - 1/(4p^2))/4."""
    b = (1 / q - 1 / p) / 3
    c = (3 / (4 * q * q) - 1 / (2 * p * q) - 1 / (4 * p * p)) / 4
    return JetCoefficients(b, c)


# ---------------------------------------------------------------------------
# the f_{p,q} family
# ---------------------------------------------------------------------------

def _check_pq(p, q):
    p, q = complex(p), complex(q)
    for name, w in (("p", p), ("q", q)):
        if abs(w.real) > 1e-12 * max(1.0, abs(w)):
            raise DegenerateParameters(f"{name} = {w} must be purely imaginary")
    if p == 0 or q == 0 or p == q:
        raise DegenerateParameters("0, p, q must be distinct")
    return p, q


def _fpq_prefactor(p, q):
    pref = _ratio_sqrt(q, p)
    corr = pref * cmath.sqrt(-p) / cmath.sqrt(-q)   # must be +1 for f = z^2 + ...
    return pref / corr


def _fpq_anti(p, q, z, pref):
    s1 = cmath.sqrt(z - p)
    s2 = cmath.sqrt(z - q)
    return 0.25 * pref * (s1 * s2 * (4 * z - 2 * p + 6 * q)
                          - 2 * (p * p + 2 * p * q - 3 * q * q) * cmath.log(s1 + s2))


def fpq_value(p, q, z):
    """f_{p,q}(z) = 2 sqrt(q/p) int_0^z u sqrt((u-p)/(u-q)) du via the closed
    antiderivative, pinned by f(0) = 0.  Analytic on the right half-plane."""
    p, q = _check_pq(p, q)
    pref = _fpq_prefactor(p, q)
    return _fpq_anti(p, q, z, pref) - _fpq_anti(p, q, 0, pref)


def fpq_prime(p, q, z):
    p, q = _check_pq(p, q)
    pref = _fpq_prefactor(p, q)
    return 2 * pref * z * cmath.sqrt(z - p) / cmath.sqrt(z - q)


def schwarzian_pq(p, q):
    """S sqrt(f_{p,q})(0) = (5p + 7q)(p - q) / (16 p^2 q^2); real for purely
    imaginary p, q."""
    p, q = _check_pq(p, q)
    return ((5 * p + 7 * q) * (p - q) / (16 * p * p * q * q)).real


def fpq_energy_delta(p, q, delta) -> float:
    """delta-normalized Dirichlet energy of the height function on the image
    domain of f_{p,q}:

        (20/(3 pi)) log delta + (1/(3 pi)) log(9 |p|^11 / (4^8 |q|^19 |p-q|^8))
    """
    p, q = _check_pq(p, q)
    if delta <= 0:
        raise DegenerateParameters("delta must be positive")
    return (20.0 / (3 * PI) * math.log(delta)
            + 1.0 / (3 * PI) * math.log(9 * abs(p) ** 11 / (4 ** 8 * abs(q) ** 19 * abs(p - q) ** 8)))


def fpq_flow(p, q):
    """Derivatives (dp/d f(p), dq/d f(p)) along the cut-extension flow that
    moves f(p) and f(q) in lockstep (d(f(p) - f(q)) = 0)."""
    p, q = _check_pq(p, q)
    den = p * p + 6 * p * q - 15 * q * q
    if den == 0:
        raise DegenerateParameters("flow denominator vanishes")
    dq_dp = -(q / p) * (3 * p * p + 2 * p * q + 3 * q * q) / den
    dp_dfp = den / (-16 * p * q * q)
    return dp_dfp, dq_dp * dp_dfp


def fpq_cut_energy_rate(p, q) -> float:
    """dE/d(eps) when the cut is extended so that f(p) changes by -2 eps:
    (5p + 7q)(p - q) / (2 pi p^2 q^2)."""
    p, q = _check_pq(p, q)
    return ((5 * p + 7 * q) * (p - q) / (2 * PI * p * p * q * q)).real


# ---------------------------------------------------------------------------
# cut boundary energies (start/end of a cut)
# ---------------------------------------------------------------------------

_CUT_KINDS = ("edge_start", "corner_start", "edge_end", "corner_end")

# coefficient a in the step rate a/j, as an exact multiple of 1/pi
_RATE_PI = {
    "edge_start": Fraction(6),
    "corner_start": Fraction(10, 3),
    "edge_end": Fraction(18),
    "corner_end": Fraction(46, 3),
}


def cut_boundary_energies(kind: str, j, eps, delta) -> float:
    """Local delta-normalized energy attributable to the start or end of a
    straight cut, j steps in (for end kinds j counts the remaining steps).

    Closed forms: starts carry +coef*log(cut length), ends -coef*log(remaining
    length); coefficients are 6/pi, 10/(3 pi), 18/pi, 46/(3 pi).
    """
    if kind not in _CUT_KINDS:
        raise ValueError(f"unknown cut kind {kind!r}")
    a = float(_RATE_PI[kind]) / PI
    if kind == "edge_start":
        return a * math.log(1 / delta) + a * math.log(2 * eps * j) + 2 / PI * math.log(2)
    if kind == "corner_start":
        return a * math.log(1 / delta) + a * math.log(eps * j)
    # ends: energy grows as the remaining distance eps*j shrinks
    return a * math.log(1 / delta) - a * math.log(eps * j)


def cut_step_rate(kind: str, j) -> float:
    """d/dj of the local energy: 6/(pi j), 10/(3 pi j), 18/(pi (N-j)), 46/(3 pi (N-j))
    (for end kinds j is the remaining step count and the sign accounts for the
    cut advancing toward the end)."""
    if kind not in _CUT_KINDS:
        raise ValueError(f"unknown cut kind {kind!r}")
    return float(_RATE_PI[kind]) / (PI * j)


def lemma_cut_constant(kind: str) -> Fraction:
    """Exact per-step constant: scaling the rate coefficient by -pi/48 gives
    C0 = -1/8 (edge start), -5/72 (corner start), C1 = -3/8 (edge end),
    -23/72 (corner end)."""
    return -_RATE_PI[kind] / 48


def elbow_domain(kind: str, j, eps) -> ModelDomainMap:
    """Model map whose Schwarzian reproduces the cut-step rate: the seam
    between the closed forms and the f-jet picture."""
    if kind == "edge_start":
        return ModelDomainMap("elbow_edge", {"q": 2.0 * eps * j})
    if kind == "corner_start":
        return ModelDomainMap("elbow_corner", {"q": 1j * math.sqrt(3.0 * eps * j) / 2.0})
    if kind == "edge_end":
        return ModelDomainMap("elbow_edge_end", {"B": math.sqrt(eps * j)})
    if kind == "corner_end":
        # corner on the lower side of the cut, matching the jet sign
        return ModelDomainMap("elbow_corner_end", {"B": -math.sqrt(3.0 * eps * j) / 2.0})
    raise ValueError(kind)


def elbow_jet(kind: str, j, eps) -> JetCoefficients:
    """4-jet at the tip for each limiting elbow map."""
    if kind == "edge_start":
        q = 2.0 * eps * j
        return JetCoefficients(0.0, -1.0 / (2 * q))
    if kind == "corner_start":
        q = 1j * math.sqrt(3.0 * eps * j) / 2.0
        return JetCoefficients(1 / (3 * q), 3 / (16 * q * q))
    if kind == "edge_end":
        return JetCoefficients(0.0, -3.0 / (4 * eps * j))
    if kind == "corner_end":
        return JetCoefficients(2j * math.sqrt(3) / (9 * math.sqrt(eps * j)),
                               -3.0 / (4 * eps * j))
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# two-hole coupling functions
# ---------------------------------------------------------------------------

@dataclass
class TwoHoleSpec:
    """Boundary zeros of the two-hole coupling functions.

    domain='unit_disk': zeros (b0, b1) on the unit circle, white hole at the
    origin.  domain='rhp': zero b5 on the imaginary axis with the second zero
    at infinity, white hole at 1.
    """

    domain: str
    zeros: tuple

    def __post_init__(self):
        if self.domain == "unit_disk":
            b0, b1 = self.zeros
            for b in (b0, b1):
                if abs(abs(complex(b)) - 1) > 1e-12:
                    raise ValueError("disk zeros must lie on the unit circle")
        elif self.domain == "rhp":
            (b5,) = self.zeros
            if abs(complex(b5).real) > 1e-12:
                raise ValueError("half-plane zero must lie on the imaginary axis")
        else:
            raise ValueError(f"unknown two-hole domain {self.domain!r}")


def two_hole_coupling(spec: TwoHoleSpec, v, z):
    """(F_plus, F_minus) with the hole's square-root branching; the residue of
    F_plus at z = v is 2/pi."""
    v, z = complex(v), complex(z)
    if spec.domain == "unit_disk":
        b0, b1 = (complex(b) for b in spec.zeros)
        if z == 0 or (z.imag == 0 and z.real < 0):
            raise BranchCutHit(f"z = {z} lies on the branch cut from the hole")
        if z == v:
            raise PoleAt("z = v")
        root_p = _ratio_sqrt(v, z)
        vb = v.conjugate()
        # the principal realization of sqrt(conj(v)/z) lands on the opposite
        # sheet: the sign is pinned by Im F0 = 0 on the circle and by Mobius
        # transport from the half-plane form
        root_m = -_ratio_sqrt(vb, z)
        fp = 2 * (z - b0) * (z - b1) * root_p / (PI * (z - v) * (v - b0) * (v - b1))
        fm = -2 * (z - b0) * (z - b1) * root_m / (PI * (1 - z * vb) * (vb * b0 - 1) * (vb * b1 - 1))
        return fp, fm
    b5 = complex(spec.zeros[0])
    if z == v:
        raise PoleAt("z = v")
    if z.imag == 0 and 0 < z.real <= 1:
        raise BranchCutHit(f"z = {z} lies on the cut from the hole at 1")
    vb = v.conjugate()
    root_p = _ratio_sqrt(v * v - 1, z * z - 1)
    root_m = _ratio_sqrt(vb * vb - 1, z * z - 1)
    fp = 2 * (z - b5) * root_p / (PI * (z - v) * (v - b5))
    fm = -2 * (z - b5) * root_m / (PI * (z + vb) * (vb + b5))
    return fp, fm


# ---------------------------------------------------------------------------
# the ratio law
# ---------------------------------------------------------------------------

def lerw_ratio_law(alpha: float, beta: float, eps: float) -> float:
    """Predicted log of the two-hole to no-hole tiling-count ratio, up to
    additive terms independent of (alpha, beta):

        -3/4 log(1/eps) + 1/4 log alpha - 1/2 log(alpha^2 + beta^2).
    """
    if alpha <= 0 or eps <= 0:
        raise ValueError("alpha and eps must be positive")
    return (-0.75 * math.log(1 / eps) + 0.25 * math.log(alpha)
            - 0.5 * math.log(alpha * alpha + beta * beta))


def lerw_point_probability(r: float, theta: float, eps: float) -> float:
    """Leading form (eps/r)^(3/4) cos(theta)^(1/4) of the probability that a
    point at polar position (r, theta) lies on the walk."""
    if abs(theta) > PI / 2:
        raise ValueError("theta must lie in [-pi/2, pi/2]")
    return (eps / r) ** 0.75 * math.cos(theta) ** 0.25
