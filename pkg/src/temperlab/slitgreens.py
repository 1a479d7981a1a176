"""Discrete Green's function of the slit plane, studied on finite boxes.

The domain is Z^2 minus the lattice points {(k, 0): k <= -1}, which carry
Dirichlet value 0 along with the outer box boundary.  G solves
Delta G = delta_0 (positive-semidefinite sign convention), so G >= 0 and
G(0, x) decays like x^(-1/2) along the positive axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla


@dataclass
class SlitBox:
    """Square box [-M, M]^2 with the slit {(k, 0): k <= -1} grounded."""

    m: int

    def __post_init__(self):
        if self.m < 8:
            raise ValueError("box half-width must be >= 8")


@dataclass
class SlitField:
    m: int
    values: np.ndarray     # (2M+1, 2M+1), index [y + M, x + M]

    def at(self, x, y):
        return float(self.values[y + self.m, x + self.m])

    def axis_decay(self, xs):
        return [(x, self.at(x, 0) * math.sqrt(x)) for x in xs]


def _solve_dirichlet(m, boundary_value, rhs_at=None, shift=0):
    """Solve the 5-point Laplacian on the box with the slit and outer boundary
    grounded to `boundary_value(x, y)`; optional unit source at `rhs_at`.

    `shift` moves the slit: grounded points are {(k, 0): k <= -1 + shift}.
    """
    n = 2 * m + 1
    X, Y = np.meshgrid(np.arange(-m, m + 1), np.arange(-m, m + 1))
    dirichlet = (np.abs(X) == m) | (np.abs(Y) == m) | ((Y == 0) & (X <= -1 + shift))
    free = ~dirichlet
    idx = -np.ones((n, n), dtype=np.int64)
    ij = np.argwhere(free)
    idx[free] = np.arange(len(ij))
    nunk = len(ij)
    vals = np.zeros((n, n))
    if boundary_value is not None:
        vals[dirichlet] = boundary_value(X[dirichlet], Y[dirichlet])
    rows, cols, data = [], [], []
    rhs = np.zeros(nunk)
    for r, (j, i) in enumerate(ij):
        rows.append(r); cols.append(r); data.append(4.0)
        for (dj, di) in ((0, 1), (0, -1), (1, 0), (-1, 0)):
            jj, ii = j + dj, i + di
            if free[jj, ii]:
                rows.append(r); cols.append(idx[jj, ii]); data.append(-1.0)
            else:
                rhs[r] += vals[jj, ii]
    if rhs_at is not None:
        x0, y0 = rhs_at
        rhs[idx[y0 + m, x0 + m]] += 1.0
    a = sp.csc_matrix((data, (rows, cols)), shape=(nunk, nunk))
    sol = spla.spsolve(a, rhs)
    vals[free] = sol
    return vals


def slit_greens(box: SlitBox) -> SlitField:
    """Direct solve of Delta G = delta_0 with Dirichlet 0 on slit and box."""
    vals = _solve_dirichlet(box.m, None, rhs_at=(0, 0))
    return SlitField(box.m, vals)


def _far_field(n):
    """Continuum boundary data of the step-to-1 harmonic function:
    (1/pi) Im log((1 + i sqrt(z/n)) / (1 - i sqrt(z/n)))."""

    def fn(x, y):
        z = x + 1j * y
        s = np.sqrt(z.astype(complex) / n)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.imag(np.log((1 + 1j * s) / (1 - 1j * s))) / math.pi
        return np.where((y == 0) & (x <= -n - 1), 1.0, np.where((y == 0) & (x >= -n), 0.0, val))

    return fn


def fn_construction(n, box: SlitBox):
    """Harmonic f_n (0 on the slit segment [-n, -1], 1 beyond, far-field data
    on the outer box) and the unit-shifted f_{n+1}(z-1), assembled into

        G(0, z) = (f_n(z) - f_{n+1}(z-1)) / (f_{n+1}(0) + f_{n+1}(i) + f_{n+1}(-i)).

    Both solves reuse the identical outer-box data, so the difference has
    exactly zero boundary values and the assembly matches the direct Green's
    function to solver precision.

    Returns (f_n, shifted f_{n+1}, assembled SlitField, denominator).
    """
    m = box.m
    if n >= m // 4:
        raise ValueError("need n < M/4")
    bv = _far_field(n)
    # f_n: slit {k <= -1}; values 0 on [-n, -1] and 1 beyond are built into
    # the far-field function on the axis
    f_n = _solve_dirichlet(m, bv, shift=0)
    # f_{n+1}(z-1) solved directly in z coordinates: its slit is {z <= 0} with
    # the 0-segment [-n, 0] and 1 beyond; same outer data as f_n
    def bv_shift(x, y):
        out = bv(x, y)
        on_axis = (y == 0)
        out = np.where(on_axis & (x >= -n) & (x <= 0), 0.0, out)
        out = np.where(on_axis & (x <= -n - 1), 1.0, out)
        return out

    f_n1 = _solve_dirichlet(m, bv_shift, shift=1)
    # Laplacian defect of the difference at the origin: the sum of the shifted
    # field over the free neighbors of 0 (the x = -1 neighbor is grounded)
    denom = f_n1[m, m + 1] + f_n1[m + 1, m] + f_n1[m - 1, m]
    g = (f_n - f_n1) / denom
    return f_n, f_n1, SlitField(m, g), float(denom)


def laplacian_residual(field: SlitField):
    """Delta G on the free nodes; should be the delta at the origin."""
    m = field.m
    v = field.values
    res = 4 * v[1:-1, 1:-1] - v[:-2, 1:-1] - v[2:, 1:-1] - v[1:-1, :-2] - v[1:-1, 2:]
    X, Y = np.meshgrid(np.arange(-m + 1, m), np.arange(-m + 1, m))
    res[(Y == 0) & (X <= -1)] = 0.0
    return res
