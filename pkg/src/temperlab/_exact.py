"""Exact arithmetic kernels: Gaussian-integer determinants and rational-complex
linear algebra.

Determinants use fraction-free (Bareiss) elimination, which stays in the ring
(all divisions are exact) so counts come out as honest arbitrary-precision
integers.  Inverses use Gauss-Jordan over Fraction-based complex numbers.
"""

from __future__ import annotations

import math
from fractions import Fraction


class SingularMatrix(Exception):
    pass


# ---------------------------------------------------------------------------
# Gaussian integers as (re, im) tuples of Python ints
# ---------------------------------------------------------------------------

GINT_ZERO = (0, 0)
GINT_ONE = (1, 0)


def g_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def g_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def g_norm(a):
    return a[0] * a[0] + a[1] * a[1]


def g_divexact(a, b):
    """a / b when b exactly divides a in Z[i]."""
    n = g_norm(b)
    re_num = a[0] * b[0] + a[1] * b[1]
    im_num = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re_num, n)
    qi, ri = divmod(im_num, n)
    if rr or ri:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    return (qr, qi)


def bareiss_det_gaussian(rows):
    """Exact determinant of a square matrix of Gaussian integers.

    `rows` is a list of lists of (re, im) int pairs; it is consumed.
    Pivoting picks the largest-norm entry in the column (lowest index on
    ties), which keeps the elimination deterministic.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return GINT_ONE
    sign = 1
    prev = GINT_ONE
    for r in range(n):
        piv, best = -1, -1
        for i in range(r, n):
            nm = g_norm(m[i][r])
            if nm > best:
                best, piv = nm, i
        if best == 0:
            return GINT_ZERO
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        mrr = m[r][r]
        for i in range(r + 1, n):
            mir = m[i][r]
            row_i = m[i]
            row_r = m[r]
            for j in range(r + 1, n):
                row_i[j] = g_divexact(
                    g_sub(g_mul(mrr, row_i[j]), g_mul(mir, row_r[j])), prev
                )
            row_i[r] = GINT_ZERO
        prev = mrr
    d = m[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def bareiss_det_int(rows):
    """Exact determinant of a square integer matrix (list of lists; consumed)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for r in range(n):
        piv, best = -1, -1
        for i in range(r, n):
            a = abs(m[i][r])
            if a > best:
                best, piv = a, i
        if best == 0:
            return 0
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        mrr = m[r][r]
        for i in range(r + 1, n):
            mir = m[i][r]
            row_i = m[i]
            row_r = m[r]
            for j in range(r + 1, n):
                row_i[j] = (mrr * row_i[j] - mir * row_r[j]) // prev
            row_i[r] = 0
        prev = mrr
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Rational complex numbers
# ---------------------------------------------------------------------------

class QC:
    """Complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, o):
        return QC(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QC(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __mul__(self, o):
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero QC")
        return QC((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def conj(self):
        return QC(self.re, -self.im)

    def __eq__(self, o):
        return isinstance(o, QC) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"QC({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        s = "+" if self.im > 0 else "-"
        return f"{self.re}{s}{abs(self.im)}i"


QC_ZERO = QC(0, 0)
QC_ONE = QC(1, 0)


def qc_inverse(rows):
    """Exact inverse of a square QC matrix via Gauss-Jordan.

    Raises SingularMatrix when the matrix has no inverse.
    """
    n = len(rows)
    a = [[QC(x.re, x.im) for x in row] for row in rows]
    inv = [[QC_ONE if i == j else QC_ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        best = Fraction(-1)
        for i in range(col, n):
            m = a[i][col].abs2()
            if m > best:
                best, piv = m, i
        if best == 0:
            raise SingularMatrix("matrix is singular over Q(i)")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        for j in range(n):
            a[col][j] = a[col][j] / p
            inv[col][j] = inv[col][j] / p
        for i in range(n):
            if i == col:
                continue
            f = a[i][col]
            if f.is_zero():
                continue
            for j in range(n):
                a[i][j] = a[i][j] - f * a[col][j]
                inv[i][j] = inv[i][j] - f * inv[col][j]
    return inv


def rational_inverse(rows):
    """Exact inverse of a square integer/Fraction matrix; list-of-lists of Fractions."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        best = Fraction(-1)
        for i in range(col, n):
            m = abs(a[i][col])
            if m > best:
                best, piv = m, i
        if best == 0:
            raise SingularMatrix("matrix is singular over Q")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        for j in range(n):
            a[col][j] /= p
            inv[col][j] /= p
        for i in range(n):
            if i == col:
                continue
            f = a[i][col]
            if f == 0:
                continue
            for j in range(n):
                a[i][j] -= f * a[col][j]
                inv[i][j] -= f * inv[col][j]
    return inv


def fraction_sqrt(x: Fraction) -> Fraction:
    """Square root of a Fraction that is a perfect square of a rational."""
    if x < 0:
        raise ValueError("negative value has no rational square root")
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        raise ValueError(f"{x} is not a perfect rational square")
    return Fraction(pn, pd)
