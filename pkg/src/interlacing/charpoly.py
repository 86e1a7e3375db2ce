"""Characteristic polynomials, symmetric functions and stable-rank functionals.

Matrices are numpy arrays.  A float array runs in 64-bit floating point; an
``object`` array of :class:`fractions.Fraction` runs exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .poly import Polynomial, _div, is_exact_scalar, kth_largest_root

ENUMERATION_CAP = 10**6


def _parse_token(tok) -> Fraction:
    if isinstance(tok, str):
        return Fraction(tok.strip())
    if isinstance(tok, float):
        return Fraction(tok)
    return Fraction(tok)


def as_real_matrix(data, exact: bool | None = None) -> np.ndarray:
    """Validate a d x m matrix and put it in float or exact form.

    ``exact=None`` keeps exact input (ints, Fractions, ``"p/q"`` strings)
    exact and everything else float.
    """
    if isinstance(data, np.ndarray) and data.dtype != object:
        arr = data
        if exact:
            arr = np.array([[Fraction(float(v)) for v in row] for row in np.atleast_2d(arr)], dtype=object)
    else:
        try:
            rows = [list(r) for r in data] if not isinstance(data, np.ndarray) else data.tolist()
        except TypeError as exc:
            raise ValueError("matrix must be two-dimensional") from exc
        if not rows or not isinstance(rows[0], list):
            raise ValueError("matrix must be two-dimensional")
        flat = [v for r in rows for v in r]
        want_exact = exact if exact is not None else all(
            isinstance(v, (int, Fraction, str)) and not isinstance(v, bool) for v in flat
        )
        if want_exact:
            arr = np.array([[_parse_token(v) for v in r] for r in rows], dtype=object)
        else:
            arr = np.array([[float(v) for v in r] for r in rows], dtype=float)
    if arr.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    d, m = arr.shape
    if d < 1 or m < 1:
        raise ValueError("matrix must have at least one row and one column")
    if arr.dtype != object:
        arr = arr.astype(float)
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
    return arr


def is_exact_matrix(A: np.ndarray) -> bool:
    return A.dtype == object


def identity(d: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.full((d, d), Fraction(0), dtype=object)
        for i in range(d):
            out[i, i] = Fraction(1)
        return out
    return np.eye(d)


def symmetric_matrix(A, rtol: float = 1e-12) -> np.ndarray:
    """Check near-symmetry and return the symmetrized matrix."""
    A = A if isinstance(A, np.ndarray) else as_real_matrix(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("symmetric matrix must be square")
    if is_exact_matrix(A):
        if not np.all(A == A.T):
            raise ValueError("matrix is not symmetric")
        return A
    scale = max(float(np.max(np.abs(A))), 1e-300)
    if float(np.max(np.abs(A - A.T))) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def gram_outer(B: np.ndarray, indices: Sequence[int] | None = None) -> np.ndarray:
    """``sum_{i in indices} u_i u_i^T`` for the columns u_i of B (repeats allowed)."""
    d = B.shape[0]
    if indices is None:
        return B @ B.T
    if len(indices) == 0:
        return identity(d, is_exact_matrix(B)) * 0
    cols = B[:, list(indices)]
    return cols @ cols.T


def char_poly(A: np.ndarray) -> Polynomial:
    """det(xI - A) by the Faddeev-LeVerrier recurrence."""
    A = np.asarray(A)
    d = A.shape[0]
    exact = is_exact_matrix(A)
    one = Fraction(1) if exact else 1.0
    coeffs = [0] * (d + 1)
    coeffs[d] = one
    I = identity(d, exact)
    Mk = I
    for k in range(1, d + 1):
        AM = A @ Mk
        c = _div(-np.trace(AM), k)
        coeffs[d - k] = c
        Mk = AM + I * c
    return Polynomial(coeffs)


def elementary_symmetric(A: np.ndarray) -> list:
    """[e_0, ..., e_d] of the eigenvalues of A."""
    p = char_poly(A)
    d = A.shape[0]
    cs = list(p.coeffs) + [0] * (d + 1 - len(p.coeffs))
    return [(-1) ** ell * cs[d - ell] for ell in range(d + 1)]


def determinant(A: np.ndarray):
    d = A.shape[0]
    return (-1) ** d * char_poly(A)(0)


def cauchy_binet_check(B, ell: int, cap: int = ENUMERATION_CAP):
    """``(e_ell(B^T B), sum over |T| = ell of det(B_T^T B_T))``."""
    B = as_real_matrix(B) if not isinstance(B, np.ndarray) else B
    d, m = B.shape
    if not 0 <= ell <= min(d, m):
        raise ValueError(f"ell must lie in [0, {min(d, m)}]")
    if math.comb(m, ell) > cap:
        raise ValueError(f"C({m}, {ell}) exceeds the enumeration cap {cap}")
    lhs = elementary_symmetric(B.T @ B)[ell]
    rhs = 0
    for T in combinations(range(m), ell):
        if ell == 0:
            rhs += 1
            continue
        BT = B[:, list(T)]
        rhs += determinant(BT.T @ BT)
    return lhs, rhs


def newton_interpolate(nodes: Sequence, values: Sequence) -> Polynomial:
    """Interpolating polynomial through ``(nodes[i], values[i])`` via divided differences."""
    n = len(nodes)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = _div(coef[i] - coef[i - 1], nodes[i] - nodes[i - j])
    poly = Polynomial((coef[-1],))
    for i in range(n - 2, -1, -1):
        poly = poly * Polynomial((-nodes[i], 1)) + coef[i]
    return poly


@dataclass(frozen=True)
class BivariatePolynomial:
    """det(xI - C + tM) as ``coeffs[p]`` = coefficient of ``x**p``, a polynomial in t."""

    coeffs: tuple[Polynomial, ...]

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def at_t(self, t) -> Polynomial:
        """Specialise t, leaving a polynomial in x."""
        return Polynomial(c(t) for c in self.coeffs)

    def t_coefficient(self, x_power: int, t_power: int):
        cs = self.coeffs[x_power].coeffs
        return cs[t_power] if t_power < len(cs) else 0


def bivariate_det(C: np.ndarray, M: np.ndarray) -> BivariatePolynomial:
    """det(xI - C + tM), interpolated from char polys at t = 0, 1, ..., d."""
    C, M = np.asarray(C), np.asarray(M)
    if C.shape != M.shape or C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError("C and M must be square of equal size")
    d = C.shape[0]
    nodes = list(range(d + 1))
    rows = []
    for t in nodes:
        cs = list(char_poly(C - M * t).coeffs)
        rows.append(cs + [0] * (d + 1 - len(cs)))
    coeffs = []
    for p in range(d + 1):
        poly = newton_interpolate(nodes, [rows[j][p] for j in range(d + 1)])
        # the x^(d-i) coefficient is (-1)^i e_i(C - tM), of degree <= i in t
        coeffs.append(Polynomial(poly.coeffs[: d - p + 1]))
    return BivariatePolynomial(tuple(coeffs))


def _nonzero(B: np.ndarray) -> None:
    if not any(v != 0 for v in B.flat):
        raise ValueError("zero matrix")


def largest_eigenvalue(A: np.ndarray, eps: float = 1e-13) -> float:
    p = char_poly(A)
    scale = max(abs(float(np.trace(A))), 1.0)
    return kth_largest_root(p, 1, eps * scale)


def frobenius_sq(B: np.ndarray):
    return sum(v * v for v in B.flat)


def stable_rank(B) -> float:
    """||B||_F^2 / ||B||_2^2."""
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    _nonzero(B)
    return float(frobenius_sq(B)) / largest_eigenvalue(B @ B.T)


def kappa(A) -> float:
    """Tr(A)^2 / Tr(A^2)."""
    A = A if isinstance(A, np.ndarray) else as_real_matrix(A)
    tr = np.trace(A)
    if tr == 0:
        raise ValueError("kappa undefined for zero trace")
    tr2 = np.trace(A @ A)
    value = _div(tr * tr, tr2)
    return value if is_exact_scalar(value) else float(value)


def stable_rank4(B) -> float:
    """(sum sigma_i^2)^2 / sum sigma_i^4."""
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    _nonzero(B)
    return kappa(B @ B.T)
