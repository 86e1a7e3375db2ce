"""Expected characteristic polynomials and the classical families they match."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .charpoly import as_real_matrix, bivariate_det, char_poly, gram_outer, identity, is_exact_matrix
from .poly import Polynomial, X, divide_exact, one_minus_lambda_deriv

ISOTROPY_TOL = 1e-8


def _matrix(B) -> np.ndarray:
    return B if isinstance(B, np.ndarray) else as_real_matrix(B)


def isotropy_defect(B: np.ndarray) -> float:
    """max |B B^T - I| entrywise."""
    d = B.shape[0]
    diff = B @ B.T - identity(d, is_exact_matrix(B))
    return float(max(abs(v) for v in diff.flat))


def require_isotropic(B: np.ndarray, tol: float = ISOTROPY_TOL) -> None:
    defect = isotropy_defect(B)
    if defect > tol:
        raise ValueError(f"B B^T differs from I by {defect:.3g} (> {tol:g})")


def conditional_expected(B, assigned: Sequence[int], k: int) -> Polynomial:
    """Expected char poly of the sum of outer products given a partial assignment.

    The first ``len(assigned)`` columns are fixed; the remaining ``k - j`` are
    drawn uniformly with replacement.  Computed as
    ``(1 - d/dt)^(k-j) det(xI - C + tM) |_{t=0}`` with ``M = B B^T / m``.
    """
    B = _matrix(B)
    d, m = B.shape
    j = len(assigned)
    if not 0 <= k <= d:
        raise ValueError(f"k={k} must lie in [0, d={d}]")
    if j > k:
        raise ValueError(f"partial assignment of length {j} exceeds k={k}")
    for s in assigned:
        if not 0 <= s < m:
            raise IndexError(f"column index {s} out of range for m={m}")
    C = gram_outer(B, assigned)
    M = (B @ B.T) / m
    biv = bivariate_det(C, M)
    n = k - j
    # (1 - d/dt)^n t^l at t = 0 contributes C(n, l) (-1)^l l!
    weights = [math.comb(n, ell) * (-1) ** ell * math.factorial(ell) for ell in range(n + 1)]
    coeffs = []
    for tpoly in biv.coeffs:
        cs = tpoly.coeffs
        coeffs.append(sum(w * cs[ell] for ell, w in enumerate(weights) if ell < len(cs)))
    return Polynomial(coeffs)


def laguerre_operator_poly(d: int, k: int, m: int) -> Polynomial:
    """(1 - (1/m) d/dx)^k x^d."""
    if not 0 <= k <= d or m < 1:
        raise ValueError("need 0 <= k <= d and m >= 1")
    p = Polynomial.monomial(d)
    lam = Fraction(1, m)
    for _ in range(k):
        p = one_minus_lambda_deriv(p, lam)
    return p


def associated_laguerre(n: int, alpha: int) -> Polynomial:
    """L_n^(alpha) from Rodrigues' formula  x^-alpha / n! (d/dx - 1)^n x^(n+alpha)."""
    if n < 0 or alpha < 0 or int(alpha) != alpha:
        raise ValueError("need n >= 0 and integer alpha >= 0")
    alpha = int(alpha)
    g = Polynomial.monomial(n + alpha)
    for _ in range(n):
        g = g.derivative() - g
    low = g.coeffs[:alpha]
    if any(c != 0 for c in low):
        raise ArithmeticError("Rodrigues expansion not divisible by x^alpha")
    return Polynomial(g.coeffs[alpha:]) / math.factorial(n)


def nonisotropic_expected(eigs: Iterable, k: int) -> Polynomial:
    """x^(d-k) prod_i (1 - lambda_i d/dx) x^k for the eigenvalues of E[r r^T]."""
    eigs = list(eigs)
    d = len(eigs)
    if not 0 <= k <= d:
        raise ValueError(f"k={k} must lie in [0, d={d}]")
    if any(lam < 0 for lam in eigs):
        raise ValueError("eigenvalues must be nonnegative")
    core = Polynomial.monomial(k)
    for lam in eigs:
        core = one_minus_lambda_deriv(core, lam)
    return core.shift_up(d - k)


def _falling_ratio(m: int, k: int, t: int) -> int:
    """(m - t)! / (m - k)! as a running product."""
    out = 1
    for r in range(m - k + 1, m - t + 1):
        out *= r
    return out


def jacobi_family_poly(B, T: Iterable[int], k: int, rtol: float = 1e-8) -> Polynomial:
    """Expected char poly of U_S over uniform size-k supersets S of T.

    Evaluates  ((m-k)!/(m-t)!) (x-1)^-(m-d-k) d^(k-t)/dx^(k-t) (x-1)^(m-d-t) p_T(x)
    for isotropic B.  A negative power of (x - 1) is realised as an exact
    division, which the isotropy of B guarantees.
    """
    B = _matrix(B)
    d, m = B.shape
    T = sorted(set(T))
    t = len(T)
    if any(not 0 <= i < m for i in T):
        raise IndexError("index out of range")
    if not t <= k <= d <= m:
        raise ValueError(f"need |T| <= k <= d <= m, got t={t}, k={k}, d={d}, m={m}")
    require_isotropic(B)
    p_T = char_poly(gram_outer(B, T))
    if t == k:
        return p_T
    x1 = X - 1
    e1 = m - d - t
    g = p_T * x1 ** e1 if e1 >= 0 else divide_exact(p_T, x1 ** (-e1), rtol)
    g = g.derivative(k - t)
    e2 = m - d - k
    g = divide_exact(g, x1 ** e2, rtol) if e2 >= 0 else g * x1 ** (-e2)
    return g / _falling_ratio(m, k, t)


def jacobi_root_poly(d: int, k: int, m: int) -> Polynomial:
    """d^d/dx^d [(x-1)^(m-k) x^k]; its least root is the k-th largest root of f_empty."""
    if not m > d >= k >= 1:
        raise ValueError("need m > d >= k >= 1")
    return ((X - 1) ** (m - k) * Polynomial.monomial(k)).derivative(d)


def jacobi_poly(n: int, a: int, b: int) -> Polynomial:
    """P_n^(a,b) from Rodrigues' formula, expanded exactly."""
    if n < 0 or a < 0 or b < 0:
        raise ValueError("need n, a, b >= 0")
    one_minus = Polynomial((1, -1))
    one_plus = Polynomial((1, 1))
    g = (one_minus ** (a + n) * one_plus ** (b + n)).derivative(n)
    g = divide_exact(divide_exact(g, one_minus ** a), one_plus ** b)
    return g * Fraction((-1) ** n, 2 ** n * math.factorial(n))
