"""Exhaustive reference computations for small instances.

Nothing here shares code with the fast paths it checks beyond the polynomial
type itself: characteristic polynomials are assembled from principal minors
(Gaussian elimination) rather than the Faddeev-LeVerrier recurrence, and
singular values come from ``numpy.linalg.eigvalsh``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .charpoly import ENUMERATION_CAP, as_real_matrix, is_exact_matrix
from .expected import jacobi_family_poly
from .poly import DEFAULT_TOL, Polynomial, X, _div, divide_exact, is_real_rooted, kth_largest_root

DEFAULT_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def _matrix(B) -> np.ndarray:
    return B if isinstance(B, np.ndarray) else as_real_matrix(B)


def _det(A: Sequence[Sequence]) -> object:
    """Determinant by Gaussian elimination with partial pivoting (exact for Fractions)."""
    a = [list(r) for r in A]
    n = len(a)
    det = 1
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[piv][c] == 0:
            return 0 * det
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        for r in range(c + 1, n):
            f = _div(a[r][c], a[c][c])
            if f != 0:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


def charpoly_by_minors(A: np.ndarray) -> Polynomial:
    """det(xI - A) with e_l(A) = sum of l x l principal minors."""
    d = A.shape[0]
    rows = A.tolist()
    coeffs = [0] * (d + 1)
    for ell in range(d + 1):
        if ell == 0:
            e = 1
        else:
            e = sum(_det([[rows[i][j] for j in S] for i in S]) for S in combinations(range(d), ell))
        coeffs[d - ell] = (-1) ** ell * e
    return Polynomial(coeffs)


def _outer_sum(B: np.ndarray, cols: Iterable[int]) -> np.ndarray:
    d = B.shape[0]
    acc = np.zeros((d, d), dtype=B.dtype)
    if is_exact_matrix(B):
        acc = np.full((d, d), Fraction(0), dtype=object)
    for c in cols:
        u = B[:, c]
        acc = acc + np.outer(u, u)
    return acc


def _average(polys: Sequence[Polynomial]) -> Polynomial:
    total = Polynomial((0,))
    for p in polys:
        total = total + p
    return total / len(polys)


def leaves(B, k: int, mode: str = "with", cap: int = ENUMERATION_CAP) -> dict[tuple, Polynomial]:
    """Leaf label -> char poly of the corresponding sum of outer products."""
    B = _matrix(B)
    m = B.shape[1]
    if mode == "with":
        if m**k > cap:
            raise ValueError(f"m^k = {m**k} exceeds the enumeration cap {cap}")
        labels = product(range(m), repeat=k)
    elif mode == "without":
        if math.comb(m, k) > cap:
            raise ValueError(f"C(m, k) = {math.comb(m, k)} exceeds the enumeration cap {cap}")
        labels = combinations(range(m), k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return {s: charpoly_by_minors(_outer_sum(B, s)) for s in labels}


def enumerate_expected(B, k: int, mode: str = "with", cap: int = ENUMERATION_CAP) -> Polynomial:
    """Average of the leaf char polys: over [m]^k (with) or size-k subsets (without)."""
    return _average(list(leaves(B, k, mode, cap).values()))


def sigma_min_sq_numpy(B: np.ndarray, S: Sequence[int]) -> float:
    BS = np.asarray(B[:, list(S)], dtype=float)
    return float(np.linalg.eigvalsh(BS.T @ BS)[0])


def brute_force_best_subset(B, k: int, cap: int = ENUMERATION_CAP) -> tuple[tuple[int, ...], float]:
    """The size-k subset maximising sigma_min(B_S)^2 (smallest index set among ties)."""
    B = _matrix(B)
    m = B.shape[1]
    if math.comb(m, k) > cap:
        raise ValueError(f"C(m, k) = {math.comb(m, k)} exceeds the enumeration cap {cap}")
    best, best_v = None, -math.inf
    for S in combinations(range(m), k):
        v = sigma_min_sq_numpy(B, S)
        if v > best_v:
            best, best_v = S, v
    return best, best_v


def common_interlacing_check(polys: Sequence[Polynomial], grid: Sequence[float] = DEFAULT_GRID,
                             tol: float = DEFAULT_TOL) -> bool:
    """Every pairwise convex combination on ``grid`` is real-rooted."""
    polys = list(polys)
    if not polys:
        return True
    deg = polys[0].degree
    if any(p.degree != deg for p in polys):
        raise ValueError("polynomials must share a degree")
    if any(not p.leading > 0 for p in polys):
        raise ValueError("leading coefficients must be positive")
    exact = all(p.is_exact for p in polys)
    mus = [Fraction(mu) if exact else float(mu) for mu in grid]
    for p in polys:
        if not is_real_rooted(p, tol):
            return False
    for p, q in combinations(polys, 2):
        for mu in mus:
            if mu in (0, 1):
                continue
            if not is_real_rooted(p * mu + q * (1 - mu), tol):
                return False
    return True


def kth_root_leaf_check(B, k: int, mode: str = "with", tol: float = 1e-8,
                        cap: int = ENUMERATION_CAP) -> bool:
    """Some leaf has lambda_k >= lambda_k(root) and some leaf has lambda_k <= it."""
    leaf_polys = list(leaves(B, k, mode, cap).values())
    root = _average(leaf_polys)
    eps = tol / 100
    r = kth_largest_root(root, k, eps)
    vals = [kth_largest_root(p, k, eps) for p in leaf_polys]
    return max(vals) >= r - tol and min(vals) <= r + tol


def without_replacement_tree(B, k: int) -> dict[tuple[int, ...], Polynomial]:
    """Every node T (|T| <= k) of the subset tree, labelled by jacobi_family_poly."""
    B = _matrix(B)
    m = B.shape[1]
    return {T: jacobi_family_poly(B, T, k) for t in range(k + 1) for T in combinations(range(m), t)}


def tree_average_defects(tree: dict[tuple[int, ...], Polynomial], m: int, k: int) -> dict[tuple, float]:
    """For each internal node, max coefficient gap between f_T and the mean of its children."""
    out = {}
    for T, f in tree.items():
        if len(T) >= k:
            continue
        children = [tree[tuple(sorted(T + (i,)))] for i in range(m) if i not in T]
        mean = _average(children)
        diff = f - mean
        out[T] = float(diff.max_abs())
    return out


def sibling_sets(tree: dict[tuple[int, ...], Polynomial], m: int, k: int) -> dict[tuple, list[Polynomial]]:
    return {
        T: [tree[tuple(sorted(T + (i,)))] for i in range(m) if i not in T]
        for T in tree if len(T) < k
    }


def add_one_identity(B, T: Sequence[int]) -> tuple[Polynomial, Polynomial]:
    """Both sides of  sum_{i not in T} p_{T+i} = (x-1)^-(e-1) d/dx (x-1)^e p_T,  e = m-d-t.

    For e < 1 the right side is taken in its expanded form e p_T + (x-1) p_T'.
    """
    B = _matrix(B)
    d, m = B.shape
    T = tuple(sorted(T))
    t = len(T)
    lhs = Polynomial((0,))
    for i in range(m):
        if i not in T:
            lhs = lhs + charpoly_by_minors(_outer_sum(B, T + (i,)))
    p_T = charpoly_by_minors(_outer_sum(B, T))
    e = m - d - t
    if e >= 1:
        rhs = divide_exact(((X - 1) ** e * p_T).derivative(), (X - 1) ** (e - 1))
    else:
        rhs = p_T * e + (X - 1) * p_T.derivative()
    return lhs, rhs


def enumerate_conditional(B, assigned: Sequence[int], k: int, cap: int = ENUMERATION_CAP) -> Polynomial:
    """Average char poly over every completion of ``assigned`` in [m]^(k - j)."""
    B = _matrix(B)
    m = B.shape[1]
    rest = k - len(assigned)
    if rest < 0:
        raise ValueError("assignment longer than k")
    if m**rest > cap:
        raise ValueError(f"m^(k-j) = {m**rest} exceeds the enumeration cap {cap}")
    polys = [charpoly_by_minors(_outer_sum(B, tuple(assigned) + s)) for s in product(range(m), repeat=rest)]
    return _average(polys)
