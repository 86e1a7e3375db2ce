"""Reproducible test instances: isotropic float, isotropic rational, and general."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .charpoly import char_poly, identity
from .poly import kth_largest_root


def _spectrum(A: np.ndarray) -> list[float]:
    """Eigenvalues of a symmetric positive definite A from its char poly, descending."""
    p = char_poly(A)
    scale = max(float(np.trace(A)), 1.0)
    return [kth_largest_root(p, j, 1e-15 * scale) for j in range(1, A.shape[0] + 1)]


def inverse_sqrt(A: np.ndarray) -> np.ndarray:
    """A^(-1/2) by Sylvester's formula over the char-poly spectrum.

    Requires distinct eigenvalues, which holds almost surely for Gram matrices
    of Gaussian data.
    """
    d = A.shape[0]
    lams = _spectrum(A)
    if min(lams) <= 0:
        raise ValueError("matrix is not positive definite")
    I = np.eye(d)
    out = np.zeros((d, d))
    for i, li in enumerate(lams):
        proj = I.copy()
        for j, lj in enumerate(lams):
            if j != i:
                if abs(li - lj) <= 1e-10 * abs(li):
                    raise ValueError("repeated eigenvalue; Sylvester's formula does not apply")
                proj = proj @ (A - lj * I) / (li - lj)
        out += proj / np.sqrt(li)
    return 0.5 * (out + out.T)


def isotropize(G: np.ndarray, tol: float = 1e-14, max_iter: int = 20) -> np.ndarray:
    """Return (G G^T)^(-1/2) G, polished until ||B B^T - I||_max <= tol."""
    d = G.shape[0]
    B = inverse_sqrt(G @ G.T) @ G
    I = np.eye(d)
    for _ in range(max_iter):
        E = B @ B.T - I
        if np.max(np.abs(E)) <= tol:
            break
        # (I + E)^(-1/2) to second order
        B = (I - 0.5 * E + 0.375 * E @ E) @ B
    return B


def isotropic_instance(d: int, m: int, seed: int) -> np.ndarray:
    """m standard Gaussian columns in R^d, normalised so that B B^T = I."""
    if not 1 <= d <= m:
        raise ValueError("need 1 <= d <= m")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((d, m))
    B = isotropize(G)
    if np.max(np.abs(B @ B.T - np.eye(d))) > 1e-10:
        raise RuntimeError("isotropic normalisation did not converge")
    return B


def gaussian_instance(d: int, m: int, seed: int, spread: float = 1.0) -> np.ndarray:
    """Gaussian columns with random per-column scales in [1, 1 + spread]."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((d, m))
    return G * (1.0 + spread * rng.random(m))


def rational_isotropic_instance(d: int, m: int, seed: int, reflections: int = 3) -> np.ndarray:
    """First d rows of a product of rational Householder reflections (exact B B^T = I)."""
    if not 1 <= d <= m:
        raise ValueError("need 1 <= d <= m")
    rng = np.random.default_rng(seed)
    Q = identity(m, exact=True)
    for _ in range(reflections):
        v = [0] * m
        while all(x == 0 for x in v):
            v = [int(x) for x in rng.integers(-3, 4, size=m)]
        vv = Fraction(sum(x * x for x in v))
        H = identity(m, exact=True)
        for i in range(m):
            for j in range(m):
                H[i, j] -= 2 * v[i] * v[j] / vv
        Q = Q @ H
    perm = rng.permutation(m)
    return Q[:d, :][:, perm]


def rational_instance(d: int, m: int, seed: int, lo: int = -3, hi: int = 3, den: int = 2) -> np.ndarray:
    """Entries p/q with small integers p in [lo, hi] and q in [1, den]."""
    rng = np.random.default_rng(seed)
    out = np.empty((d, m), dtype=object)
    for i in range(d):
        for j in range(m):
            out[i, j] = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))
    return out
