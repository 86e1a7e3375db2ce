"""Closed-form lower bounds on the least squared singular value of a column subset."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .charpoly import as_real_matrix, frobenius_sq, kappa, stable_rank
from .expected import ISOTROPY_TOL, isotropy_defect

# slack when comparing an integer k with a float-computed rank functional
RANK_SLACK = 1e-9


def _ratio(k: int, rank: float, what: str) -> float:
    if k > rank * (1 + RANK_SLACK):
        raise ValueError(f"k={k} exceeds {what}={rank:.12g}")
    return min(k / rank, 1.0)


def ss_bound(B, k: int) -> float:
    """(1 - sqrt(k / srank))^2 ||B||_F^2 / m."""
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    r = _ratio(k, stable_rank(B), "srank")
    return (1 - math.sqrt(r)) ** 2 * float(frobenius_sq(B)) / B.shape[1]


def schatten_bound(A, k: int, m: int) -> float:
    """(1 - sqrt(k / kappa_A))^2 Tr(A) / m for A = B B^T."""
    A = A if isinstance(A, np.ndarray) else as_real_matrix(A)
    r = _ratio(k, float(kappa(A)), "kappa")
    return (1 - math.sqrt(r)) ** 2 * float(np.trace(A)) / m


def muroot_bound(M, k: int) -> float:
    """(1 - sqrt(k / kappa_M))^2 Tr(M): lower bound on lambda_k of the product-form polynomial."""
    M = M if isinstance(M, np.ndarray) else as_real_matrix(M)
    r = _ratio(k, float(kappa(M)), "kappa")
    return (1 - math.sqrt(r)) ** 2 * float(np.trace(M))


def krasikov_bound(k: int, alpha: float) -> float:
    """Lower bound V^2 + 3 V^(4/3) (U^2 - V^2)^(-1/3) on the least zero of L_k^(alpha)."""
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    if k < 1:
        raise ValueError("k must be at least 1")
    a = math.sqrt(k + alpha + 1)
    b = math.sqrt(k)
    v, u = a - b, a + b
    return v * v + 3 * v ** (4 / 3) * (u * u - v * v) ** (-1 / 3)


def jacobi_bound(d: int, k: int, m: int) -> float:
    """(sqrt(d(m-k)) - sqrt(k(m-d)))^2 / m^2."""
    if not m >= d >= k >= 0:
        raise ValueError("need m >= d >= k >= 0")
    return (math.sqrt(d * (m - k)) - math.sqrt(k * (m - d))) ** 2 / m**2


def improved_jacobi_bound(d: int, k: int, m: int) -> float:
    """Same form as :func:`jacobi_bound` with d + 1 in place of d."""
    if not (m >= d + 1 >= k and k >= 0):
        raise ValueError("need m >= d + 1 >= k >= 0")
    return (math.sqrt((d + 1) * (m - k)) - math.sqrt(k * (m - d - 1))) ** 2 / m**2


def u_alpha(alpha: float, m: int, d: int, k: int) -> float:
    """Barrier lower bound on the least root of d^d/dx^d (x-1)^(m-k) x^k, for a given alpha."""
    s = 1 - alpha * m
    return (s - math.sqrt(s * s + 4 * alpha * k)) / 2 + d * alpha


def alpha_star(m: int, d: int, k: int) -> float:
    """Maximiser of :func:`u_alpha`."""
    if not m > d > k >= 1:
        raise ValueError("need m > d > k >= 1")
    root = math.sqrt(k * (m - k) / (d * (m - d)))
    return (m - 2 * k) / m**2 - (m - 2 * d) / m**2 * root


def legacy_isotropic_bound(d: int, k: int, m: int) -> float:
    """(1 + sqrt(dk)/m)(1 - sqrt(k/d))^2 d/m, the comparison point for :func:`jacobi_bound`."""
    return (1 + math.sqrt(d * k) / m) * (1 - math.sqrt(k / d)) ** 2 * d / m


@dataclass
class BoundsReport:
    """All lower bounds that can be evaluated for one (B, k) next to the achieved value.

    ``guaranteed`` names the bounds the selector in ``mode`` provably attains;
    ``vacuous`` names bounds equal to zero.
    """

    d: int
    m: int
    k: int
    srank: float | None = None
    kappa: float | None = None
    isotropic: bool = True
    mode: str | None = None
    ss_bound: float | None = None
    schatten_bound: float | None = None
    jacobi_bound: float | None = None
    improved_jacobi_bound: float | None = None
    krasikov_bound: float | None = None
    achieved_sigma_min_sq: float | None = None
    guaranteed: list[str] = field(default_factory=list)
    vacuous: list[str] = field(default_factory=list)

    BOUND_NAMES = ("ss_bound", "schatten_bound", "jacobi_bound", "improved_jacobi_bound", "krasikov_bound")

    def values(self) -> dict[str, float]:
        return {n: getattr(self, n) for n in self.BOUND_NAMES if getattr(self, n) is not None}

    def checks(self, eps: float) -> dict[str, bool]:
        """For each guaranteed bound: achieved >= bound - eps."""
        if self.achieved_sigma_min_sq is None:
            return {}
        vals = self.values()
        return {n: self.achieved_sigma_min_sq >= vals[n] - eps for n in self.guaranteed if n in vals}

    def as_dict(self, eps: float | None = None) -> dict:
        out = {k: v for k, v in asdict(self).items()}
        if eps is not None:
            out["satisfied"] = self.checks(eps)
        return out


def bounds_report(d: int, m: int, k: int, B=None, mode: str | None = None,
                  achieved: float | None = None) -> BoundsReport:
    """Evaluate every applicable bound.

    Without a matrix, B is taken to be isotropic (B B^T = I_d), so srank = kappa = d.
    """
    if B is not None:
        B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
        d, m = B.shape
        srank = stable_rank(B)
        kap = float(kappa(B @ B.T))
        iso = isotropy_defect(B) <= ISOTROPY_TOL
    else:
        srank = kap = float(d)
        iso = True
    rep = BoundsReport(d=d, m=m, k=k, srank=srank, kappa=kap, isotropic=iso, mode=mode,
                       achieved_sigma_min_sq=achieved)

    if k <= srank * (1 + RANK_SLACK):
        if B is not None:
            rep.ss_bound = ss_bound(B, k)
        else:
            rep.ss_bound = (1 - math.sqrt(min(k / d, 1.0))) ** 2 * d / m
    if k <= kap * (1 + RANK_SLACK):
        if B is not None:
            rep.schatten_bound = schatten_bound(B @ B.T, k, m)
        else:
            rep.schatten_bound = rep.ss_bound
    if iso and m >= d >= k:
        rep.jacobi_bound = jacobi_bound(d, k, m)
        if m >= d + 1:
            rep.improved_jacobi_bound = improved_jacobi_bound(d, k, m)
        if k >= 1:
            rep.krasikov_bound = krasikov_bound(k, d - k) / m

    if mode == "with":
        rep.guaranteed = [n for n in ("ss_bound", "schatten_bound") if getattr(rep, n) is not None]
        if iso and rep.krasikov_bound is not None:
            rep.guaranteed.append("krasikov_bound")
    elif mode == "without":
        # in the isotropic case ss <= schatten <= jacobi, so all three are attained
        rep.guaranteed = [n for n in ("ss_bound", "schatten_bound", "jacobi_bound", "improved_jacobi_bound")
                          if getattr(rep, n) is not None]
    rep.vacuous = [n for n, v in rep.values().items() if v <= 0.0]
    return rep
