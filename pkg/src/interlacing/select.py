"""Greedy descent through an interlacing family to a certified column subset."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .charpoly import as_real_matrix, char_poly, stable_rank
from .expected import conditional_expected, jacobi_family_poly, require_isotropic
from .poly import DEFAULT_EPS, Polynomial, divide_by_x_power, smallest_root

WITH = "with_replacement"
WITHOUT = "without_replacement"


class GuaranteeWarning(UserWarning):
    """k exceeds the stable rank, so no bound is guaranteed."""


@dataclass(frozen=True)
class TraceStep:
    index: int
    lambda_k: float


@dataclass
class SelectionResult:
    indices: tuple[int, ...]
    sigma_min_sq: float
    root_trace: tuple[TraceStep, ...]
    mode: str
    epsilon: float
    initial_root: float
    candidates_per_step: list[dict[int, float]] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "sigma_min_sq": self.sigma_min_sq,
            "initial_root": self.initial_root,
            "trace": [{"index": s.index, "lambda_k": s.lambda_k} for s in self.root_trace],
            "mode": self.mode,
            "epsilon": self.epsilon,
        }


def lambda_k(f: Polynomial, d: int, k: int, eps: float = DEFAULT_EPS) -> float:
    """k-th largest root of a degree-d polynomial with a root of order d - k at 0."""
    return smallest_root(divide_by_x_power(f, d - k), eps)


def certify(B, indices: Sequence[int], eps: float = DEFAULT_EPS) -> float:
    """sigma_min(B_S)^2, the least eigenvalue of the Gram matrix B_S^T B_S."""
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("indices must be distinct")
    if not idx:
        raise ValueError("empty index set")
    if len(idx) > B.shape[0]:
        raise ValueError("more columns than rows: sigma_min is zero by rank")
    BS = B[:, idx]
    return smallest_root(char_poly(BS.T @ BS), eps)


def _greedy(m: int, k: int, d: int, node_poly: Callable[[list[int]], Polynomial],
            eps: float) -> tuple[list[int], list[TraceStep], float, list[dict[int, float]]]:
    chosen: list[int] = []
    trace: list[TraceStep] = []
    scores: list[dict[int, float]] = []
    root = lambda_k(node_poly([]), d, k, eps)
    for _ in range(k):
        step: dict[int, float] = {}
        best_i, best_v = -1, -np.inf
        for i in range(m):
            if i in chosen:
                continue
            v = lambda_k(node_poly(chosen + [i]), d, k, eps)
            step[i] = v
            # strict comparison keeps the smallest index among ties
            if v > best_v:
                best_i, best_v = i, v
        chosen.append(best_i)
        trace.append(TraceStep(best_i, best_v))
        scores.append(step)
    return chosen, trace, root, scores


def select_with_replacement(B, k: int, eps: float = DEFAULT_EPS) -> SelectionResult:
    """Pick k columns by maximising lambda_k of the conditional expected polynomial.

    Already-chosen columns are not revisited: a repeat forces lambda_k = 0.
    """
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    d, m = B.shape
    if not 1 <= k <= min(d, m):
        raise ValueError(f"need 1 <= k <= min(d, m) = {min(d, m)}")
    if k > stable_rank(B) * (1 + 1e-9):
        warnings.warn(f"k={k} exceeds the stable rank; bounds are not guaranteed", GuaranteeWarning)
    chosen, trace, root, scores = _greedy(m, k, d, lambda a: conditional_expected(B, a, k), eps)
    return SelectionResult(tuple(chosen), certify(B, chosen, eps), tuple(trace), WITH, eps, root, scores)


def select_without_replacement(B, k: int, eps: float = DEFAULT_EPS) -> SelectionResult:
    """Greedy descent through the subset tree of an isotropic B."""
    B = B if isinstance(B, np.ndarray) else as_real_matrix(B)
    d, m = B.shape
    require_isotropic(B)
    if not 1 <= k <= d <= m:
        raise ValueError(f"need 1 <= k <= d <= m, got k={k}, d={d}, m={m}")
    chosen, trace, root, scores = _greedy(m, k, d, lambda a: jacobi_family_poly(B, a, k), eps)
    return SelectionResult(tuple(chosen), certify(B, chosen, eps), tuple(trace), WITHOUT, eps, root, scores)
