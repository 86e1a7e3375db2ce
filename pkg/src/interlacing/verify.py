"""Invariant suites over built-in small instances, used by ``interlacing verify``.

Each check compares two quantities and records both, so a failure can be
printed with its left and right sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from .bounds import (alpha_star, jacobi_bound, krasikov_bound, legacy_isotropic_bound, schatten_bound,
                     ss_bound, u_alpha)
from .charpoly import bivariate_det, cauchy_binet_check, char_poly, gram_outer, kappa, stable_rank, stable_rank4
from .expected import conditional_expected, jacobi_root_poly, laguerre_operator_poly, nonisotropic_expected
from .instances import gaussian_instance, isotropic_instance, rational_instance, rational_isotropic_instance
from .oracle import (add_one_identity, brute_force_best_subset, common_interlacing_check, enumerate_conditional,
                     enumerate_expected, kth_root_leaf_check, sibling_sets, without_replacement_tree)
from .poly import (Polynomial, alpha_min, derivative, is_real_rooted, kth_largest_root, one_minus_lambda_deriv,
                   smallest_root, sturm_root_count)
from .select import lambda_k, select_with_replacement, select_without_replacement

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    lhs: object
    rhs: object
    relation: str

    def line(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        return f"{status} [{self.suite}] {self.name}"

    def detail(self) -> str:
        return f"    lhs = {self.lhs!r}\n    rhs = {self.rhs!r}\n    expected lhs {self.relation} rhs"


def _ge(suite, name, lhs, rhs, tol=0.0) -> Check:
    return Check(suite, name, bool(lhs >= rhs - tol), lhs, rhs, f">= (tol {tol:g})")


def _le(suite, name, lhs, rhs, tol=0.0) -> Check:
    return Check(suite, name, bool(lhs <= rhs + tol), lhs, rhs, f"<= (tol {tol:g})")


def _close(suite, name, lhs, rhs, tol) -> Check:
    if isinstance(lhs, Polynomial):
        ok = lhs.allclose(rhs, rtol=tol, atol=tol)
    else:
        ok = abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
    return Check(suite, name, bool(ok), lhs, rhs, f"== (tol {tol:g})")


def _eq(suite, name, lhs, rhs) -> Check:
    return Check(suite, name, lhs == rhs, lhs, rhs, "==")


def _true(suite, name, value, what) -> Check:
    return Check(suite, name, bool(value), what, True, "==")


def random_real_rooted(rng: np.random.Generator, max_degree: int = 8, spread: float = 4.0) -> Polynomial:
    n = int(rng.integers(2, max_degree + 1))
    return Polynomial.from_roots(sorted(rng.uniform(-spread, spread, size=n)))


def suite_poly(level: str) -> Iterator[Check]:
    rng = np.random.default_rng(11)
    count = 20 if level == "quick" else 100
    eps = 1e-11
    for n in range(count):
        p = random_real_rooted(rng)
        alpha = float(rng.choice([0.1, 0.5, 1.0, 2.0]))
        lam = float(rng.choice([0.1, 0.5, 1.0, 2.0]))
        q = one_minus_lambda_deriv(p, lam)
        yield _true("poly", f"shift keeps real roots #{n}", is_real_rooted(q, 1e-12), q)
        yield _ge("poly", f"shift moves alpha-min #{n}", alpha_min(q, alpha, eps),
                  alpha_min(p, alpha, eps) + 1 / (1 / lam + 1 / alpha), 1e-8)
        yield _ge("poly", f"derivative moves alpha-min #{n}", alpha_min(derivative(p), alpha, eps),
                  alpha_min(p, alpha, eps) + alpha, 1e-8)
        lo = smallest_root(p, eps)
        yield _le("poly", f"alpha-min below least root #{n}", alpha_min(p, alpha, eps) + alpha, lo, 1e-8)
        yield _close("poly", f"least root two ways #{n}", lo, kth_largest_root(p, p.degree, eps), 2e-9)
        a, c = sorted(rng.uniform(-6, 6, size=2))
        b = (a + c) / 2
        yield _eq("poly", f"Sturm counts add #{n}",
                  sturm_root_count(p, a, b) + sturm_root_count(p, b, c), sturm_root_count(p, a, c))


def suite_charpoly(level: str) -> Iterator[Check]:
    rng = np.random.default_rng(12)
    diag = np.diag([1.0, 2.0, 3.5, -1.0])
    p = char_poly(diag)
    for ev in np.diag(diag):
        yield _close("charpoly", f"char poly vanishes at {ev}", p(float(ev)), 0.0, 1e-8)
    reps = 3 if level == "quick" else 10
    for n in range(reps):
        d = int(rng.integers(1, 5))
        G = rng.standard_normal((d, d + 2))
        C = G[:, :2] @ G[:, :2].T
        M = G @ G.T / (d + 2)
        biv = bivariate_det(C, M)
        for t in rng.uniform(-2, 2, size=10):
            yield _close("charpoly", f"bivariate specialises #{n} t={t:.3f}", biv.at_t(float(t)),
                         char_poly(C - float(t) * M), 1e-8)
        B = rng.standard_normal((3, 5))
        for ell in range(0, 4):
            lhs, rhs = cauchy_binet_check(B, ell)
            yield _close("charpoly", f"Cauchy-Binet #{n} l={ell}", float(lhs), float(rhs), 1e-8)
        yield _ge("charpoly", f"srank4 >= srank #{n}", stable_rank4(B), stable_rank(B), 1e-9)


def suite_expected(level: str) -> Iterator[Check]:
    shapes = [(2, 3), (2, 4), (3, 4)] if level == "quick" else [(1, 2), (2, 3), (2, 4), (3, 4), (3, 5)]
    for d, m in shapes:
        B = isotropic_instance(d, m, seed=d * 10 + m)
        for k in range(1, d + 1):
            f = conditional_expected(B, [], k)
            yield _close("expected", f"conditional(empty) is Laguerre d={d} m={m} k={k}", f,
                         laguerre_operator_poly(d, k, m), 1e-8)
            yield _true("expected", f"monic real-rooted d={d} m={m} k={k}",
                        f.degree == d and abs(f.leading - 1) < 1e-12 and is_real_rooted(f, 1e-10), f)
            if k < d:
                yield _ge("expected", f"least root beats (sqrt d - sqrt k)^2/m d={d} m={m} k={k}",
                          lambda_k(f, d, k, 1e-12), (math.sqrt(d) - math.sqrt(k)) ** 2 / m)
    for seed in range(2 if level == "quick" else 5):
        B = rational_instance(2, 3, seed)
        for k in range(1, 3):
            for j in range(k + 1):
                for assigned in combinations(range(3), j):
                    yield _eq("expected", f"conditional matches enumeration seed={seed} k={k} s={assigned}",
                              conditional_expected(B, list(assigned), k), enumerate_conditional(B, assigned, k))
    for d, m in ([(2, 4)] if level == "quick" else [(2, 4), (2, 5), (3, 5)]):
        B = rational_isotropic_instance(d, m, seed=d + m)
        for k in range(1, d + 1):
            tree = without_replacement_tree(B, k)
            for T, f in tree.items():
                if len(T) < k:
                    kids = [tree[tuple(sorted(T + (i,)))] for i in range(m) if i not in T]
                    mean = sum(kids[1:], kids[0]) / len(kids)
                    yield _eq("expected", f"Jacobi node is average of children d={d} m={m} k={k} T={T}", f, mean)


def suite_bounds(level: str) -> Iterator[Check]:
    top = 8 if level == "quick" else 12
    for m in range(2, top + 1):
        for d in range(1, m + 1):
            for k in range(0, d + 1):
                yield _ge("bounds", f"jacobi beats legacy m={m} d={d} k={k}",
                          jacobi_bound(d, k, m), legacy_isotropic_bound(d, k, m), 1e-12)
                if 1 <= k < d < m:
                    a = alpha_star(m, d, k)
                    yield _close("bounds", f"u(alpha*) is the Jacobi bound m={m} d={d} k={k}",
                                 u_alpha(a, m, d, k), jacobi_bound(d, k, m), 1e-10)
                if 1 <= k < d:
                    yield _ge("bounds", f"Krasikov above (sqrt d - sqrt k)^2 d={d} k={k}",
                              krasikov_bound(k, d - k), (math.sqrt(d) - math.sqrt(k)) ** 2)
    rng = np.random.default_rng(14)
    for n in range(3 if level == "quick" else 10):
        B = gaussian_instance(3, 6, seed=int(rng.integers(1 << 30)))
        k = 1
        yield _ge("bounds", f"schatten >= ss #{n}", schatten_bound(B @ B.T, k, 6), ss_bound(B, k), 1e-12)


def suite_select(level: str) -> Iterator[Check]:
    eps = 1e-9
    cases = [(3, 6, 0), (4, 8, 1)] if level == "quick" else [(3, 6, 0), (3, 6, 1), (4, 8, 1), (4, 8, 2), (3, 7, 3)]
    for d, m, seed in cases:
        B = isotropic_instance(d, m, seed)
        for k in range(1, d):
            best = brute_force_best_subset(B, k)[1]
            for name, run in (("with", select_with_replacement), ("without", select_without_replacement)):
                r = run(B, k, eps)
                tag = f"{name} d={d} m={m} k={k} seed={seed}"
                yield _true("select", f"distinct indices {tag}", len(set(r.indices)) == k, r.indices)
                roots = [r.initial_root] + [s.lambda_k for s in r.root_trace]
                for i in range(k):
                    yield _ge("select", f"trace non-decreasing step {i} {tag}", roots[i + 1], roots[i], eps)
                yield _ge("select", f"certificate covers final root {tag}", r.sigma_min_sq, roots[-1], eps)
                yield _ge("select", f"certificate covers initial root {tag}", r.sigma_min_sq, r.initial_root, eps)
                yield _le("select", f"greedy below brute force {tag}", r.sigma_min_sq, best, 1e-9)
                if name == "with":
                    yield _ge("select", f"isotropic bound {tag}", r.sigma_min_sq,
                              (math.sqrt(d) - math.sqrt(k)) ** 2 / m, 1e-7)
                else:
                    yield _ge("select", f"Jacobi bound {tag}", r.sigma_min_sq, jacobi_bound(d, k, m), 1e-7)
                    yield _close("select", f"Jacobi root path {tag}", smallest_root(jacobi_root_poly(d, k, m), 1e-12),
                                 r.initial_root, 1e-7)
                yield _eq("select", f"deterministic {tag}", run(B, k, eps).indices, r.indices)
    B = gaussian_instance(3, 6, seed=5)
    A = B @ B.T
    for k in range(1, int(math.floor(kappa(A))) + 1):
        r = select_with_replacement(B, k, eps)
        yield _ge("select", f"Schatten bound nonisotropic k={k}", r.sigma_min_sq, schatten_bound(A, k, 6), 1e-7)


def suite_oracle(level: str) -> Iterator[Check]:
    shapes = [(2, 3)] if level == "quick" else [(2, 3), (2, 4), (3, 4)]
    for d, m in shapes:
        B = rational_instance(d, m, seed=d + m)
        M = gram_outer(B) / m
        eigs = [kth_largest_root(char_poly(M), j, 1e-14) for j in range(1, d + 1)]
        for k in range(1, d + 1):
            lifted = nonisotropic_expected(eigs, k)
            yield _close("oracle", f"product form d={d} m={m} k={k}", enumerate_expected(B, k, "with"), lifted, 1e-8)
    for d, m in ([(2, 4), (2, 5)] if level == "quick" else [(1, 3), (2, 4), (2, 5), (3, 5)]):
        B = rational_isotropic_instance(d, m, seed=m)
        for t in range(0, d + 1):
            for T in combinations(range(m), t):
                lhs, rhs = add_one_identity(B, T)
                yield _eq("oracle", f"add-one identity d={d} m={m} T={T}", lhs, rhs)
        for k in range(1, min(d, 3) + 1):
            tree = without_replacement_tree(B, k)
            for T, sibs in sibling_sets(tree, m, k).items():
                yield _true("oracle", f"siblings interlace d={d} m={m} k={k} T={T}",
                            common_interlacing_check(sibs), [str(s) for s in sibs])
            for mode in ("with", "without"):
                yield _true("oracle", f"leaf beats root d={d} m={m} k={k} {mode}",
                            kth_root_leaf_check(B, k, mode), (d, m, k, mode))


SUITES: dict[str, Callable[[str], Iterator[Check]]] = {
    "poly": suite_poly,
    "charpoly": suite_charpoly,
    "expected": suite_expected,
    "bounds": suite_bounds,
    "select": suite_select,
    "oracle": suite_oracle,
}


def run(level: str = "quick") -> list[Check]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    return [c for suite in SUITES.values() for c in suite(level)]
