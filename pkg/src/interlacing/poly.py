"""Dense univariate polynomials and Sturm-sequence root search.

Coefficients are stored ascending by degree and may be Python floats or exact
rationals (``int`` / ``fractions.Fraction``).  Exact polynomials stay exact under
every operation here; root locations are always returned as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9
DEFAULT_TOL = 1e-12


class InexactDivisionError(ArithmeticError):
    """A division that should have been exact left a nonnegligible remainder."""


def _scalar(c):
    if isinstance(c, (bool, np.bool_)):
        return int(c)
    if isinstance(c, np.integer):
        return int(c)
    if isinstance(c, np.floating):
        return float(c)
    return c


def is_exact_scalar(c) -> bool:
    return isinstance(c, (int, Fraction))


def _div(a, b):
    """``a / b`` that stays in the rationals when both operands are exact."""
    if is_exact_scalar(a) and is_exact_scalar(b):
        return Fraction(a) / Fraction(b)
    return a / b


class Polynomial:
    """Immutable dense polynomial ``sum(coeffs[i] * x**i)``.

    The coefficient tuple is canonical: trailing zeros are stripped and the zero
    polynomial is ``(0,)``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = [_scalar(c) for c in coeffs]
        if any(isinstance(c, float) and not math.isfinite(c) for c in cs):
            raise ValueError("coefficients must be finite")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Polynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def is_exact(self) -> bool:
        return all(is_exact_scalar(c) for c in self.coeffs)

    def max_abs(self):
        return max(abs(c) for c in self.coeffs)

    def to_float(self) -> Polynomial:
        return Polynomial(float(c) for c in self.coeffs)

    def to_exact(self) -> Polynomial:
        return Polynomial(Fraction(c) for c in self.coeffs)

    def float_coeffs(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)

    # arithmetic

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, Number):
                other = Polynomial((other,))
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return Polynomial(out)
        if isinstance(other, Number):
            return Polynomial(_scalar(other) * c for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial) or not isinstance(scalar, Number):
            return NotImplemented
        return Polynomial(_div(c, _scalar(scalar)) for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Polynomial):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.leading
        if self.degree < db:
            return Polynomial((0,)), self
        quot = [0] * (self.degree - db + 1)
        for i in range(self.degree - db, -1, -1):
            q = _div(rem[i + db], lead)
            quot[i] = q
            if q == 0:
                continue
            for j, bj in enumerate(other.coeffs):
                rem[i + j] -= q * bj
            rem[i + db] = 0 * q
        return Polynomial(quot), Polynomial(rem[:db] if db > 0 else [0])

    def __floordiv__(self, other: Polynomial):
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Number):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    # calculus and transformations

    def derivative(self, n: int = 1) -> Polynomial:
        cs = self.coeffs
        for _ in range(n):
            if len(cs) <= 1:
                return Polynomial((0 * cs[0],))
            cs = tuple(i * cs[i] for i in range(1, len(cs)))
        return Polynomial(cs)

    def monic(self) -> Polynomial:
        if self.is_zero:
            raise ValueError("zero polynomial has no monic form")
        return self / self.leading

    def scale_x(self, c) -> Polynomial:
        """Return ``p(c * x)``."""
        out, power = [], 1
        for coef in self.coeffs:
            out.append(coef * power)
            power = power * c
        return Polynomial(out)

    def compose(self, q: Polynomial) -> Polynomial:
        """Return ``p(q(x))``."""
        acc = Polynomial((0,))
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def shift_up(self, n: int) -> Polynomial:
        """Multiply by ``x**n``."""
        if self.is_zero:
            return self
        return Polynomial([0] * n + list(self.coeffs))

    def trimmed(self, rtol: float = DEFAULT_TOL) -> Polynomial:
        """Zero out float coefficients below ``rtol * max|c|``."""
        if self.is_exact or self.is_zero:
            return self
        cut = rtol * self.max_abs()
        return Polynomial(0.0 if abs(c) <= cut else c for c in self.coeffs)

    def allclose(self, other: Polynomial, rtol: float = 1e-8, atol: float = 0.0) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        scale = max(max(abs(float(c)) for c in a), max(abs(float(c)) for c in b), 1e-300)
        return all(abs(float(x - y)) <= atol + rtol * scale for x, y in zip(a, b))


X = Polynomial.x()


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def one_minus_lambda_deriv(p: Polynomial, lam) -> Polynomial:
    """Apply ``(1 - lam * d/dx)`` to ``p``."""
    return p - p.derivative() * lam


def divide_exact(p: Polynomial, q: Polynomial, rtol: float = 1e-8) -> Polynomial:
    """Quotient ``p / q`` for a division known to be exact.

    Raises :class:`InexactDivisionError` when the remainder exceeds
    ``rtol * max|coeffs of p|`` (exact inputs require a zero remainder).
    """
    quot, rem = divmod(p, q)
    if p.is_exact and q.is_exact:
        if not rem.is_zero:
            raise InexactDivisionError(f"nonzero remainder {rem!r}")
    elif float(rem.max_abs()) > rtol * max(float(p.max_abs()), 1e-300):
        raise InexactDivisionError(f"remainder {rem!r} too large for {p!r} / {q!r}")
    return quot


def divide_by_x_power(p: Polynomial, n: int, rtol: float = 1e-8) -> Polynomial:
    """Drop ``n`` low-order coefficients, checking that they vanish."""
    if n == 0:
        return p
    low, high = p.coeffs[:n], p.coeffs[n:]
    bound = 0.0 if p.is_exact else rtol * float(p.max_abs())
    if any(abs(float(c)) > bound for c in low):
        raise InexactDivisionError(f"{p!r} is not divisible by x^{n}")
    return Polynomial(high if high else (0,))


# gcd / squarefree machinery


def _normalize(p: Polynomial) -> Polynomial:
    if p.is_zero:
        return p
    # positive scaling only: Sturm chains depend on signs
    if p.is_exact:
        return p / abs(p.leading)
    return p / float(p.max_abs())


def poly_gcd(a: Polynomial, b: Polynomial, tol: float = DEFAULT_TOL) -> Polynomial:
    """Monic gcd by the Euclidean algorithm.

    For float input, remainder coefficients below ``tol`` (relative to
    max-normalised operands) are treated as zero.
    """
    a, b = _normalize(a), _normalize(b)
    if a.is_zero:
        return b.monic() if not b.is_zero else a
    while not b.is_zero:
        r = a % b
        if not r.is_exact:
            r = Polynomial(0.0 if abs(c) <= tol else c for c in r.coeffs)
        a, b = b, _normalize(r)
    return a.monic()


def squarefree_part(p: Polynomial, tol: float = DEFAULT_TOL) -> Polynomial:
    if p.degree <= 1:
        return p
    g = poly_gcd(p, p.derivative(), tol)
    if g.degree == 0:
        return p
    return p // g


def sturm_chain(p: Polynomial, tol: float = DEFAULT_TOL) -> list[Polynomial]:
    """Sturm sequence of the squarefree part of ``p``.

    Elements are rescaled by positive constants, which leaves sign patterns
    untouched.
    """
    if p.is_zero:
        raise ValueError("Sturm chain of the zero polynomial")
    s = _normalize(squarefree_part(p, tol))
    chain = [s]
    if s.degree == 0:
        return chain
    chain.append(_normalize(s.derivative()))
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if not r.is_exact:
            r = Polynomial(0.0 if abs(c) <= tol else c for c in r.coeffs)
        if r.is_zero:
            break
        chain.append(_normalize(r))
    return chain


class _Chain:
    """Float view of a Sturm chain for fast sign-variation counts."""

    __slots__ = ("polys", "leads", "degrees")

    def __init__(self, chain: Sequence[Polynomial]):
        self.polys = [p.float_coeffs() for p in chain]
        self.leads = [c[-1] for c in self.polys]
        self.degrees = [len(c) - 1 for c in self.polys]

    def head(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.polys[0]):
            acc = acc * x + c
        return acc

    def variations(self, x: float) -> int:
        if math.isinf(x):
            signs = [
                math.copysign(1.0, lead) * (1.0 if (x > 0 or deg % 2 == 0) else -1.0)
                for lead, deg in zip(self.leads, self.degrees)
            ]
        else:
            signs = []
            for cs in self.polys:
                acc = 0.0
                for c in reversed(cs):
                    acc = acc * x + c
                if acc != 0.0:
                    signs.append(acc)
        count = 0
        for u, v in zip(signs, signs[1:]):
            if (u < 0) != (v < 0):
                count += 1
        return count

    def count(self, lo: float, hi: float) -> int:
        return self.variations(lo) - self.variations(hi)


@dataclass(frozen=True)
class RootInterval:
    """Half-open interval ``(lo, hi]`` holding ``count`` distinct real roots."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("RootInterval requires lo < hi")
        if self.count < 0:
            raise ValueError("negative root count")


def cauchy_bound(p: Polynomial) -> float:
    """Every root of ``p`` has absolute value strictly below this bound."""
    if p.degree < 1:
        return 1.0
    lead = abs(float(p.leading))
    return 1.0 + max(abs(float(c)) for c in p.coeffs[:-1]) / lead


def sturm_root_count(p: Polynomial, lo: float, hi: float, tol: float = DEFAULT_TOL) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi}]")
    return _Chain(sturm_chain(p, tol)).count(float(lo), float(hi))


def _gcd_tower(p: Polynomial, tol: float) -> list[_Chain]:
    """Chains for p, gcd(p, p'), gcd of that with its derivative, ...

    A root of multiplicity r is a distinct root of exactly the first r layers,
    so summing distinct counts over layers counts roots with multiplicity.
    """
    layers = []
    g = p
    while g.degree >= 1:
        layers.append(_Chain(sturm_chain(g, tol)))
        g = poly_gcd(g, g.derivative(), tol)
    return layers


def real_root_count(p: Polynomial, lo: float = -math.inf, hi: float = math.inf,
                    tol: float = DEFAULT_TOL) -> int:
    """Real roots of ``p`` in ``(lo, hi]`` counted with multiplicity."""
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    return sum(c.count(lo, hi) for c in _gcd_tower(p, tol))


def is_real_rooted(p: Polynomial, tol: float = DEFAULT_TOL) -> bool:
    if p.is_zero:
        raise ValueError("real-rootedness of the zero polynomial")
    if p.degree == 0:
        return True
    return real_root_count(p, tol=tol) == p.degree


def isolate_roots(p: Polynomial, tol: float = DEFAULT_TOL, width: float = 1e-3) -> list[RootInterval]:
    """Disjoint intervals each holding exactly one distinct real root, ascending."""
    chain = _Chain(sturm_chain(p, tol))
    r = cauchy_bound(p)
    out = []
    stack = [(-r, r)]
    while stack:
        lo, hi = stack.pop()
        n = chain.count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(lo, hi, 1))
            continue
        mid = 0.5 * (lo + hi)
        if hi - lo < width * 1e-9 or mid in (lo, hi):
            out.append(RootInterval(lo, hi, n))
            continue
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out, key=lambda iv: iv.lo)


def _refine(chain: _Chain, lo: float, hi: float, eps: float) -> float:
    """Shrink ``(lo, hi]`` holding exactly one distinct root to width ``eps``."""
    f_lo, f_hi = chain.head(lo), chain.head(hi)
    sign_mode = f_lo != 0.0 and f_hi != 0.0 and (f_lo < 0) != (f_hi < 0)
    v_lo = chain.variations(lo)
    while hi - lo > eps:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sign_mode:
            f_mid = chain.head(mid)
            if f_mid == 0.0:
                return mid
            if (f_mid < 0) == (f_lo < 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        else:
            # no root in (lo, mid] leaves the variation count at lo unchanged
            if v_lo - chain.variations(mid) >= 1:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def smallest_root(p: Polynomial, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> float:
    """Least real root of ``p`` to within ``eps`` (Cauchy bracket, Sturm bisection)."""
    if p.is_zero:
        raise ValueError("smallest root of the zero polynomial")
    chain = _Chain(sturm_chain(p, tol))
    r = cauchy_bound(p)
    lo, hi = -r, r
    v_lo = chain.variations(lo)
    n = v_lo - chain.variations(hi)
    if n <= 0:
        raise ValueError(f"no real root detected for {p!r}")
    target = eps / 4
    while n > 1 and hi - lo > target:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        k = v_lo - chain.variations(mid)
        if k >= 1:
            hi, n = mid, k
        else:
            lo = mid
    return _refine(chain, lo, hi, target)


def kth_largest_root(p: Polynomial, j: int, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> float:
    """The ``j``-th largest real root of ``p``, counting multiplicity."""
    if p.is_zero:
        raise ValueError("roots of the zero polynomial")
    if not 1 <= j <= p.degree:
        raise ValueError(f"root index {j} out of range for degree {p.degree}")
    tower = _gcd_tower(p, tol)
    total = sum(c.count(-math.inf, math.inf) for c in tower)
    if total < j:
        raise ValueError(f"only {total} real roots, cannot take root {j}")
    r = cauchy_bound(p)
    lo, hi = -r, r
    target = eps / 4

    def above(x):
        return sum(c.count(x, math.inf) for c in tower)

    while hi - lo > target:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if above(mid) >= j:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def barrier_phi(p: Polynomial, x) -> float:
    """Lower barrier ``-p'(x) / p(x)``."""
    v = p(x)
    if v == 0:
        raise ValueError(f"barrier undefined at a root ({x})")
    return _div(-p.derivative()(x), v)


def alpha_min(p: Polynomial, alpha, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> float:
    """Least root of ``p + alpha * p'``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return smallest_root(p + p.derivative() * alpha, eps, tol)
