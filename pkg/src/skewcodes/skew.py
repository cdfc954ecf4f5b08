"""Skew polynomial rings R[x; sigma, delta] with x r = sigma(r) x + delta(r).

R is either a finite field (``GF``) or ``RlRing``. Polynomials are immutable
ascending coefficient tuples; multiplication is iterated commutation, never the
binomial shortcut (that identity needs delta and sigma to commute).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .galois import GF, Frobenius
from .ring_rl import InnerDerivation, RingAut, RlRing

__all__ = [
    "SkewError",
    "SkewRing",
    "SkewPoly",
    "DivisorScan",
    "right_divide",
    "is_right_divisor",
    "x_pow_times",
    "binomial_x_pow_times",
    "enumerate_right_divisors",
    "reverse_poly",
    "all_one_poly",
]


class SkewError(ValueError):
    pass


class SkewRing:
    """Coefficient ring plus the twist (sigma, delta).

    Build with :meth:`inner` for the usual delta = alpha(theta - id).
    """

    def __init__(self, base, sigma, delta) -> None:
        self.base = base
        self.sigma = sigma
        self.delta = delta

    @classmethod
    def inner(cls, field: GF, alpha: int = 0, e: int = 1, l: int | None = None) -> "SkewRing":
        """F_q[x; theta, alpha(theta - id)] or, with ``l``, R_l[x; sigma, alpha(sigma - id)]."""
        theta = Frobenius(field, e)
        if l is None:
            return cls(field, theta, InnerDerivation(field, theta, alpha))
        R = RlRing(field, l)
        sigma = RingAut(R, theta)
        return cls(R, sigma, InnerDerivation(R, sigma, alpha))

    @property
    def field(self) -> GF:
        return self.base.field if isinstance(self.base, RlRing) else self.base

    @property
    def theta(self) -> Frobenius:
        s = self.sigma
        return s.theta if isinstance(s, RingAut) else s

    @property
    def alpha(self):
        return getattr(self.delta, "alpha", None)

    def over_rl(self) -> bool:
        return isinstance(self.base, RlRing)

    def __repr__(self) -> str:
        return f"SkewRing({self.base!r}, {self.theta!r}, alpha={self.alpha!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SkewRing)
            and self.base == other.base
            and self.theta.e == other.theta.e
            and self.alpha == other.alpha
        )

    def __hash__(self) -> int:
        return hash((self.base, self.theta.e, self.alpha))

    # -- constructors ---------------------------------------------------
    def poly(self, coeffs: Sequence) -> "SkewPoly":
        return SkewPoly(self, _trim(self.base, tuple(coeffs)))

    def zero(self) -> "SkewPoly":
        return SkewPoly(self, ())

    def one(self) -> "SkewPoly":
        return SkewPoly(self, (self.base.one,))

    def x(self, k: int = 1) -> "SkewPoly":
        B = self.base
        return SkewPoly(self, (B.zero,) * k + (B.one,))

    def constant(self, a) -> "SkewPoly":
        return self.poly((a,))

    def x_n_minus_1(self, n: int) -> "SkewPoly":
        B = self.base
        return self.poly((B.neg(B.one),) + (B.zero,) * (n - 1) + (B.one,))

    # -- core kernels ---------------------------------------------------
    def times_x(self, coeffs: tuple) -> tuple:
        """Left multiplication by x: x * sum c_j x^j = sum sigma(c_j) x^(j+1) + delta(c_j) x^j."""
        B = self.base
        out = [B.zero] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            if B.is_zero(c):
                continue
            out[j + 1] = B.add(out[j + 1], self.sigma(c))
            out[j] = B.add(out[j], self.delta(c))
        return _trim(B, tuple(out))

    def mul(self, f: tuple, g: tuple) -> tuple:
        B = self.base
        if not f or not g:
            return ()
        out = [B.zero] * (len(f) + len(g) - 1)
        cur = g  # x^i * g
        for i, a in enumerate(f):
            if not B.is_zero(a):
                for j, c in enumerate(cur):
                    out[j] = B.add(out[j], B.mul(a, c))
            if i + 1 < len(f):
                cur = self.times_x(cur)
        return _trim(B, tuple(out))


def _trim(B, coeffs: tuple) -> tuple:
    n = len(coeffs)
    while n and B.is_zero(coeffs[n - 1]):
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class SkewPoly:
    ring: SkewRing = dc_field(repr=False)
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.base.one

    def coeff(self, i: int):
        """Coefficient of x^i, zero outside the stored range."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.base.zero

    def padded(self, n: int) -> tuple:
        if len(self.coeffs) > n:
            raise SkewError(f"degree {self.degree} does not fit in length {n}")
        return self.coeffs + (self.ring.base.zero,) * (n - len(self.coeffs))

    def _same(self, other: "SkewPoly") -> None:
        if not isinstance(other, SkewPoly) or other.ring != self.ring:
            raise SkewError("polynomials live in different skew rings")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._same(other)
        B = self.ring.base
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.padded(n), other.padded(n)
        return self.ring.poly(tuple(B.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> "SkewPoly":
        B = self.ring.base
        return SkewPoly(self.ring, tuple(B.neg(c) for c in self.coeffs))

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        self._same(other)
        return SkewPoly(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    def scale_left(self, a) -> "SkewPoly":
        B = self.ring.base
        return self.ring.poly(tuple(B.mul(a, c) for c in self.coeffs))

    def map_coeffs(self, fn) -> "SkewPoly":
        return self.ring.poly(tuple(fn(c) for c in self.coeffs))

    def __repr__(self) -> str:
        from .notation import format_poly

        return f"SkewPoly({format_poly(self)!r})"


def right_divide(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """Return (q, r) with f = q*g + r and deg r < deg g."""
    f._same(g)
    if g.is_zero():
        raise ZeroDivisionError("right division by the zero polynomial")
    S = f.ring
    B = S.base
    if not B.is_unit(g.lead):
        raise SkewError("leading coefficient of the divisor is not a unit")
    dg = g.degree
    rem = list(f.coeffs)
    quo = [B.zero] * max(len(rem) - dg, 0)
    # powers[s] = x^s * g, built on demand
    powers = [g.coeffs]
    while len(rem) - 1 >= dg:
        s = len(rem) - 1 - dg
        while len(powers) <= s:
            powers.append(S.times_x(powers[-1]))
        xg = powers[s]
        a = B.mul(rem[-1], B.inv(xg[-1]))
        quo[s] = B.add(quo[s], a)
        for j, c in enumerate(xg):
            rem[j] = B.sub(rem[j], B.mul(a, c))
        rem = list(_trim(B, tuple(rem)))
    q, r = S.poly(quo), S.poly(rem)
    if q * g + r != f:
        raise AssertionError("right division failed to reconstruct the dividend")
    return q, r


def is_right_divisor(g: SkewPoly, n: int) -> bool:
    if n < 1:
        raise SkewError("n must be >= 1")
    return right_divide(g.ring.x_n_minus_1(n), g)[1].is_zero()


def x_pow_times(S: SkewRing, n: int, a) -> SkewPoly:
    """x^n * a by iterated commutation."""
    coeffs = (a,)
    for _ in range(n):
        coeffs = S.times_x(coeffs)
    return S.poly(coeffs)


def binomial_x_pow_times(S: SkewRing, n: int, a) -> SkewPoly:
    """sum_k C(n,k) (theta^(n-k) delta^k)(a) x^(n-k), binomials reduced mod p.

    Equals ``x_pow_times`` only when delta commutes with sigma.
    """
    B = S.base
    p = S.field.p
    coeffs = [B.zero] * (n + 1)
    d = a
    for k in range(n + 1):
        term = d
        for _ in range(n - k):
            term = S.sigma(term)
        c = comb(n, k) % p
        acc = B.zero
        for _ in range(c):
            acc = B.add(acc, term)
        coeffs[n - k] = acc
        d = S.delta(d)
    return S.poly(coeffs)


def reverse_poly(a: SkewPoly, n: int) -> SkewPoly:
    """sum a_(n-i) x^i: mirror of the coefficient window 0..n."""
    if a.degree > n:
        raise SkewError(f"degree {a.degree} exceeds window {n}")
    return a.ring.poly(tuple(reversed(a.padded(n + 1))))


def all_one_poly(S: SkewRing, n: int) -> SkewPoly:
    """1 + x + ... + x^n."""
    return S.poly((S.base.one,) * (n + 1))


# -- divisor enumeration ----------------------------------------------


@dataclass
class DivisorScan:
    """Result of one (possibly partial) scan of monic degree-d candidates."""

    n: int
    degree: int
    divisors: list[SkewPoly]
    start: int
    next_cursor: int
    total: int
    scanned: int

    @property
    def complete(self) -> bool:
        return self.next_cursor >= self.total


def _candidate_block(q: int, d: int, lo: int, hi: int) -> np.ndarray:
    """Rows (g_0, ..., g_{d-1}) for lexicographic indices lo..hi-1 (g_0 most significant)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, d), dtype=np.int32)
    for j in range(d - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def _xn_remainders(S: SkewRing, cand: np.ndarray, n: int) -> np.ndarray:
    """Right remainder of x^n modulo each monic candidate, vectorised over rows.

    rem(x^(i+1)) = rem(x * rem(x^i)) because the left ideal R*g is closed
    under left multiplication by x.
    """
    F = S.field
    add, sub, mul = F.add_table, F.sub_table, F.mul_table
    sig = S.theta.np_table
    dl = np.array([S.delta(a) for a in range(F.q)], dtype=np.int32)
    B, d = cand.shape
    r = np.zeros((B, d), dtype=np.int32)
    r[:, 0] = 1
    for _ in range(n):
        s = np.zeros((B, d + 1), dtype=np.int32)
        s[:, 1:] = sig[r]
        s[:, :d] = add[s[:, :d], dl[r]]
        lead = s[:, d]
        r = sub[s[:, :d], mul[lead[:, None], cand]]
    return r


def enumerate_right_divisors(
    S: SkewRing,
    n: int,
    d: int,
    budget: int | None = None,
    start: int = 0,
    block: int = 1 << 16,
) -> DivisorScan:
    """All monic degree-d right divisors of x^n - 1 over a field, in lexicographic order.

    Candidates are indexed by (g_0, ..., g_{d-1}) read as base-q digits with g_0
    most significant; indices with g_0 = 0 are skipped (a right divisor of
    x^n - 1 over a field has a unit constant term). ``start`` resumes from a
    cursor; ``budget`` caps the number of indices examined.
    """
    if S.over_rl():
        raise SkewError("divisor enumeration runs over the base field only")
    if d < 1:
        raise SkewError("degree must be >= 1")
    q = S.field.q
    total = q**d
    if d > n:
        return DivisorScan(n, d, [], start, total, total, 0)
    lo = max(start, q ** (d - 1))
    stop = total if budget is None else min(total, max(start, lo) + budget)
    found: list[SkewPoly] = []
    pos = lo
    while pos < stop:
        hi = min(stop, pos + block)
        cand = _candidate_block(q, d, pos, hi)
        r = _xn_remainders(S, cand, n)
        ok = (r[:, 0] == 1) & ~r[:, 1:].any(axis=1)
        for row in cand[ok]:
            g = S.poly(tuple(int(c) for c in row) + (1,))
            if not is_right_divisor(g, n):
                raise AssertionError(f"vectorised scan disagrees with right_divide on {g}")
            found.append(g)
        pos = hi
    scanned = max(0, stop - lo)
    return DivisorScan(n, d, found, start, stop, total, scanned)


def iter_right_divisors(S: SkewRing, n: int, d: int, budget: int | None = None) -> Iterator[SkewPoly]:
    yield from enumerate_right_divisors(S, n, d, budget=budget).divisors
