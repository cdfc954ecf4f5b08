"""The ring R_l = F_q[v]/(v^l - v), its orthogonal idempotents and twists.

Elements of R_l are tuples ``(a_0, ..., a_{l-1})`` of field ints meaning
``a_0 + a_1 v + ... + a_{l-1} v^{l-1}``.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass
from typing import Callable, Sequence

from .galois import GF, Frobenius

__all__ = [
    "RingError",
    "RlRing",
    "IdempotentSet",
    "RingAut",
    "InnerDerivation",
    "idempotent_set",
    "crt_decompose",
    "crt_compose",
    "sigma_fixes_idempotents",
]

RlElement = tuple


class RingError(ValueError):
    pass


class RlRing:
    def __init__(self, field: GF, l: int) -> None:
        if l < 2:
            raise RingError("R_l needs l >= 2")
        self.field = field
        self.l = l
        self.zero = (0,) * l
        self.one = (1,) + (0,) * (l - 1)

    def __repr__(self) -> str:
        return f"RlRing(F_{self.field.q}, l={self.l})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RlRing) and other.field == self.field and other.l == self.l

    def __hash__(self) -> int:
        return hash((self.field, self.l))

    def element(self, vcoeffs: Sequence[int]) -> RlElement:
        vcoeffs = tuple(vcoeffs)
        if len(vcoeffs) != self.l:
            raise RingError(f"expected {self.l} v-coefficients, got {len(vcoeffs)}")
        return vcoeffs

    def scalar(self, a: int) -> RlElement:
        return (a,) + (0,) * (self.l - 1)

    def v_pow(self, j: int) -> RlElement:
        # v^j = v^(j - (l-1)) for j >= l
        while j >= self.l:
            j -= self.l - 1
        out = [0] * self.l
        out[j] = 1
        return tuple(out)

    def elements(self):
        return itertools.product(self.field.elements(), repeat=self.l)

    def _check(self, *elts) -> None:
        for e in elts:
            if len(e) != self.l:
                raise RingError(f"element {e} does not belong to {self}")

    def is_zero(self, a: RlElement) -> bool:
        return not any(a)

    def add(self, a: RlElement, b: RlElement) -> RlElement:
        self._check(a, b)
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def neg(self, a: RlElement) -> RlElement:
        return tuple(self.field.neg(x) for x in a)

    def sub(self, a: RlElement, b: RlElement) -> RlElement:
        self._check(a, b)
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def mul(self, a: RlElement, b: RlElement) -> RlElement:
        self._check(a, b)
        F = self.field
        l = self.l
        out = [0] * l
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                k = i + j
                if k >= l:
                    k -= l - 1
                out[k] = F.add(out[k], F.mul(x, y))
        return tuple(out)

    def scale(self, c: int, a: RlElement) -> RlElement:
        return tuple(self.field.mul(c, x) for x in a)

    def pow(self, a: RlElement, k: int) -> RlElement:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # units are exactly the elements whose CRT coordinates are all nonzero
    def is_unit(self, a: RlElement) -> bool:
        return all(c != 0 for c in crt_decompose(a, self.idempotents))

    def inv(self, a: RlElement) -> RlElement:
        cs = crt_decompose(a, self.idempotents)
        if any(c == 0 for c in cs):
            raise ZeroDivisionError(f"{a} is not a unit of {self}")
        return crt_compose([self.field.inv(c) for c in cs], self.idempotents)

    @property
    def idempotents(self) -> "IdempotentSet":
        if not hasattr(self, "_idem"):
            self._idem = idempotent_set(self.field, self.l, ring=self)
        return self._idem


@dataclass(frozen=True)
class IdempotentSet:
    ring: RlRing
    gammas: tuple
    varsigma: int

    def __len__(self) -> int:
        return len(self.gammas)

    def __getitem__(self, i: int) -> RlElement:
        return self.gammas[i]


def idempotent_set(field: GF, l: int, ring: RlRing | None = None) -> IdempotentSet:
    """gamma_1 = 1 - v^(l-1), gamma_k = (1/(l-1)) sum_j (s^(k-2))^j v^j for k >= 2.

    ``s`` is the primitive element raised to (q-1)/(l-1), so (l-1) must divide q-1.
    Orthogonality and completeness are checked before returning.
    """
    if l < 2:
        raise RingError("need l >= 2")
    q = field.q
    if (q - 1) % (l - 1):
        raise RingError(f"(l-1)={l - 1} does not divide q-1={q - 1}")
    R = ring if ring is not None else RlRing(field, l)
    step = (q - 1) // (l - 1)
    varsigma = field.t_pow(step)
    scale = field.inv(field.prime_element(l - 1))

    gammas = [tuple([1] + [0] * (l - 2) + [field.neg(1)])]
    for k in range(2, l + 1):
        base = field.pow(varsigma, k - 2)
        coeffs = [0] + [field.mul(scale, field.pow(base, j)) for j in range(1, l)]
        gammas.append(tuple(coeffs))
    idem = IdempotentSet(R, tuple(gammas), varsigma)

    total = R.zero
    for i, gi in enumerate(gammas):
        total = R.add(total, gi)
        for j, gj in enumerate(gammas):
            want = gi if i == j else R.zero
            if R.mul(gi, gj) != want:
                raise RingError(f"gamma_{i + 1} * gamma_{j + 1} != {'gamma' if i == j else '0'}")
    if total != R.one:
        raise RingError("idempotents do not sum to 1")
    return idem


def crt_decompose(r: RlElement, idem: IdempotentSet) -> list[int]:
    """Scalars r_i with gamma_i r = gamma_i r_i."""
    R = idem.ring
    F = R.field
    out = []
    for g in idem.gammas:
        gr = R.mul(g, r)
        j = next(j for j, c in enumerate(g) if c)
        s = F.div(gr[j], g[j])
        if R.scale(s, g) != gr:
            raise RingError(f"gamma*r is not a scalar multiple of gamma for r={r}")
        out.append(s)
    return out


def crt_compose(cs: Sequence[int], idem: IdempotentSet) -> RlElement:
    R = idem.ring
    if len(cs) != R.l:
        raise RingError(f"expected {R.l} components")
    out = R.zero
    for c, g in zip(cs, idem.gammas):
        out = R.add(out, R.scale(c, g))
    return out


class RingAut:
    """sigma on R_l: theta applied to every v-coefficient."""

    def __init__(self, ring: RlRing, theta: Frobenius) -> None:
        self.ring = ring
        self.theta = theta

    def __call__(self, r: RlElement) -> RlElement:
        th = self.theta.table
        return tuple(th[a] for a in r)


class InnerDerivation:
    """delta(r) = alpha * (sigma(r) - r), on a field or on R_l.

    ``host`` is the coefficient ring (a ``GF`` or an ``RlRing``); ``sigma`` the
    automorphism; ``alpha`` an element of the host (field ints are embedded
    into R_l automatically).
    """

    def __init__(self, host, sigma: Callable, alpha) -> None:
        if isinstance(host, RlRing) and isinstance(alpha, int):
            alpha = host.scalar(alpha)
        self.host = host
        self.sigma = sigma
        self.alpha = alpha

    def __call__(self, r):
        H = self.host
        return H.mul(self.alpha, H.sub(self.sigma(r), r))

    @property
    def is_zero(self) -> bool:
        return self.host.is_zero(self.alpha)

    def commutes_with_sigma(self) -> bool:
        """delta sigma = sigma delta, which holds exactly when sigma fixes alpha."""
        return self.sigma(self.alpha) == self.alpha


def sigma_fixes_idempotents(sigma: RingAut, idem: IdempotentSet) -> bool:
    return all(sigma(g) == g for g in idem.gammas)
