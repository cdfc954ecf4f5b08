"""(theta,delta)-cyclic codes over F_q, (sigma,delta)-cyclic codes over R_l, Gray images."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import gfmatrix
from .distance import DistanceResult, column_search, enumeration_distance
from .galois import GF
from .ring_rl import IdempotentSet, RlRing, crt_decompose, sigma_fixes_idempotents
from .skew import SkewPoly, SkewRing, is_right_divisor, right_divide

__all__ = [
    "CodeError",
    "LinearCode",
    "SkewCyclicCode",
    "RlCode",
    "GrayMap",
    "tau_shift",
    "code_from_generator",
    "parity_check",
    "min_distance",
    "classify",
    "rl_code_build",
    "gray_matrix_check",
    "gray_apply",
    "gray_image",
]


class CodeError(ValueError):
    pass


def tau_shift(c: Sequence, S: SkewRing) -> tuple:
    """(sigma(c_{n-1}) + delta(c_0), sigma(c_0) + delta(c_1), ..., sigma(c_{n-2}) + delta(c_{n-1}))."""
    B = S.base
    n = len(c)
    return tuple(B.add(S.sigma(c[i - 1]), S.delta(c[i])) for i in range(n))


def parity_check(G: np.ndarray, F: GF) -> np.ndarray:
    """H with G H^T = 0 and rank n - k, from the reduced echelon form of G."""
    return gfmatrix.nullspace(F, G)


@dataclass(eq=False)
class LinearCode:
    field: GF
    G: np.ndarray
    H: np.ndarray = dc_field(init=False, repr=False)
    distance: DistanceResult | None = dc_field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.G = np.asarray(self.G, dtype=np.int32)
        if self.G.ndim != 2:
            raise CodeError("generator matrix must be 2-D")
        rk = gfmatrix.rank(self.field, self.G) if self.G.shape[0] else 0
        if rk != self.G.shape[0]:
            raise CodeError(f"generator matrix has rank {rk} < {self.G.shape[0]} rows")
        self.H = parity_check(self.G, self.field)

    @classmethod
    def zero(cls, F: GF, n: int) -> "LinearCode":
        return cls(F, np.zeros((0, n), dtype=np.int32))

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int32)
        if v.shape != (self.n,):
            raise CodeError(f"vector of length {v.shape} is not in F^{self.n}")
        if self.H.shape[0] == 0:
            return True
        return not gfmatrix.matmul(self.field, self.H, v[:, None]).any()

    def codewords(self, limit: int = 1 << 16) -> np.ndarray:
        if self.field.q**self.k > limit:
            raise CodeError(f"{self.field.q}^{self.k} codewords exceed limit {limit}")
        return gfmatrix.all_codewords(self.field, self.G)

    @property
    def params(self) -> tuple[int, int, int | None]:
        return (self.n, self.k, self.distance.d if self.distance else None)


@dataclass(eq=False)
class SkewCyclicCode:
    g: SkewPoly
    n: int
    ring: SkewRing
    code: LinearCode

    @property
    def k(self) -> int:
        return self.code.k


def generator_rows(g: SkewPoly, n: int, k: int) -> list[tuple]:
    row = g.padded(n)
    rows = [row]
    for _ in range(k - 1):
        row = tau_shift(row, g.ring)
        rows.append(row)
    return rows


def code_from_generator(g: SkewPoly, n: int, check_divisor: bool = True) -> SkewCyclicCode:
    """Rows tau^i(g), 0 <= i < n - deg g."""
    S = g.ring
    if S.over_rl():
        raise CodeError("code_from_generator works over a field; use rl_code_build for R_l")
    if g.is_zero() or not g.is_monic():
        raise CodeError("generator must be monic")
    if g.degree >= n:
        raise CodeError(f"deg g = {g.degree} must be < n = {n}")
    if check_divisor and not is_right_divisor(g, n):
        raise CodeError(f"g does not right-divide x^{n} - 1")
    k = n - g.degree
    rows = generator_rows(g, n, k)
    G = np.array(rows, dtype=np.int32).reshape(k, n)
    try:
        code = LinearCode(S.field, G)
    except CodeError as exc:
        raise CodeError(f"structural anomaly: {exc}") from None
    nxt = tau_shift(rows[-1], S)
    if not code.contains(nxt):
        raise CodeError("structural anomaly: tau of the last generator row leaves the code")
    return SkewCyclicCode(g, n, S, code)


def min_distance(
    code: LinearCode,
    max_w: int | None = None,
    budget: int | None = None,
    enum_limit: int = 1 << 16,
    workers: int = 1,
) -> DistanceResult:
    """Column-dependency search, cross-checked by enumeration when q^k <= enum_limit."""
    F = code.field
    if code.k == 0:
        raise CodeError("the zero code has no minimum distance")
    res = column_search(F, code.H, max_w=max_w, budget=budget, workers=workers)
    if F.q**code.k <= enum_limit:
        oracle = enumeration_distance(F, code.G, limit=enum_limit)
        if res.exact and res.d != oracle.d:
            raise AssertionError(f"column search d={res.d} but enumeration d={oracle.d}")
        if res.exact:
            res.method = "columns+enumeration"
        elif max_w is None or oracle.d <= max_w:
            res = oracle
    if res.witness is not None and not code.contains(res.witness):
        raise AssertionError("distance witness is not a codeword")
    code.distance = res
    return res


def classify(n: int, k: int, d: int, exact: bool = True) -> str:
    if not exact:
        raise CodeError("classification needs an exact distance")
    if n + 1 == k + d:
        return "MDS"
    if n == k + d:
        return "almost-MDS"
    return "neither"


# -- R_l codes --------------------------------------------------------


def lift_to_rl(f: SkewPoly, T: SkewRing, gamma=None) -> SkewPoly:
    """Embed a field polynomial in R_l[x], optionally multiplied by gamma."""
    R: RlRing = T.base
    coeffs = []
    for c in f.coeffs:
        e = R.scalar(c)
        coeffs.append(R.mul(gamma, e) if gamma is not None else e)
    return T.poly(tuple(coeffs))


@dataclass(eq=False)
class RlCode:
    components: list[SkewCyclicCode]
    idempotents: IdempotentSet
    ring: SkewRing  # R_l[x; sigma, delta]
    f: SkewPoly
    cofactor: SkewPoly

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def l(self) -> int:
        return len(self.components)


def rl_code_build(
    generators: Sequence[SkewPoly], n: int, S: SkewRing, check: bool = True
) -> RlCode:
    """C = sum gamma_i C_i with C_i = <g_i>, generated by f = sum gamma_i g_i."""
    l = len(generators)
    if l < 2:
        raise CodeError("an R_l code needs at least two components")
    T = SkewRing.inner(S.field, alpha=S.alpha, e=S.theta.e, l=l)
    R: RlRing = T.base
    idem = R.idempotents
    if not sigma_fixes_idempotents(T.sigma, idem):
        raise CodeError(
            f"sigma does not fix the idempotents of R_{l} over F_{S.field.q}; "
            "the component decomposition does not apply"
        )
    comps = []
    for i, g in enumerate(generators):
        try:
            comps.append(code_from_generator(g, n))
        except CodeError as exc:
            raise CodeError(f"component {i + 1}: {exc}") from None
    f = T.zero()
    cof = T.zero()
    xn1 = S.x_n_minus_1(n)
    for gamma, g in zip(idem.gammas, generators):
        f = f + lift_to_rl(g, T, gamma)
        q, r = right_divide(xn1, g)
        cof = cof + lift_to_rl(q, T, gamma)
    if check:
        if cof * f != T.x_n_minus_1(n):
            raise CodeError("f does not right-divide x^n - 1 in R_l[x; sigma, delta]")
        for i, (gamma, g) in enumerate(zip(idem.gammas, generators)):
            if f.scale_left(gamma) != lift_to_rl(g, T, gamma):
                raise CodeError(f"gamma_{i + 1} f != gamma_{i + 1} g_{i + 1}")
    return RlCode(comps, idem, T, f, cof)


@dataclass(eq=False)
class GrayMap:
    """Phi(r) = coords(r) N with N N^T = beta I.

    ``coords="v"`` feeds the v-basis coefficients (a_0, ..., a_{l-1});
    ``coords="crt"`` feeds the idempotent coordinates (r_1, ..., r_l).
    """

    field: GF
    N: np.ndarray
    beta: int
    coords: str = "v"
    name: str = ""

    @property
    def l(self) -> int:
        return self.N.shape[0]


def gray_matrix_check(F: GF, N, coords: str = "v", name: str = "") -> GrayMap:
    N = np.asarray(N, dtype=np.int32)
    if N.ndim != 2 or N.shape[0] != N.shape[1]:
        raise CodeError("Gray matrix must be square")
    if coords not in ("v", "crt"):
        raise CodeError(f"unknown coordinate reading {coords!r}")
    l = N.shape[0]
    if gfmatrix.rank(F, N) != l:
        raise CodeError("Gray matrix is singular")
    P = gfmatrix.matmul(F, N, gfmatrix.transpose(N))
    beta = int(P[0, 0])
    if beta == 0 or not np.array_equal(P, F.mul_table[beta, np.eye(l, dtype=np.int32)]):
        raise CodeError("N N^T is not a nonzero multiple of the identity")
    return GrayMap(F, N, beta, coords, name)


def _coords(r, gray: GrayMap, idem: IdempotentSet) -> list[int]:
    if gray.coords == "v":
        return list(r)
    return crt_decompose(r, idem)


def gray_apply(r, gray: GrayMap, idem: IdempotentSet) -> tuple[int, ...]:
    F = gray.field
    a = _coords(r, gray, idem)
    return tuple(
        F.sum(F.mul(a[j], int(gray.N[j, col])) for j in range(gray.l)) for col in range(gray.l)
    )


def gray_image(code: RlCode, gray: GrayMap, samples: int = 16) -> LinearCode:
    """Phi applied coordinatewise to gamma_i * row for every row of every G_i."""
    if gray.l != code.l:
        raise CodeError(f"Gray matrix is {gray.l}x{gray.l} but the code has l={code.l}")
    idem = code.idempotents
    R: RlRing = idem.ring
    F = R.field
    if F != gray.field:
        raise CodeError("Gray matrix and code live over different fields")
    rows = []
    for gamma, comp in zip(idem.gammas, code.components):
        for row in comp.code.G:
            word: list[int] = []
            for c in row:
                word.extend(gray_apply(R.scale(int(c), gamma), gray, idem))
            rows.append(word)
    G = np.array(rows, dtype=np.int32).reshape(len(rows), code.n * code.l)
    try:
        image = LinearCode(F, G)
    except CodeError as exc:
        raise CodeError(f"Gray image is rank deficient: {exc}") from None

    rng = random.Random(0)
    for _ in range(samples):
        a = tuple(rng.randrange(F.q) for _ in range(R.l))
        b = tuple(rng.randrange(F.q) for _ in range(R.l))
        s = rng.randrange(F.q)
        lhs = gray_apply(R.add(a, R.scale(s, b)), gray, idem)
        pa, pb = gray_apply(a, gray, idem), gray_apply(b, gray, idem)
        rhs = tuple(F.add(x, F.mul(s, y)) for x, y in zip(pa, pb))
        if lhs != rhs:
            raise AssertionError("Gray map is not F_q-linear")
    return image
