"""Exact minimum distance of linear codes over F_q.

The primary method works on the parity-check matrix H: d is the size of the
smallest linearly dependent set of columns. Level w of the search asks whether
some w columns are dependent. It walks every (w-2)-subset of columns in
lexicographic order, keeping the not-yet-chosen columns reduced modulo the
span of the chosen ones. A w-set is then dependent exactly when two of the
remaining reduced columns are parallel. Finishing level w without a hit
certifies d > w. A hit certifies d <= w and yields a codeword of weight w.

Full codeword enumeration is the independent oracle for small q^k.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import gfmatrix
from .galois import GF

__all__ = ["DistanceResult", "column_search", "enumeration_distance", "BudgetExhausted"]


@dataclass
class DistanceResult:
    d: int
    exact: bool
    method: str
    witness: tuple[int, ...] | None = None
    nodes: int = 0

    @property
    def status(self) -> str:
        return "exact" if self.exact else "at_least"


class BudgetExhausted(Exception):
    pass


class _Counter:
    def __init__(self, budget: int | None) -> None:
        self.nodes = 0
        self.budget = budget

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted


def _leaf_pair(F: GF, R: np.ndarray) -> tuple[int, ...] | None:
    """Positions of a zero column or of two parallel columns of R, if any."""
    m = R.shape[1]
    if m == 0:
        return None
    if R.shape[0] == 0:
        return (0,)
    nz = R != 0
    lead_row = nz.argmax(axis=0)
    lead = R[lead_row, np.arange(m)]
    zero = np.nonzero(lead == 0)[0]
    if zero.size:
        return (int(zero[0]),)
    if m < 2:
        return None
    Rn = F.mul_table[F.inv_table[lead][None, :], R]
    r = Rn.shape[0]
    if r * np.log2(F.q) < 62:
        weights = np.int64(F.q) ** np.arange(r, dtype=np.int64)
        keys = weights @ Rn.astype(np.int64)
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        dup = np.nonzero(sk[1:] == sk[:-1])[0]
        if dup.size:
            a, b = order[dup[0]], order[dup[0] + 1]
            return (int(min(a, b)), int(max(a, b)))
        return None
    seen: dict[bytes, int] = {}
    for j in range(m):
        key = Rn[:, j].tobytes()
        if key in seen:
            return (seen[key], j)
        seen[key] = j
    return None


def _search(F: GF, R: np.ndarray, cols: list[int], depth_left: int, counter: _Counter):
    """Dependent set of size depth_left + 2 among ``cols`` (R holds their reduced forms)."""
    counter.tick()
    if depth_left == 0:
        hit = _leaf_pair(F, R)
        return None if hit is None else [cols[i] for i in hit]
    m = len(cols)
    sub, mul, inv = F.sub_table, F.mul_table, F.inv_table
    for pos in range(m - depth_left - 1):
        col = R[:, pos]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            # dependency smaller than this level; lower levels report it
            return [cols[pos]]
        p = nz[0]
        coln = mul[inv[col[p]], col]
        rest = R[:, pos + 1:]
        new = sub[rest, mul[coln[:, None], rest[p][None, :]]]
        new = np.delete(new, p, axis=0)
        hit = _search(F, new, cols[pos + 1:], depth_left - 1, counter)
        if hit is not None:
            return [cols[pos]] + hit
    return None


def _branch(args):
    F, H, w, pos, budget = args
    counter = _Counter(budget)
    cols = list(range(H.shape[1]))
    col = H[:, pos]
    nz = np.nonzero(col)[0]
    if nz.size == 0:
        return [pos], counter.nodes
    p = nz[0]
    coln = F.mul_table[F.inv_table[col[p]], col]
    rest = H[:, pos + 1:]
    new = F.sub_table[rest, F.mul_table[coln[:, None], rest[p][None, :]]]
    new = np.delete(new, p, axis=0)
    hit = _search(F, new, cols[pos + 1:], w - 3, counter)
    return (None if hit is None else [pos] + hit), counter.nodes


def _witness(F: GF, H: np.ndarray, support: list[int]) -> tuple[int, ...]:
    sub = H[:, support]
    null = gfmatrix.nullspace(F, sub)
    if null.shape[0] == 0:
        raise AssertionError(f"columns {support} are independent")
    word = np.zeros(H.shape[1], dtype=np.int32)
    word[support] = null[0]
    return tuple(int(x) for x in word)


def column_search(
    F: GF,
    H: np.ndarray,
    max_w: int | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> DistanceResult:
    """Smallest number of linearly dependent columns of H.

    ``budget`` caps search-tree nodes; when exhausted (or when ``max_w`` is
    passed without a hit) the result is a certified lower bound.
    """
    H = np.asarray(H, dtype=np.int32)
    r, n = H.shape
    if r and gfmatrix.rank(F, H) < r:
        H, _ = gfmatrix.rref(F, H)
        r = H.shape[0]
    if r == n:
        raise ValueError("the code is {0}; minimum distance is undefined")
    top = r + 1  # Singleton: any r+1 columns are dependent
    if max_w is not None:
        top = min(top, max_w)
    counter = _Counter(budget)
    zero_cols = np.nonzero(~H.any(axis=0))[0] if r else np.arange(n)
    if zero_cols.size:
        return DistanceResult(1, True, "columns", _witness(F, H, [int(zero_cols[0])]), 0)
    for w in range(2, top + 1):
        try:
            if workers > 1 and w >= 3:
                hit = None
                args = [(F, H, w, pos, budget) for pos in range(n - w + 1)]
                with ProcessPoolExecutor(max_workers=workers) as ex:
                    for res, nodes in ex.map(_branch, args):
                        counter.nodes += nodes
                        if res is not None and hit is None:
                            hit = res
            else:
                hit = _search(F, H, list(range(n)), w - 2, counter)
        except BudgetExhausted:
            return DistanceResult(w, False, "columns", None, counter.nodes)
        if hit is not None:
            support = sorted(hit)
            word = _witness(F, H, support)
            weight = sum(1 for x in word if x)
            if weight != w:
                raise AssertionError(f"witness weight {weight} differs from level {w}")
            return DistanceResult(w, True, "columns", word, counter.nodes)
    return DistanceResult(top + 1, False, "columns", None, counter.nodes)


def enumeration_distance(F: GF, G: np.ndarray, limit: int = 1 << 16) -> DistanceResult:
    """Minimum weight over all q^k codewords; refuses when q^k > limit."""
    G = np.asarray(G, dtype=np.int32)
    k = G.shape[0]
    if k == 0:
        raise ValueError("the code is {0}; minimum distance is undefined")
    if F.q**k > limit:
        raise ValueError(f"q^k = {F.q}^{k} exceeds enumeration limit {limit}")
    words = gfmatrix.all_codewords(F, G)
    weights = (words != 0).sum(axis=1)
    weights[weights == 0] = G.shape[1] + 1
    i = int(weights.argmin())
    return DistanceResult(int(weights[i]), True, "enumeration", tuple(int(x) for x in words[i]),
                          len(words))
