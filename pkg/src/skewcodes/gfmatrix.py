"""Dense linear algebra over F_q on int matrices, via the field's lookup tables."""

from __future__ import annotations

import numpy as np

from .galois import GF


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    M = np.array(rows, dtype=np.int32)
    if M.size == 0:
        return np.zeros((0, ncols or 0), dtype=np.int32)
    return M.reshape(len(rows), -1)


def rref(F: GF, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int32, copy=True)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            f = A[others, c]
            A[others] = add[A[others], neg[mul[f[:, None], A[r][None, :]]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: GF, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int32)
    B = np.asarray(B, dtype=np.int32)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int32)
    add, mul = F.add_table, F.mul_table
    for k in range(A.shape[1]):
        out = add[out, mul[A[:, k][:, None], B[k][None, :]]]
    return out


def transpose(M: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(M).T)


def nullspace(F: GF, M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.int32)
    n = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int32)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = F.neg(int(R[r, f]))
    return out


def in_rowspace(F: GF, M: np.ndarray, v) -> bool:
    v = np.asarray(v, dtype=np.int32)[None, :]
    if M.shape[0] == 0:
        return not v.any()
    return rank(F, np.vstack([M, v])) == rank(F, M)


def combine(F: GF, coeffs, M: np.ndarray) -> np.ndarray:
    """Linear combination sum_i coeffs[i] * M[i]."""
    out = np.zeros(M.shape[1], dtype=np.int32)
    add, mul = F.add_table, F.mul_table
    for c, row in zip(coeffs, M):
        if c:
            out = add[out, mul[c, row]]
    return out


def all_codewords(F: GF, G: np.ndarray) -> np.ndarray:
    """Every F_q-combination of the rows of G (q^k rows)."""
    n = G.shape[1]
    words = np.zeros((1, n), dtype=np.int32)
    add, mul = F.add_table, F.mul_table
    for row in G:
        scaled = mul[np.arange(F.q)[:, None], row[None, :]]  # q x n
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words
