"""
Linear algebra over prime fields on int64 numpy arrays
"""

from typing import List, Tuple

import numpy as np


def pinv(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


def swap_row(A: np.ndarray, j: int, k: int) -> None:
    row = A[j, :].copy()
    A[j, :] = A[k, :]
    A[k, :] = row


def normal_form_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row-echelon form mod p with zero rows removed, plus pivot columns"""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {A.shape}")
    m, n = A.shape
    pivots: List[int] = []
    i = 0
    for j in range(n):
        if i == m:
            break
        nonzero = np.flatnonzero(A[i:, j])
        if nonzero.size == 0:
            continue
        i1 = i + int(nonzero[0])
        if i1 != i:
            swap_row(A, i, i1)
        r = int(A[i, j])
        if r != 1:
            A[i, :] = (A[i, :] * pinv(r, p)) % p
        # clear the column above and below the pivot
        col = A[:, j].copy()
        col[i] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, :] = (A[rows, :] - np.outer(col[rows], A[i, :])) % p
        pivots.append(j)
        i += 1
    return A[:i, :], pivots


def rank_p(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(normal_form_p(A, p)[1])


def nullspace_p(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : A x = 0 mod p} as rows"""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = normal_form_p(A, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-R[row, f]) % p
    return basis


def row_space_p(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    return normal_form_p(A, p)[0]


def is_invertible_p(M: np.ndarray, p: int) -> bool:
    M = np.asarray(M)
    if M.shape[0] == 0:
        return True
    return rank_p(M, p) == M.shape[0]


def mat_pow_p(M: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ M) % p
    return out


def is_nilpotent_p(M: np.ndarray, p: int) -> bool:
    n = M.shape[0]
    return n == 0 or not mat_pow_p(M, n, p).any()
