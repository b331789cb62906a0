"""Row reduction over GF(p) on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def rref(M: np.ndarray, p: int, ncols: int | None = None,
         order: np.ndarray | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` mod p.

    Pivots are searched among the first ``ncols`` columns (default: all),
    visited in ``order`` (default: highest index first), so a row whose pivot
    comes late in the visiting order is zero on every earlier column. Columns
    past ``ncols`` ride along, which is how transformation matrices are tracked.

    Returns the nonzero rows, each monic at its pivot, and the pivot columns.
    """
    A = np.array(M, dtype=np.int64) % p
    rows = A.shape[0]
    if ncols is None:
        ncols = A.shape[1]
    if order is None:
        order = np.arange(ncols - 1, -1, -1)
    pivots: list[int] = []
    r = 0
    for col in order:
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, col]), p - 2, p)
        if inv != 1:
            A[r] = A[r] * inv % p
        colv = A[:, col].copy()
        colv[r] = 0
        hit = np.flatnonzero(colv)
        if hit.size:
            A[hit] = (A[hit] - np.outer(colv[hit], A[r])) % p
        pivots.append(int(col))
        r += 1
    return A[:r], pivots


def reduce_against(v: np.ndarray, basis: np.ndarray, pivots: np.ndarray, p: int) -> np.ndarray:
    """Residual of v after clearing every pivot column of a reduced basis."""
    if basis.shape[0] == 0:
        return np.asarray(v, dtype=np.int64) % p
    lam = v[pivots]
    return (v - lam @ basis) % p
