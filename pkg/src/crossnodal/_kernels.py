"""Batch kernels for the count-matrix classifier.

The numba path is used when numba imports and CROSSNODAL_DISABLE_NUMBA is
unset or "0"; otherwise the vectorised numpy path runs. Both return an
(N, 3) boolean array with assertions (1), (2), (3) per instance.
"""

from __future__ import annotations

import os

import numpy as np

_disabled = os.environ.get("CROSSNODAL_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if _disabled:
        raise ImportError
    import numba as _nb
except ImportError:  # pragma: no cover - exercised by the env flag
    _nb = None

BACKEND = "numba" if _nb is not None else "numpy"


def classify_batch_numpy(Bs: np.ndarray, As: np.ndarray) -> np.ndarray:
    N, n, _ = Bs.shape
    out = np.zeros((N, 3), dtype=np.bool_)
    a_prime = np.einsum("kij,kj->ki", Bs, As)
    out[:, 0] = (a_prime <= 2 * As).all(axis=1)
    out[:, 2] = (Bs.sum(axis=2) <= 2).all(axis=1)

    idx = np.arange(n)
    offdiag = ~np.eye(n, dtype=np.bool_)
    diag = Bs[:, idx, idx]  # (N, n)
    row_zero = ((Bs * offdiag) == 0).all(axis=2)  # (N, n)
    first = (diag <= 2) & row_zero

    # partner[k, i, p]: p is a valid partner of i in instance k
    ones_pair = (diag[:, :, None] == 1) & (Bs == 1) & (Bs.transpose(0, 2, 1) == 1) & (diag[:, None, :] == 1)
    same_a = As[:, :, None] == As[:, None, :]
    nz = (Bs != 0) & offdiag  # (N, i, j)
    # row i zero outside {i, p}: count of nonzero off-diagonal entries in row i, excluding column p
    nz_count = nz.sum(axis=2)
    rest_zero = (nz_count[:, :, None] - nz.astype(np.int64)) == 0
    partner = ones_pair & same_a & rest_zero & offdiag[None, :, :]
    unique = partner.sum(axis=2) == 1
    out[:, 1] = (first | unique).all(axis=1)
    return out


def _classify_loop(Bs, As, out):  # pragma: no cover - compiled by numba
    N, n, _ = Bs.shape
    for k in range(N):
        h1 = True
        h3 = True
        for i in range(n):
            s = 0
            rs = 0
            for j in range(n):
                s += Bs[k, i, j] * As[k, j]
                rs += Bs[k, i, j]
            if s > 2 * As[k, i]:
                h1 = False
            if rs > 2:
                h3 = False
        h2 = True
        for i in range(n):
            row_zero = True
            for j in range(n):
                if j != i and Bs[k, i, j] != 0:
                    row_zero = False
            if Bs[k, i, i] <= 2 and row_zero:
                continue
            count = 0
            for p in range(n):
                if p == i:
                    continue
                if As[k, i] != As[k, p]:
                    continue
                if not (Bs[k, i, i] == 1 and Bs[k, i, p] == 1 and Bs[k, p, i] == 1 and Bs[k, p, p] == 1):
                    continue
                ok = True
                for j in range(n):
                    if j != i and j != p and Bs[k, i, j] != 0:
                        ok = False
                if ok:
                    count += 1
            if count != 1:
                h2 = False
                break
        out[k, 0] = h1
        out[k, 1] = h2
        out[k, 2] = h3


if _nb is not None:
    _classify_loop_jit = _nb.njit(cache=False, nogil=True)(_classify_loop)

    def classify_batch_numba(Bs: np.ndarray, As: np.ndarray) -> np.ndarray:
        out = np.zeros((Bs.shape[0], 3), dtype=np.bool_)
        _classify_loop_jit(np.ascontiguousarray(Bs, dtype=np.int64),
                           np.ascontiguousarray(As, dtype=np.int64), out)
        return out

    classify_batch = classify_batch_numba
else:  # pragma: no cover
    classify_batch_numba = None
    classify_batch = classify_batch_numpy
