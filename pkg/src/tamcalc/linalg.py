"""Dense linear algebra over a prime field GF(p) or over Q.

Matrices are numpy arrays: ``int64`` entries reduced mod ``p`` for prime
fields, ``object`` arrays of :class:`fractions.Fraction` for ``p = 0`` (Q).
Everything is exact; the only algorithm is Gauss-Jordan elimination.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

QQ = 0


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_field(p: int) -> int:
    if p != QQ and not is_prime(p):
        raise ValueError(f"{p} is not a prime (use 0 for the rationals)")
    if p > 3037000499:
        raise ValueError("prime too large for int64 products")
    return p


def zeros(p: int, rows: int, cols: int) -> np.ndarray:
    if p == QQ:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols), dtype=np.int64)


def eye(p: int, n: int) -> np.ndarray:
    out = zeros(p, n, n)
    for i in range(n):
        out[i, i] = 1 if p else Fraction(1)
    return out


def asmat(p: int, data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce nested lists / arrays to a field matrix."""
    if p == QQ:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
    else:
        arr = np.array(data, dtype=np.int64) % p
    if rows is not None and cols is not None:
        arr = arr.reshape(rows, cols)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if arr.size else zeros(p, 0, 0)
    return arr


def reduce(p: int, A: np.ndarray) -> np.ndarray:
    return A if p == QQ else A % p


def matmul(p: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0 or B.shape[0] == 0:
        return zeros(p, A.shape[0], B.shape[1])
    if p == QQ:
        return A.dot(B)
    # split to keep int64 accumulation exact for moderate p
    return (A.astype(object).dot(B.astype(object)) % p).astype(np.int64) if p > 46340 \
        else (A @ B) % p


def _inv(p: int, x):
    return Fraction(1) / x if p == QQ else pow(int(x), -1, p)


def rref(p: int, A: np.ndarray):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    R = A.copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = R[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = _inv(p, R[r, c])
        R[r] = reduce(p, R[r] * inv)
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = reduce(p, R[others] - np.outer(R[others, c], R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(p: int, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(p, A)[1])


def nullspace(p: int, A: np.ndarray) -> np.ndarray:
    """Columns spanning ``{x : A x = 0}``."""
    rows, cols = A.shape
    if cols == 0:
        return zeros(p, 0, 0)
    if rows == 0:
        return eye(p, cols)
    R, piv = rref(p, A)
    free = [c for c in range(cols) if c not in set(piv)]
    N = zeros(p, cols, len(free))
    for j, f in enumerate(free):
        N[f, j] = 1 if p else Fraction(1)
        for i, pc in enumerate(piv):
            N[pc, j] = reduce(p, -R[i, f]) if p else -R[i, f]
    return N


def colspace(p: int, A: np.ndarray) -> np.ndarray:
    """Linearly independent columns of ``A`` spanning its column space."""
    if A.size == 0:
        return zeros(p, A.shape[0], 0)
    _, piv = rref(p, A)
    return A[:, piv]


def solve(p: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Some ``X`` with ``A X = B``; raises ``ValueError`` when inconsistent."""
    rows, cols = A.shape
    if B.shape[1] == 0:
        return zeros(p, cols, 0)
    if cols == 0:
        if np.any(B != 0):
            raise ValueError("inconsistent system")
        return zeros(p, 0, B.shape[1])
    R, piv = rref(p, np.concatenate([A, B], axis=1))
    if piv and piv[-1] >= cols:
        raise ValueError("inconsistent system")
    X = zeros(p, cols, B.shape[1])
    for i, pc in enumerate(piv):
        X[pc] = R[i, cols:]
    return X


def in_span(p: int, A: np.ndarray, B: np.ndarray) -> bool:
    """Whether every column of ``B`` lies in the column space of ``A``."""
    if B.shape[1] == 0 or not np.any(B != 0):
        return True
    if A.shape[1] == 0:
        return False
    return rank(p, np.concatenate([A, B], axis=1)) == rank(p, A)


def quotient_basis(p: int, Z: np.ndarray, B: np.ndarray):
    """Representatives of a basis of ``span(Z) / span(B)`` (``B`` inside ``span(Z)``).

    Returns ``(Bc, H)``: ``Bc`` an independent basis of ``span(B)``, ``H`` the
    chosen representative columns taken from ``Z``.
    """
    n = Z.shape[0]
    Bc = colspace(p, B) if B.shape[1] else zeros(p, n, 0)
    if Z.shape[1] == 0:
        return Bc, zeros(p, n, 0)
    M = np.concatenate([Bc, Z], axis=1)
    _, piv = rref(p, M)
    k = Bc.shape[1]
    H = M[:, [c for c in piv if c >= k]]
    return Bc, H


def to_quotient_coords(p: int, Bc: np.ndarray, H: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Coordinates of the classes of the columns of ``V`` in the basis ``H`` mod ``Bc``."""
    if H.shape[1] == 0:
        return zeros(p, 0, V.shape[1])
    X = solve(p, np.concatenate([Bc, H], axis=1), V)
    return X[Bc.shape[1]:]
