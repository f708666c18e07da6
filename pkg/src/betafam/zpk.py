"""Linear algebra over Z/p^k via the Howell normal form.

Matrices are numpy integer arrays with entries in [0, p^k).  Gaussian
elimination fails over Z/p^k (zero divisors), but a matrix in Howell form
exposes every span element with a given number of leading zeros, which is
exactly what kernels and solvability need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SMALL = 1 << 30


def _dtype(m: int):
    return np.int64 if m < _SMALL else object


def as_matrix(A, p: int, k: int, ncols: int | None = None) -> np.ndarray:
    m = p**k
    arr = np.array(A, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(0 if arr.size == 0 else 1, -1) if ncols is None else arr.reshape(-1, ncols)
    if arr.size == 0:
        arr = arr.reshape(arr.shape[0], ncols if ncols is not None else arr.shape[-1] if arr.ndim == 2 else 0)
    return (arr % m).astype(_dtype(m))


def valuation(x: int, p: int, k: int) -> int:
    """p-adic valuation of a residue, with v(0) = k."""
    x = int(x) % p**k
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def element_order(v, p: int, k: int) -> int:
    """Additive order of a vector in (Z/p^k)^n: p^(k - min valuation)."""
    vmin = min((valuation(x, p, k) for x in np.ravel(v)), default=k)
    return p ** (k - vmin)


@dataclass(frozen=True)
class HowellForm:
    H: np.ndarray
    pivots: tuple[int, ...]
    p: int
    k: int
    transform: np.ndarray | None = None

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def span_size(self) -> int:
        """Number of elements in the row span."""
        size = 1
        for i, c in enumerate(self.pivots):
            size *= self.modulus // int(self.H[i, c])
        return size

    def reduce(self, v) -> np.ndarray:
        """Canonical remainder of v modulo the row span (zero iff v is in it)."""
        m = self.modulus
        v = np.array(v, dtype=self.H.dtype) % m
        for i, c in enumerate(self.pivots):
            g = int(self.H[i, c])
            f = int(v[c]) // g
            if f:
                v = (v - f * self.H[i]) % m
        return v

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))


def howell(A, p: int, k: int, transform: bool = False, ncols: int | None = None) -> HowellForm:
    """Howell normal form of the row span of A.

    Pivot choice: first row (in the working order) of minimal valuation in the
    current column.  Pivots are normalized to p^v and entries above a pivot
    p^v are reduced into [0, p^v).  With `transform`, also returns U with
    H = U A (mod p^k).
    """
    m = p**k
    A = as_matrix(A, p, k, ncols)
    r, c = A.shape
    dt = A.dtype
    work = A
    if transform:
        work = np.hstack([A, np.eye(r, dtype=dt)])
    pool = work[np.any(work[:, :c] != 0, axis=1)] if r else work
    rows: list[np.ndarray] = []
    pivots: list[int] = []
    for col in range(c):
        if len(pool) == 0:
            break
        colv = pool[:, col]
        nz = np.flatnonzero(colv != 0)
        if len(nz) == 0:
            continue
        vals = [valuation(x, p, k) for x in colv[nz]]
        best = min(vals)
        idx = int(nz[vals.index(best)])
        g = p**best
        row = pool[idx]
        u = int(row[col]) // g
        row = (row * pow(u, -1, m)) % m
        others = np.delete(pool, idx, axis=0)
        if len(others):
            f = others[:, col] // g
            others = (others - f[:, None] * row[None, :]) % m
        if best > 0:
            ann = (row * (m // g)) % m
            others = np.vstack([others, ann[None, :]]) if len(others) else ann[None, :]
        pool = others[np.any(others[:, :c] != 0, axis=1)] if len(others) else others
        rows.append(row)
        pivots.append(col)
    for i, ci in enumerate(pivots):
        g = int(rows[i][ci])
        for h in range(i):
            f = int(rows[h][ci]) // g
            if f:
                rows[h] = (rows[h] - f * rows[i]) % m
    full = np.vstack(rows) if rows else np.zeros((0, work.shape[1]), dtype=dt)
    H = full[:, :c]
    U = full[:, c:] if transform else None
    return HowellForm(H, tuple(pivots), p, k, U)


def kernel(A, p: int, k: int) -> np.ndarray:
    """Generators (as rows) of {x : A x = 0} over Z/p^k.

    Uses the Howell form of [A^T | I]: rows whose A^T part vanishes span the
    kernel because of the Howell property.
    """
    m = p**k
    A = as_matrix(A, p, k)
    r, c = A.shape
    if c == 0:
        return np.zeros((0, 0), dtype=A.dtype)
    M = np.hstack([A.T, np.eye(c, dtype=A.dtype)])
    hf = howell(M, p, k)
    gens = [hf.H[i, r:] for i, col in enumerate(hf.pivots) if col >= r]
    return np.vstack(gens) % m if gens else np.zeros((0, c), dtype=A.dtype)


def solve(A, b, p: int, k: int) -> np.ndarray | None:
    """Some x with A x = b (mod p^k), or None if the system is inconsistent."""
    m = p**k
    A = as_matrix(A, p, k)
    r, c = A.shape
    b = np.array(b, dtype=object).reshape(-1) % m
    if len(b) != r:
        raise ValueError(f"dimension mismatch: A has {r} rows, b has {len(b)} entries")
    if not np.any(b):
        return np.zeros(c, dtype=A.dtype)
    if c == 0:
        return None
    dt = A.dtype
    # rows (col_i(A), 0, e_i) and (-b, 1, 0): span elements (Ax - yb, y, x)
    top = np.hstack([A.T, np.zeros((c, 1), dtype=dt), np.eye(c, dtype=dt)])
    bottom = np.concatenate([(-b % m).astype(dt), np.array([1], dtype=dt), np.zeros(c, dtype=dt)])
    hf = howell(np.vstack([top, bottom[None, :]]), p, k)
    for i, col in enumerate(hf.pivots):
        if col == r:
            if int(hf.H[i, r]) == 1:
                return hf.H[i, r + 1 :].copy()
            return None
    return None


def matmul(A, x, p: int, k: int) -> np.ndarray:
    m = p**k
    A = np.array(A, dtype=object)
    x = np.array(x, dtype=object)
    return (A.dot(x) % m).astype(_dtype(m)) if A.size else np.zeros(A.shape[0], dtype=_dtype(m))
