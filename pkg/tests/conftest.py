import numpy as np
import pytest


def encode(rows: np.ndarray, m: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    weights = m ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ weights


def span_closure(gens, m: int, n: int) -> np.ndarray:
    """Sorted codes of every element of the subgroup of (Z/m)^n generated by `gens`."""
    S = np.zeros((1, n), dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    for g in np.asarray(gens, dtype=np.int64).reshape(-1, n):
        g = g % m
        cosets = [S]
        a = 1
        while True:
            shifted = (S + a * g) % m
            if np.isin(encode(shifted[:1], m), codes)[0]:
                break
            cosets.append(shifted)
            a += 1
        S = np.vstack(cosets)
        codes = np.sort(encode(S, m))
    return codes


def gauss_solve_field(A, b, p):
    """Plain Gaussian elimination over F_p; returns a solution or None."""
    A = [list(map(int, r)) + [int(x)] for r, x in zip(np.asarray(A), np.asarray(b))]
    rows, cols = len(A), (len(A[0]) - 1 if A else 0)
    piv_cols = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x % p == 0 for x in row[:-1]) and row[-1] % p for row in A):
        return None
    x = [0] * cols
    for i, c in enumerate(piv_cols):
        x[c] = A[i][-1]
    return x


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
