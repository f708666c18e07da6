"""Eisenstein series, the discriminant, and echelon bases of M_w.

Two levels are supported: SL_2(Z) and Gamma_0(2).  Bases are returned in
reduced echelon form by leading q-exponent (Victor Miller form): the i-th
element is q^{n_i} + (terms beyond the last pivot), with every pivot
coefficient equal to 1.  Only holomorphic forms are generated.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .qseries import (
    QQ,
    ZZ,
    CoeffRing,
    Integers,
    NotIntegralError,
    QSeries,
    Rationals,
    ResidueRing,
    v_operator,
)


class UnsupportedLevelError(ValueError):
    pass


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class Full:
    """SL_2(Z)."""

    def __str__(self) -> str:
        return "full"


@dataclass(frozen=True)
class Gamma0:
    ell: int

    def __str__(self) -> str:
        return f"gamma0({self.ell})"


FULL = Full()
Level = Full | Gamma0


# -- Bernoulli numbers ---------------------------------------------------------

_BERNOULLI = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{j=0}^{m} C(m+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _BERNOULLI_LOCK:
        B = _BERNOULLI
        for m in range(len(B), n + 1):
            s = sum(comb(m + 1, j) * B[j] for j in range(m))
            B.append(-s / (m + 1))
        return B[n]


@lru_cache(maxsize=None)
def _akiyama_tanigawa_table(n: int) -> tuple[Fraction, ...]:
    out = []
    a = []
    for m in range(n + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # The algorithm yields B_1 = +1/2.
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """Independent evaluation of B_n (same sign convention as `bernoulli`)."""
    size = 64
    while size < n:
        size *= 2
    return _akiyama_tanigawa_table(size)[n]


# -- arithmetic helpers --------------------------------------------------------

def divisor_sums(k: int, n: int) -> list[int]:
    """[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n-1)] by sieving."""
    s = [0] * n
    for d in range(1, n):
        dk = d**k
        for m in range(d, n, d):
            s[m] += dk
    return s


def _series(values, ring: CoeffRing) -> QSeries:
    return QSeries(values, ring)


@lru_cache(maxsize=256)
def eisenstein(k: int, prec: int, ring: CoeffRing = ZZ) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 2 or k % 2:
        raise ValueError("weight must be even and >= 2")
    c = Fraction(-2 * k) / bernoulli(k)
    sig = divisor_sums(k - 1, prec)
    vals = [Fraction(1)] + [c * s for s in sig[1:]]
    if isinstance(ring, Integers) and c.denominator != 1:
        raise NotIntegralError(f"E_{k} is not integral")
    try:
        return _series(vals, ring)
    except NotIntegralError as exc:
        raise NotIntegralError(f"E_{k} is not integral over {ring}") from exc


@lru_cache(maxsize=64)
def _delta_zz(prec: int) -> QSeries:
    # eta-type product prod (1 - q^n) via Euler's pentagonal number theorem
    eta = [0] * prec
    eta[0] = 1
    m = 1
    while m * (3 * m - 1) // 2 < prec:
        sign = -1 if m % 2 else 1
        for e in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            if e < prec:
                eta[e] += sign
        m += 1
    e = QSeries(eta, ZZ)
    e8 = ((e * e) * (e * e)) ** 2
    return (e8 * e8 * e8).shift(1)


@lru_cache(maxsize=256)
def delta(prec: int, ring: CoeffRing = ZZ) -> QSeries:
    """Delta = q prod (1 - q^n)^24."""
    d = _delta_zz(prec)
    return d if ring == ZZ else QSeries(d.coeffs, ring)


def hasse(p: int, prec: int, ring: CoeffRing) -> QSeries:
    """E_{p-1}, congruent to 1 mod p."""
    return eisenstein(p - 1, prec, ring)


@lru_cache(maxsize=64)
def gamma0_2_generators(prec: int, ring: CoeffRing = ZZ) -> tuple[QSeries, QSeries]:
    """(A, C): A = 2E_2(q^2) - E_2(q) of weight 2, C = (E_4 - A^2)/192 = q + ... of weight 4."""
    sig = divisor_sums(1, prec)
    a = [1] + [24 * (sig[n] - (2 * sig[n // 2] if n % 2 == 0 else 0)) for n in range(1, prec)]
    A = QSeries(a, ZZ)
    diff = eisenstein(4, prec, ZZ) - A * A
    if any(int(c) % 192 for c in diff.coeffs):
        raise AssertionError("E4 - A^2 is not divisible by 192")
    C = QSeries([int(c) // 192 for c in diff.coeffs], ZZ)
    if ring == ZZ:
        return A, C
    return QSeries(A.coeffs, ring), QSeries(C.coeffs, ring)


# -- dimensions and precision --------------------------------------------------

def dim_full(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    return w // 12 if w % 12 == 2 else w // 12 + 1


def dim_gamma0_2(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    return w // 4 + 1


def dimension(level: Level, w: int) -> int:
    if isinstance(level, Full):
        return dim_full(w)
    _require_level(level)
    return dim_gamma0_2(w)


def precision_slack() -> int:
    return int(os.environ.get("BETAFAM_PREC_SLACK", "2"))


def sturm_precision(level: Level, w: int) -> int:
    """floor(w * index / 12) + slack, the default precision at weight w."""
    mu = 1 if isinstance(level, Full) else level.ell + 1
    return (w * mu) // 12 + precision_slack()


def _require_level(level: Level) -> None:
    if isinstance(level, Gamma0) and level.ell != 2:
        raise UnsupportedLevelError(f"level Gamma0({level.ell}) is not implemented; only ell = 2")


# -- bases ---------------------------------------------------------------------

@dataclass(frozen=True)
class FormBasis:
    level: Level
    weight: int
    ring: CoeffRing
    prec: int
    basis: tuple[QSeries, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    @property
    def leading_exponents(self) -> list[int]:
        return [int(f.order()) for f in self.basis]

    def matrix(self) -> np.ndarray:
        """Rows are the coefficient vectors of the basis elements."""
        if not self.basis:
            dtype = self.ring.dtype if isinstance(self.ring, ResidueRing) else object
            return np.zeros((0, self.prec), dtype=dtype)
        return np.vstack([f.coeffs for f in self.basis])

    def coordinates(self, f: QSeries) -> list:
        """Coefficients of f on the basis, read off at the pivots.

        Valid only if f lies in the span; callers verify by recombining.
        """
        return [f[n] for n in self.leading_exponents]

    def combine(self, coords) -> QSeries:
        out = QSeries.zero(self.prec, self.ring)
        for c, f in zip(coords, self.basis):
            if c:
                out = out + f.scale(c)
        return out


def _reduce_echelon(rows: list[QSeries], ring: CoeffRing) -> list[QSeries]:
    """Back-substitute a unitriangular echelon list into reduced form."""
    rows = list(rows)
    lead = [int(r.order()) for r in rows]
    for i in range(len(rows)):
        if rows[i][lead[i]] != 1:
            raise AssertionError("echelon rows must have leading coefficient 1")
    for i in range(len(rows) - 1, -1, -1):
        for r in range(i):
            c = rows[r][lead[i]]
            if c:
                rows[r] = rows[r] - rows[i].scale(c)
    return rows


def _check_prec(level: Level, w: int, prec: int) -> int:
    d = dimension(level, w)
    if prec < max(d, 1):
        raise PrecisionError(f"precision {prec} is below dim M_{w}({level}) = {d}")
    return d


def _working_ring(ring: CoeffRing) -> CoeffRing:
    # The integral echelon bases are computed over ZZ, except that residue
    # rings are handled directly by reducing the integral generators first.
    return ring if isinstance(ring, ResidueRing) else ZZ


class _PowerCache:
    def __init__(self, base: QSeries):
        self.powers = [QSeries.one(base.prec, base.ring), base]

    def __call__(self, n: int) -> QSeries:
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.powers[1])
        return self.powers[n]


@lru_cache(maxsize=512)
def level1_basis(w: int, prec: int, ring: CoeffRing = ZZ) -> FormBasis:
    """Reduced echelon basis of M_w(SL_2(Z)) with leading exponents 0..dim-1.

    The span is that of the monomials E4^a E6^b, 4a + 6b = w.  It is built from
    Delta^n E4^a E6^b (Delta = (E4^3 - E6^2)/1728, b in {0, 1}), which is already
    echelon with leading coefficients 1 and integral, then back-substituted.
    Because every pivot is 1, reducing this integral basis modulo p^k gives the
    same lattice as echelonizing over Q and reducing afterwards.
    """
    d = _check_prec(FULL, w, prec)
    wr = _working_ring(ring)
    rows = []
    if d:
        E4 = _PowerCache(eisenstein(4, prec, wr))
        E6 = eisenstein(6, prec, wr)
        D = _PowerCache(delta(prec, wr))
        for n in range(d):
            r = w - 12 * n
            b = 0 if r % 4 == 0 else 1
            a = (r - 6 * b) // 4
            f = D(n) * E4(a)
            if b:
                f = f * E6
            rows.append(f)
    rows = _reduce_echelon(rows, wr)
    if wr != ring:
        rows = [QSeries(f.coeffs, ring) for f in rows]
    return FormBasis(FULL, w, ring, prec, tuple(rows))


@lru_cache(maxsize=512)
def gamma0_2_basis(w: int, prec: int, ring: CoeffRing = ZZ) -> FormBasis:
    """Reduced echelon basis of M_w(Gamma_0(2)), leading exponents 0..floor(w/4).

    Generated by A = 2E_2(q^2) - E_2(q) (weight 2) and B = E_4.  We use
    C = (B - A^2)/192 = q + O(q^2) in place of B: the monomials A^a C^c are
    echelon with unit pivots and span the same Z[1/6]-module as A^a B^b.
    """
    level = Gamma0(2)
    d = _check_prec(level, w, prec)
    wr = _working_ring(ring)
    rows = []
    if w >= 0 and w % 2 == 0:
        A0, C0 = gamma0_2_generators(prec, wr)
        A = _PowerCache(A0)
        C = _PowerCache(C0)
        for c in range(d):
            a = (w - 4 * c) // 2
            rows.append(A(a) * C(c))
    rows = _reduce_echelon(rows, wr)
    if wr != ring:
        rows = [QSeries(f.coeffs, ring) for f in rows]
    return FormBasis(level, w, ring, prec, tuple(rows))


def basis(level: Level, w: int, prec: int, ring: CoeffRing = ZZ) -> FormBasis:
    if isinstance(level, Full):
        return level1_basis(w, prec, ring)
    _require_level(level)
    return gamma0_2_basis(w, prec, ring)


def monomials_gamma0_2(w: int, prec: int, ring: CoeffRing = QQ) -> list[QSeries]:
    """The raw monomials A^a E4^b with 2a + 4b = w."""
    A, _ = gamma0_2_generators(prec, ZZ)
    B = eisenstein(4, prec, ZZ)
    out = []
    for b in range(w // 4 + 1):
        a = (w - 4 * b) // 2
        out.append(QSeries((A**a * B**b).coeffs, ring))
    return out


def monomials_full(w: int, prec: int, ring: CoeffRing = QQ) -> list[QSeries]:
    """The raw monomials E4^a E6^b with 4a + 6b = w."""
    E4 = eisenstein(4, prec, ZZ)
    E6 = eisenstein(6, prec, ZZ)
    out = []
    for b in range(w // 6 + 1):
        r = w - 6 * b
        if r % 4 == 0:
            out.append(QSeries((E4 ** (r // 4) * E6**b).coeffs, ring))
    return out


def v_image(f: QSeries, ell: int) -> QSeries:
    """The level-ell form f(q^ell) of the same weight."""
    return v_operator(f, ell)
