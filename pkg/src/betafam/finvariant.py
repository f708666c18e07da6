"""f-invariant representatives p^-k E_{p-1}^-j (phi - q^0(phi)).

A representative is a rational q-series.  It is only meaningful modulo
integral divided congruences, constants, and rational forms of the reduced
weight t; `indeterminacy_equiv` decides that relation at a finite power of p
and a finite precision, so it is a semi-decision at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import zpk
from .modforms import FULL, PrecisionError, hasse, level1_basis, sturm_precision
from .qseries import QQ, ZZ, NotIntegralError, QSeries, ResidueRing, lift
from .search import BetaWitness


@dataclass(frozen=True)
class FInvariantRep:
    series: QSeries
    p: int
    j: int
    k: int
    w: int
    source: BetaWitness | None = None

    @property
    def t(self) -> int:
        """Weight of the representative as a p-adic modular function."""
        return self.w - self.j * (self.p - 1)

    @property
    def prec(self) -> int:
        return self.series.prec

    def __add__(self, other: QSeries) -> "FInvariantRep":
        return FInvariantRep(self.series + _to_qq(other), self.p, self.j, self.k, self.w, self.source)


def _to_qq(f: QSeries) -> QSeries:
    return f if f.ring == QQ else QSeries(list(f.coeffs), QQ)


def f_invariant_of(phi: QSeries, j: int, k: int, w: int, prec: int | None = None) -> FInvariantRep:
    """p^-k E_{p-1}^-j (phi - q^0 phi) for phi a form of weight w over Z/p^k.

    Residues are lifted to [0, p^k); another lift changes the result by an
    integral series only.
    """
    ring = phi.ring
    if not isinstance(ring, ResidueRing) or ring.k != k:
        raise ValueError("phi must be a series over Z/p^k")
    p = ring.p
    N = phi.prec if prec is None else prec
    if N > phi.prec:
        raise PrecisionError(f"requested precision {N} exceeds the witness precision {phi.prec}")
    num = lift(phi.truncate(N), ZZ)
    num = num - num[0]
    einv = hasse(p, N, ZZ).inv_unit() ** j
    prod = num * einv
    pk = p**k
    series = QSeries([Fraction(int(c), pk) for c in prod.coeffs], QQ)
    return FInvariantRep(series, p, j, k, w)


def f_invariant(witness: BetaWitness, prec: int | None = None) -> FInvariantRep:
    idx = witness.index
    r = f_invariant_of(witness.f, idx.j, idx.k, idx.w, prec)
    return FInvariantRep(r.series, r.p, r.j, r.k, r.w, witness)


def times_back(r: FInvariantRep) -> QSeries:
    """p^k E_{p-1}^j r reduced mod p^k; recovers phi - q^0(phi)."""
    ring = ResidueRing(r.p, r.k)
    e = QSeries(hasse(r.p, r.prec, ZZ).coeffs, QQ) ** r.j
    prod = (e * r.series).scale(r.p**r.k)
    try:
        return QSeries(prod.coeffs, ring)
    except NotIntegralError as exc:
        raise AssertionError("p^k E^j f is not p-integral") from exc


def _p_power_denominator(r: QSeries, p: int) -> int:
    m = 0
    for c in r.coeffs:
        d = Fraction(c).denominator
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            m = max(m, e)
    return m


def _nonconstant_lattice(t: int, prec: int, p: int, m: int) -> np.ndarray:
    """Generators mod p^m of the forms h in (M_t)_Q with p-integral q^>=1 coefficients.

    Only the nonconstant part is kept, as constants are part of the indeterminacy.
    """
    rows = []
    B = level1_basis(t, prec, ZZ) if t >= 0 and t % 2 == 0 else None
    if B is not None and len(B):
        for idx, f in enumerate(B):
            c = [int(x) for x in f.coeffs]
            c[0] = 0
            if idx == 0:
                # f_0 = 1 + O(q^dim): its rational multiples are allowed to the
                # extent that the content of f_0 - 1 permits.
                v = _valuation_content(c, p)
                v = min(v, m)
                c = [x // p**v for x in c]
            rows.append([x % p**m for x in c])
    return np.array(rows, dtype=object).reshape(len(rows), prec)


def _valuation_content(c: list[int], p: int) -> int:
    v = None
    for x in c:
        if x:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            v = e if v is None else min(v, e)
    return 10**9 if v is None else v


def indeterminacy_equiv(r1: FInvariantRep, r2: FInvariantRep) -> bool:
    """Whether r1 - r2 lies in D_{Z_(p)} + (M_0)_Q + (M_t)_Q at working precision.

    With p^m the largest p-power denominator of the difference d, this holds iff
    the nonconstant part of p^m d is, mod p^m, a combination of nonconstant parts
    of weight-t rational forms with p-integral nonconstant coefficients.
    Denominators prime to p are units in Z_(p) and never obstruct.
    """
    if r1.p != r2.p or r1.w != r2.w or r1.t != r2.t:
        raise ValueError("representatives live in different weights")
    p = r1.p
    N = min(r1.prec, r2.prec)
    if N < sturm_precision(FULL, r1.w):
        raise PrecisionError(f"precision {N} below {sturm_precision(FULL, r1.w)}")
    d = r1.series.truncate(N) - r2.series.truncate(N)
    m = _p_power_denominator(d, p)
    if m == 0:
        return True
    pm = p**m
    target = [0] + [_mod_pm(c * pm, p, m) for c in list(d.coeffs)[1:]]
    L = _nonconstant_lattice(r1.t, N, p, m)
    if len(L) == 0:
        return not any(target)
    return zpk.solve(L.T, target, p, m) is not None


def _mod_pm(c: Fraction, p: int, m: int) -> int:
    c = Fraction(c)
    return c.numerator * pow(c.denominator, -1, p**m) % p**m


def render_rational(r: FInvariantRep | QSeries) -> str:
    s = r.series if isinstance(r, FInvariantRep) else r
    return str(s)
