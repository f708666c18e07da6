"""Search for the modular forms attached to beta_{i/j,k}.

Given (p, ell, i, j, k) the form f lives in weight w = i(p^2 - 1) at level 1 and
the reduced weight is t = w - j(p - 1).  A form f mod p^k is a witness when

  (1) t = 0 mod (p-1)p^(k-1)
  (2) f is not 0 mod p
  (3) ord_q f > t/12 or ord_q f = (t-2)/12
  (4) no form of lower weight t' is congruent to f mod p^k
  (5) f(q^ell) - f(q) = g(q) mod p^k for some g in M_t(Gamma_0(ell)).

`search` solves (5) by linear algebra over Z/p^k on the candidates allowed by
(3), then re-checks every result with the stand-alone checkers below.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import zpk
from .modforms import (
    FULL,
    FormBasis,
    Gamma0,
    PrecisionError,
    UnsupportedLevelError,
    gamma0_2_basis,
    hasse,
    level1_basis,
    sturm_precision,
)
from .qseries import QSeries, ResidueRing, is_prime, order_of_vanishing, v_operator

log = logging.getLogger(__name__)


class UnstableSearchError(RuntimeError):
    """Solutions changed when the precision was doubled."""


def _level(ell: int) -> Gamma0:
    if ell != 2:
        raise UnsupportedLevelError(f"only ell = 2 is implemented, got {ell}")
    return Gamma0(ell)


def generates_units_mod_p2(ell: int, p: int) -> bool:
    m = p * p
    order = (p - 1) * p
    return all(pow(ell, order // r, m) != 1 for r in _prime_factors(order))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class BetaIndex:
    p: int
    ell: int
    i: int
    j: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 5:
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if not is_prime(self.ell) or self.ell == self.p:
            raise ValueError(f"ell must be a prime different from p, got {self.ell}")
        if min(self.i, self.j, self.k) < 1:
            raise ValueError("i, j, k must be positive")
        if self.t < 0:
            raise ValueError(f"reduced weight t = {self.t} is negative")

    @property
    def w(self) -> int:
        return self.i * (self.p**2 - 1)

    @property
    def t(self) -> int:
        return self.w - self.j * (self.p - 1)

    @property
    def ring(self) -> ResidueRing:
        return ResidueRing(self.p, self.k)

    @property
    def exceptional(self) -> bool:
        """True when beta_{i/j} is one of the cokernel classes beta_{p^n/j}."""
        if not generates_units_mod_p2(self.ell, self.p):
            warnings.warn(
                f"ell = {self.ell} does not generate (Z/{self.p}^2)^x; image classification may not apply",
                stacklevel=2,
            )
        n = _log_p(self.i, self.p)
        return n is not None and is_outside_image(self.p, n, self.j)

    def label(self) -> str:
        return f"f_{{{self.i}/{self.j},{self.k}}}"


def _log_p(i: int, p: int) -> int | None:
    n = 0
    while i % p == 0:
        i //= p
        n += 1
    return n if i == 1 else None


@dataclass
class BetaWitness:
    index: BetaIndex
    f: QSeries
    g: QSeries | None
    a: list[int]
    b: list[int]
    cond_flags: tuple[bool, bool, bool, bool, bool]
    order: int

    @property
    def verified(self) -> bool:
        return all(self.cond_flags)


# -- the five conditions -------------------------------------------------------

def check_condition_1(t: int, p: int, k: int) -> bool:
    return t % ((p - 1) * p ** (k - 1)) == 0


def check_condition_2(f: QSeries) -> bool:
    p = f.ring.p
    return any(int(c) % p for c in f.coeffs)


def check_condition_3(f: QSeries, t: int) -> bool:
    if 12 * f.prec <= t + 12:
        raise PrecisionError(f"precision {f.prec} does not exceed t/12 + 1 = {Fraction(t, 12) + 1}")
    o = order_of_vanishing(f)
    if o == math.inf:
        return True
    return 12 * o > t or 12 * o == t - 2


def check_condition_4(f: QSeries, w: int, p: int, k: int, paranoid: bool = False) -> bool:
    """No f' in M_{t'} with f' = f mod p^k for t' < w.

    Only weights t' = w mod (p-1)p^(k-1) can carry such an f' (Serre); with
    `paranoid` every even t' < w is scanned.
    """
    if f.prec < sturm_precision(FULL, w):
        raise PrecisionError(f"precision {f.prec} below {sturm_precision(FULL, w)}")
    step = 2 if paranoid else (p - 1) * p ** (k - 1)
    tprime = w - step
    while tprime >= 0:
        B = level1_basis(tprime, f.prec, f.ring) if tprime % 2 == 0 else None
        if B is not None and _in_span(B, f):
            return False
        tprime -= step
    return True


def _in_span(B: FormBasis, f: QSeries) -> bool:
    if len(B) == 0:
        return f.is_zero()
    ring = f.ring
    x = zpk.solve(B.matrix().T, f.coeffs, ring.p, ring.k)
    return x is not None


def check_condition_5(f: QSeries, t: int, ell: int, p: int, k: int, w: int | None = None) -> QSeries | None:
    """Some g in M_t(Gamma_0(ell)) with f(q^ell) - f(q) = g mod p^k, or None."""
    level = _level(ell)
    need = sturm_precision(level, max(w if w is not None else t, t))
    if f.prec < need:
        raise PrecisionError(f"precision {f.prec} below {need}")
    if t < 0 or t % 2:
        return None
    target = v_operator(f, ell) - f
    G = gamma0_2_basis(t, f.prec, f.ring)
    if len(G) == 0:
        return target if target.is_zero() else None
    x = zpk.solve(G.matrix().T, target.coeffs, p, k)
    if x is None:
        return None
    return G.combine([int(c) for c in x])


def is_outside_image(p: int, n: int, j: int) -> bool:
    """beta_{p^n/j} with n >= 2 and p^n < j <= p^n + p^(n-1) - 1."""
    return n >= 2 and p**n < j <= p**n + p ** (n - 1) - 1


def serre_linked(f1: QSeries, w1: int, f2: QSeries, w2: int, p: int, k: int) -> bool:
    """Whether f2 = E_{p-1}^m f1 mod p^k for a weight gap w2 - w1 = m(p-1)."""
    if w1 > w2:
        raise ValueError("expected w1 <= w2")
    if (w2 - w1) % ((p - 1) * p ** (k - 1)):
        return False
    n = min(f1.prec, f2.prec)
    if n < sturm_precision(FULL, w2):
        raise PrecisionError(f"precision {n} below {sturm_precision(FULL, w2)}")
    return f1.truncate(n) == f2.truncate(n)


# -- the search itself ---------------------------------------------------------

def allowed_exponents(t: int, dim: int) -> list[int]:
    """Leading exponents permitted by condition (3) among 0..dim-1."""
    return [n for n in range(dim) if 12 * n > t or 12 * n == t - 2]


def congruence_solutions(Fs, Gs, ell: int, p: int, k: int) -> np.ndarray:
    """Howell form of {a : exists b, sum a_x (F_x(q^ell) - F_x(q)) = sum b_y G_y(q) mod p^k}."""
    dt = ResidueRing(p, k).dtype
    if not Fs:
        return np.zeros((0, 0), dtype=dt)
    cols = [(v_operator(f, ell) - f).coeffs for f in Fs] + [(-g).coeffs for g in Gs]
    K = zpk.kernel(np.vstack(cols).T, p, k)
    a_part = K[:, : len(Fs)] if len(K) else np.zeros((0, len(Fs)), dtype=dt)
    if len(a_part):
        a_part = a_part[np.any(a_part != 0, axis=1)]
    return zpk.howell(a_part, p, k, ncols=len(Fs)).H


def candidate_span(
    p: int, ell: int, w: int, t: int, k: int, prec: int, exponents: list[int] | None = None
) -> tuple[FormBasis, list[int], np.ndarray]:
    """Raw solution module of the congruence in step (c) of the search.

    Returns the weight-w basis, the leading exponents of the candidates (those
    allowed by condition (3) unless `exponents` is given), and the Howell form
    of the admissible coefficient vectors a, one column per candidate.
    """
    _level(ell)
    ring = ResidueRing(p, k)
    F = level1_basis(w, prec, ring)
    cand = allowed_exponents(t, len(F)) if exponents is None else list(exponents)
    G = gamma0_2_basis(t, prec, ring) if t >= 0 and t % 2 == 0 else ()
    H = congruence_solutions([F[n] for n in cand], list(G), ell, p, k)
    return F, cand, H


def _solution_rows(idx: BetaIndex, prec: int) -> tuple[FormBasis, list[int], np.ndarray]:
    F, cand, H = candidate_span(idx.p, idx.ell, idx.w, idx.t, idx.k, prec)
    return F, cand, H


def search_precision(idx: BetaIndex, prec: int | None = None) -> int:
    need = sturm_precision(_level(idx.ell), max(idx.w, idx.t))
    return max(need, prec or 0)


def search(
    idx: BetaIndex,
    prec: int | None = None,
    out_prec: int | None = None,
    verify: bool = True,
    paranoid: bool = False,
) -> list[BetaWitness]:
    """All normalized witnesses for `idx`, echelonized by leading exponent.

    `prec` is the solving precision (raised to the Sturm-type default if too
    small); `out_prec` the precision of the returned expansions.  With
    `verify`, the solve is repeated at twice the precision and must agree.
    """
    P = search_precision(idx, prec)
    F, cand, H = _solution_rows(idx, P)
    if verify:
        _, _, H2 = _solution_rows(idx, 2 * P)
        if H.shape != H2.shape or np.any(H != H2):
            raise UnstableSearchError(f"{idx.label()}: solution span changed between precision {P} and {2 * P}")
    N = max(P, out_prec or 0)
    ring = idx.ring
    Fout = level1_basis(idx.w, N, ring) if N != P else F
    out: list[BetaWitness] = []
    for row in H:
        coords = [0] * len(Fout)
        for c, n in zip(row, cand):
            coords[n] = int(c)
        f = Fout.combine(coords)
        lead = f[int(f.order())] if not f.is_zero() else 0
        if lead and ring.is_unit(lead):
            inv = pow(int(lead), -1, ring.modulus)
            f = f.scale(inv)
            coords = [c * inv % ring.modulus for c in coords]
        w = _make_witness(idx, f, [coords[n] for n in cand], paranoid)
        if w.verified:
            out.append(w)
        else:
            log.info("%s: dropped candidate with flags %s", idx.label(), w.cond_flags)
    return out


def _make_witness(idx: BetaIndex, f: QSeries, a: list[int], paranoid: bool = False) -> BetaWitness:
    p, k = idx.p, idx.k
    g = check_condition_5(f, idx.t, idx.ell, p, k, w=idx.w)
    flags = (
        check_condition_1(idx.t, p, k),
        check_condition_2(f),
        check_condition_3(f, idx.t),
        check_condition_4(f, idx.w, p, k, paranoid=paranoid),
        g is not None,
    )
    b: list[int] = []
    if g is not None:
        G = gamma0_2_basis(idx.t, f.prec, f.ring)
        b = [int(c) for c in G.coordinates(g)]
    return BetaWitness(idx, f, g, a, b, flags, zpk.element_order(f.coeffs, p, k))


def witness_from_form(idx: BetaIndex, f: QSeries, paranoid: bool = False) -> BetaWitness:
    """Run the five checkers on an externally supplied f."""
    F = level1_basis(idx.w, f.prec, f.ring)
    a = [int(f[n]) for n in allowed_exponents(idx.t, len(F))]
    return _make_witness(idx, f, a, paranoid)


# -- the groups B_{t/j,k} ------------------------------------------------------

@dataclass
class BGenerator:
    f: QSeries
    coords: list[int]
    order: int


@dataclass
class BGroupReport:
    p: int
    ell: int
    t: int
    j: int
    k: int
    w: int
    prec: int
    generators: list[BGenerator] = field(default_factory=list)
    order: int = 1

    @property
    def generator_orders(self) -> list[int]:
        return [g.order for g in self.generators]


def bgroup(p: int, ell: int, t: int, j: int, k: int, prec: int | None = None) -> BGroupReport:
    """Kernel of d0 - d1 on M_w / (p^k, E_{p-1}^j M_t), w = t + j(p-1).

    On q-expansions d0 f = (ell^w f(q^ell), ell^w f(q)) and d1 f = (f(q), f(q)),
    so f is in the kernel when ell^w f(q^ell) - f(q) lies in E_{p-1}^j M_t(Gamma_0(ell))
    and (ell^w - 1) f lies in E_{p-1}^j M_t, both modulo p^k.
    """
    level = _level(ell)
    if t < 0 or j < 0:
        raise ValueError("t and j must be nonnegative")
    w = t + j * (p - 1)
    N = max(sturm_precision(level, w), prec or 0)
    ring = ResidueRing(p, k)
    m = ring.modulus
    F = level1_basis(w, N, ring)
    report = BGroupReport(p, ell, t, j, k, w, N)
    if len(F) == 0:
        return report
    Ej = hasse(p, N, ring) ** j
    lw = pow(ell, w, m)
    G = [Ej * g for g in gamma0_2_basis(t, N, ring)] if t % 2 == 0 else []
    H = [Ej * h for h in level1_basis(t, N, ring)] if t % 2 == 0 else []

    nF, nG, nH = len(F), len(G), len(H)
    rows_top = []
    rows_bot = []
    zero = np.zeros(N, dtype=ring.dtype)
    for f in F:
        rows_top.append((v_operator(f, ell).scale(lw) - f).coeffs)
        rows_bot.append(f.scale(lw - 1).coeffs)
    for g in G:
        rows_top.append((-g).coeffs)
        rows_bot.append(zero)
    for h in H:
        rows_top.append(zero)
        rows_bot.append((-h).coeffs)
    A = np.hstack([np.vstack(rows_top), np.vstack(rows_bot)]).T
    K = zpk.kernel(A, p, k)
    Ka = K[:, :nF] if len(K) else np.zeros((0, nF), dtype=ring.dtype)

    # E_{p-1}^j M_t in coordinates on F (F is reduced echelon with pivots 0..nF-1)
    I = np.array([h.coeffs[:nF] for h in H], dtype=object).reshape(nH, nF)
    hI = zpk.howell(I, p, k, ncols=nF)
    reduced = np.array([hI.reduce(v) for v in Ka], dtype=object).reshape(len(Ka), nF)
    hQ = zpk.howell(reduced, p, k, ncols=nF)
    total = zpk.howell(np.vstack([hI.H, hQ.H]) if len(hQ.H) else hI.H, p, k, ncols=nF)
    report.order = total.span_size() // hI.span_size()
    for row in hQ.H:
        coords = [int(c) for c in hI.reduce(row)]
        order = _quotient_order(coords, hI, p, k)
        if order > 1:
            report.generators.append(BGenerator(F.combine(coords), coords, order))
    return report


def _quotient_order(v, hI: zpk.HowellForm, p: int, k: int) -> int:
    m = p**k
    for e in range(k + 1):
        if hI.contains([(p**e * int(x)) % m for x in v]):
            return p**e
    return p**k
