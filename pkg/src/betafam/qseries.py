"""Truncated power series in q over Z, Q and Z/p^k.

Every modular form in this package is handled through its q-expansion, so
this module is the common currency of everything else.  Series are
immutable; arithmetic between two series truncates to the smaller precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

# Residues below this bound are stored as int64; convolutions of length up to
# ~2**20 then cannot overflow.
_SMALL_MODULUS = 1 << 20


class RingMismatchError(ValueError):
    pass


class NonUnitError(ValueError):
    pass


class NotIntegralError(ValueError):
    """A rational coefficient has the modulus' prime in its denominator."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Integers:
    def __str__(self) -> str:
        return "ZZ"


@dataclass(frozen=True)
class Rationals:
    def __str__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class ResidueRing:
    """Z/p^k with p >= 5 prime."""

    p: int
    k: int = 1

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 5:
            raise ValueError(f"residue rings need a prime p >= 5, got {self.p}")
        if self.k < 1:
            raise ValueError(f"exponent k must be positive, got {self.k}")

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def dtype(self):
        return np.int64 if self.modulus < _SMALL_MODULUS else object

    def __str__(self) -> str:
        return f"Z/{self.p}^{self.k}" if self.k > 1 else f"Z/{self.p}"

    def is_unit(self, x: int) -> bool:
        return int(x) % self.p != 0


ZZ = Integers()
QQ = Rationals()
CoeffRing = Union[Integers, Rationals, ResidueRing]


def _to_ring(values: Iterable, ring: CoeffRing) -> np.ndarray:
    """Map arbitrary exact numbers into canonical representatives of `ring`."""
    vals = list(values)
    if isinstance(ring, ResidueRing):
        m = ring.modulus
        out = []
        for v in vals:
            if isinstance(v, Fraction):
                if v.denominator % ring.p == 0:
                    raise NotIntegralError(f"{v} is not {ring.p}-integral")
                v = v.numerator * pow(v.denominator, -1, m)
            out.append(int(v) % m)
        return np.array(out, dtype=ring.dtype).reshape(len(out))
    if isinstance(ring, Integers):
        out = []
        for v in vals:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise NotIntegralError(f"{v} is not an integer")
                v = v.numerator
            out.append(int(v))
        return _obj(out)
    return _obj([Fraction(v) for v in vals])


def _obj(values: Sequence) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        arr[i] = v
    return arr


class QSeries:
    """c_0 + c_1 q + ... + c_{N-1} q^{N-1} + O(q^N) over a coefficient ring."""

    __slots__ = ("ring", "_c")

    def __init__(self, coeffs, ring: CoeffRing = ZZ, *, _canonical: bool = False):
        if _canonical:
            arr = coeffs
        else:
            arr = _to_ring(coeffs, ring)
        if len(arr) == 0:
            raise ValueError("precision must be positive")
        arr.flags.writeable = False
        self.ring = ring
        self._c = arr

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring: CoeffRing) -> "QSeries":
        if isinstance(ring, ResidueRing):
            arr = np.mod(arr, ring.modulus)
            if ring.dtype is np.int64:
                arr = arr.astype(np.int64, copy=False)
        return cls(arr, ring, _canonical=True)

    @classmethod
    def zero(cls, prec: int, ring: CoeffRing = ZZ) -> "QSeries":
        return cls([0] * prec, ring)

    @classmethod
    def one(cls, prec: int, ring: CoeffRing = ZZ) -> "QSeries":
        return cls.monomial(0, prec, ring)

    @classmethod
    def monomial(cls, n: int, prec: int, ring: CoeffRing = ZZ, coeff=1) -> "QSeries":
        c = [0] * prec
        if n < prec:
            c[n] = coeff
        return cls(c, ring)

    # -- basic accessors ------------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of length `prec`."""
        return self._c

    def __getitem__(self, n):
        return self._c[n]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def tolist(self) -> list:
        return [int(c) if not isinstance(c, Fraction) else c for c in self._c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.prec == other.prec
            and all(a == b for a, b in zip(self._c, other._c))
        )

    def __hash__(self):
        return hash((self.ring, tuple(self.tolist())))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality up to the smaller of the two precisions."""
        _check_ring(self, other)
        n = min(self.prec, other.prec)
        return all(a == b for a, b in zip(self._c[:n], other._c[:n]))

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return QSeries(self._c[:prec].copy(), self.ring, _canonical=True)

    def is_zero(self) -> bool:
        return not any(self._c)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return self + self._scalar_series(other)
        _check_ring(self, other)
        n = min(self.prec, other.prec)
        return QSeries._wrap(self._c[:n] + other._c[:n], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._wrap(-self._c, self.ring)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return self - self._scalar_series(other)
        _check_ring(self, other)
        n = min(self.prec, other.prec)
        return QSeries._wrap(self._c[:n] - other._c[:n], self.ring)

    def __rsub__(self, other):
        return self._scalar_series(other) - self

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        _check_ring(self, other)
        n = min(self.prec, other.prec)
        return QSeries._wrap(_convolve(self._c[:n], other._c[:n], n, self.ring), self.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "QSeries":
        if isinstance(self.ring, ResidueRing):
            c = _to_ring([c], self.ring)[0]
            return QSeries._wrap(self._c * c, self.ring)
        if isinstance(self.ring, Integers):
            if isinstance(c, Fraction) and c.denominator != 1:
                raise NotIntegralError(f"scalar {c} leaves ZZ")
            return QSeries._wrap(self._c * int(c), self.ring)
        return QSeries._wrap(self._c * Fraction(c), self.ring)

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return self.inv_unit() ** (-e)
        result = QSeries.one(self.prec, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _scalar_series(self, c) -> "QSeries":
        return QSeries.monomial(0, self.prec, self.ring, c)

    def shift(self, n: int) -> "QSeries":
        """Multiply by q^n, keeping the precision."""
        c = np.zeros(self.prec, dtype=self._c.dtype)
        if self._c.dtype == object:
            c[:] = 0 if not isinstance(self.ring, Rationals) else Fraction(0)
        if n < self.prec:
            c[n:] = self._c[: self.prec - n]
        return QSeries._wrap(c, self.ring)

    def inv_unit(self) -> "QSeries":
        return inv_unit(self)

    def order(self) -> float | int:
        return order_of_vanishing(self)

    def __repr__(self) -> str:
        return f"QSeries({render(self)!r})"

    __str__ = lambda self: render(self)  # noqa: E731


def _check_ring(a: QSeries, b: QSeries) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def _convolve(a: np.ndarray, b: np.ndarray, n: int, ring: CoeffRing) -> np.ndarray:
    if isinstance(ring, ResidueRing) and ring.dtype is np.int64:
        m = ring.modulus
        # Bound the accumulated sum so int64 never overflows.
        if n * (m - 1) ** 2 < (1 << 62):
            return np.convolve(a, b)[:n] % m
        return (np.convolve(a.astype(object), b.astype(object))[:n] % m).astype(np.int64)
    return np.convolve(a, b)[:n]


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def inv_unit(a: QSeries) -> QSeries:
    """Multiplicative inverse of a series whose constant term is a unit."""
    ring = a.ring
    c0 = a[0]
    if isinstance(ring, ResidueRing):
        if not ring.is_unit(c0):
            raise NonUnitError(f"constant term {c0} is not a unit in {ring}")
        b0 = pow(int(c0), -1, ring.modulus)
    elif isinstance(ring, Integers):
        if c0 not in (1, -1):
            raise NonUnitError(f"constant term {c0} is not a unit in ZZ")
        b0 = int(c0)
    else:
        if c0 == 0:
            raise NonUnitError("constant term is zero")
        b0 = 1 / Fraction(c0)
    # Newton iteration b <- b (2 - a b), doubling the correct precision.
    b = QSeries.monomial(0, 1, ring, b0)
    n = 1
    while n < a.prec:
        n = min(2 * n, a.prec)
        ab = a.truncate(n) * _pad(b, n)
        b = _pad(b, n) * (2 - ab)
    return b


def _pad(a: QSeries, n: int) -> QSeries:
    if a.prec >= n:
        return a.truncate(n)
    return QSeries(a.tolist() + [0] * (n - a.prec), a.ring)


def v_operator(a: QSeries, ell: int) -> QSeries:
    """f(q) -> f(q^ell), keeping the precision."""
    if ell < 1:
        raise ValueError("ell must be positive")
    zero = Fraction(0) if isinstance(a.ring, Rationals) else 0
    out = np.empty(a.prec, dtype=a.coeffs.dtype)
    out[:] = zero
    src = a.coeffs[: (a.prec - 1) // ell + 1]
    out[:: ell] = src
    return QSeries(out, a.ring, _canonical=True)


def order_of_vanishing(a: QSeries) -> float | int:
    """Index of the first nonzero coefficient, or math.inf if none is stored.

    Over Z/p^k "nonzero" means nonzero modulo p^k, so 5q over Z/25 has order 1.
    """
    nz = np.flatnonzero(a.coeffs != 0)
    return int(nz[0]) if len(nz) else math.inf


def reduce(a: QSeries, target: CoeffRing) -> QSeries:
    """Coefficientwise image of `a` in `target`."""
    src = a.ring
    if isinstance(src, ResidueRing):
        if not isinstance(target, ResidueRing) or target.p != src.p or target.k > src.k:
            raise ValueError(f"cannot map {src} to {target}")
        return QSeries._wrap(a.coeffs % target.modulus, target)
    return QSeries(a.coeffs, target)


def lift(a: QSeries, target: CoeffRing = ZZ) -> QSeries:
    """Lift residues to integers in [0, p^k)."""
    if not isinstance(a.ring, ResidueRing):
        raise ValueError("lift expects a residue-ring series")
    return QSeries([int(c) for c in a.coeffs], target)


def content_valuation(a: QSeries, p: int) -> float | int:
    """Minimal p-adic valuation of the coefficients (inf for the zero series)."""
    best = math.inf
    for c in a.coeffs:
        if c:
            v = 0
            c = int(c)
            while c % p == 0:
                c //= p
                v += 1
            best = min(best, v)
    return best


# -- text rendering -------------------------------------------------------------

def _term(c, n: int) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        cs = f"({c.numerator}/{c.denominator})"
    else:
        cs = str(int(c))
    if n == 0:
        return cs
    mono = "q" if n == 1 else f"q^{n}"
    return mono if cs == "1" else f"{cs}*{mono}"


def render(a: QSeries) -> str:
    """Render in the "c*q^n + ... + O(q^N) mod m" layout."""
    parts: list[str] = []
    for n, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if parts and not isinstance(a.ring, ResidueRing) and c < 0:
            parts.append("- " + _term(-c, n))
        else:
            parts.append(("+ " if parts else "") + _term(c, n))
    parts.append(("+ " if parts else "") + f"O(q^{a.prec})")
    s = " ".join(parts)
    if isinstance(a.ring, ResidueRing):
        s += f" mod {a.ring.modulus}"
    return s


_TERM_RE = re.compile(r"^(?:(?:\((-?\d+)/(\d+)\))|(-?\d+))?(?:\*?q(?:\^(\d+))?)?$")


def parse(text: str, ring: CoeffRing | None = None) -> QSeries:
    """Inverse of `render`; whitespace (including newlines) is insignificant.

    If `ring` is omitted it is read from a trailing "mod m" (m a prime power)
    or defaults to QQ.
    """
    s = " ".join(text.split())
    m = re.search(r"\s*mod\s+(\d+)\s*$", s)
    if m:
        s = s[: m.start()]
        if ring is None:
            ring = _ring_for_modulus(int(m.group(1)))
    if ring is None:
        ring = QQ
    m = re.search(r"O\(q\^(\d+)\)\s*$", s)
    if not m:
        raise ValueError("missing O(q^N) term")
    prec = int(m.group(1))
    body = s[: m.start()].strip()
    body = re.sub(r"[+]\s*$", "", body).strip()
    coeffs: list = [0] * prec
    if body:
        body = re.sub(r"\s+-\s+", " + -", body)
        for tok in body.split(" + "):
            tok = tok.replace(" ", "")
            sign = 1
            if tok.startswith("-") and not tok[1:2].isdigit():
                sign, tok = -1, tok[1:]
            mt = _TERM_RE.match(tok)
            if not mt or tok == "":
                raise ValueError(f"cannot parse term {tok!r}")
            num, den, integer, exp = mt.groups()
            has_q = "q" in tok
            if num is not None:
                c = Fraction(int(num), int(den))
            elif integer is not None:
                c = int(integer)
            else:
                c = 1
            c *= sign
            n = (int(exp) if exp else 1) if has_q else 0
            if n >= prec:
                raise ValueError(f"term q^{n} beyond O(q^{prec})")
            coeffs[n] += c
    return QSeries(coeffs, ring)


def _ring_for_modulus(m: int) -> ResidueRing:
    for p in range(5, m + 1):
        if m % p == 0 and is_prime(p):
            k = 0
            r = m
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return ResidueRing(p, k)
    raise ValueError(f"modulus {m} is not a power of a prime >= 5")
