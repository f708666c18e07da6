"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import itertools
import re
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from conftest import encode, span_closure

from betafam import zpk
from betafam.cli import check_entry, normalize
from betafam.finvariant import f_invariant
from betafam.golden import ELL, P, TABLE
from betafam.modforms import (
    FULL,
    Gamma0,
    PrecisionError,
    delta,
    dim_full,
    dim_gamma0_2,
    eisenstein,
    gamma0_2_basis,
    hasse,
    level1_basis,
)
from betafam.qseries import QQ, ZZ, QSeries, ResidueRing, lift, parse, reduce, v_operator
from betafam.search import (
    BetaIndex,
    candidate_span,
    check_condition_1,
    check_condition_2,
    check_condition_3,
    check_condition_4,
    is_outside_image,
    search,
    search_precision,
)


@pytest.fixture
def report(capsys):
    def emit(n: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def _index(e) -> BetaIndex:
    return BetaIndex(P, ELL, e.i, e.j, e.k)


@pytest.fixture(scope="module")
def table_witnesses():
    out = []
    for e in TABLE:
        window = parse(e.text).prec
        (w,) = search(_index(e), out_prec=window)
        out.append((e, window, w))
    return out


# -- 1 ------------------------------------------------------------------------

def _evaluate(expression: str, prec: int, ring) -> QSeries:
    """Evaluate sums like "Delta^50 + 4 Delta^42 E4^24" in `ring`."""
    total = QSeries.zero(prec, ring)
    D, E = delta(prec, ring), eisenstein(4, prec, ring)
    for term in expression.split("+"):
        m = re.fullmatch(r"\s*(\d+)?\s*Delta\^(\d+)(?:\s*E4\^(\d+))?\s*", term)
        coeff, a, b = int(m.group(1) or 1), int(m.group(2)), int(m.group(3) or 0)
        total = total + (D**a * E**b).scale(coeff)
    return total


def test_criterion_1_golden_table(report):
    start = time.perf_counter()
    bad = []
    for e in TABLE:
        ok, lines = check_entry(e)
        expected = parse(e.text)
        # the printed expansion and the printed expression must agree as well
        if normalize(_evaluate(e.expression, expected.prec, expected.ring)) != normalize(expected):
            lines.append(f"{e.label}: expression and expansion disagree")
            ok = False
        if not ok:
            bad.extend(lines or [e.label])
    elapsed = time.perf_counter() - start
    report(1, "golden table reproduced exactly", not bad and elapsed < 600,
           f"{len(TABLE) - len(set(l.split(':')[0] for l in bad))}/{len(TABLE)} entries, {elapsed:.1f}s"
           + ("; " + "; ".join(bad[:5]) if bad else ""))


# -- 2 ------------------------------------------------------------------------

def test_criterion_2_identities(report):
    N = 200
    e4, e6, d = eisenstein(4, N), eisenstein(6, N), delta(N)
    ok = d.scale(1728) == e4**3 - e6**2
    for p in (5, 7, 11, 13):
        ok &= hasse(p, N, ResidueRing(p)) == QSeries.one(N, ResidueRing(p))
    report(2, "1728 Delta = E4^3 - E6^2 and E_{p-1} = 1 mod p at precision 200", bool(ok))


# -- 3 ------------------------------------------------------------------------

def _classical_full(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    return w // 12 if w % 12 == 2 else w // 12 + 1


def _classical_gamma0_2(w: int) -> int:
    return w // 4 + 1 if w >= 0 and w % 2 == 0 else 0


def test_criterion_3_dimensions(report):
    mismatches = []
    for w in range(2, 201, 2):
        n1 = len(level1_basis(w, w // 12 + 3, ZZ))
        n2 = len(gamma0_2_basis(w, w // 4 + 3, ZZ))
        if n1 != _classical_full(w) or n1 != dim_full(w):
            mismatches.append(("full", w, n1))
        if n2 != _classical_gamma0_2(w) or n2 != dim_gamma0_2(w):
            mismatches.append(("gamma0(2)", w, n2))
    report(3, "basis sizes match dimension formulas for even w <= 200", not mismatches,
           f"200 cases, {len(mismatches)} mismatches" + (f": {mismatches[:4]}" if mismatches else ""))


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_round_trip(report, table_witnesses):
    bad = []
    for e, _, w in table_witnesses:
        idx = w.index
        r = f_invariant(w)
        Ej = QSeries(list(eisenstein(idx.p - 1, r.prec).coeffs), QQ) ** idx.j
        back = (Ej * r.series).scale(idx.p**idx.k)
        if any(Fraction(c).denominator % idx.p == 0 for c in back.coeffs):
            bad.append(e.label)
            continue
        if reduce(back, idx.ring) != (w.f - w.f[0]).truncate(r.prec):
            bad.append(e.label)
    report(4, "p^k E_{p-1}^j f_invariant(f) = f - f(0) mod p^k", not bad, f"{len(table_witnesses)} witnesses")


# -- 5 ------------------------------------------------------------------------

def _condition_5_direct(f: QSeries, t: int, ell: int) -> bool:
    """Solve V(f) - f = sum b_y G_y by enumeration over the residue field or zpk."""
    G = gamma0_2_basis(t, f.prec, f.ring)
    target = v_operator(f, ell) - f
    if f.ring.k == 1 and len(G) <= 4:
        vecs = np.array([g.coeffs for g in G], dtype=np.int64)
        tv = np.array(target.coeffs, dtype=np.int64)
        return any(np.array_equal((np.array(b) @ vecs) % f.ring.p, tv) for b in itertools.product(range(f.ring.p), repeat=len(G)))
    x = zpk.solve(G.matrix().T, target.coeffs, f.ring.p, f.ring.k)
    return x is not None and G.combine([int(c) for c in x]) == target


def test_criterion_5_self_verification(report, table_witnesses):
    bad = []
    for e, _, w in table_witnesses:
        idx = w.index
        arithmetic = idx.t % ((idx.p - 1) * idx.p ** (idx.k - 1)) == 0
        f = w.f
        flags = (
            arithmetic and check_condition_1(idx.t, idx.p, idx.k),
            check_condition_2(f),
            check_condition_3(f, idx.t),
            check_condition_4(f, idx.w, idx.p, idx.k, paranoid=True),
            _condition_5_direct(f, idx.t, idx.ell),
        )
        if not all(flags):
            bad.append(f"{e.label} {flags}")
    report(5, "table witnesses pass the five independent checkers", not bad, "; ".join(bad))


# -- 6 ------------------------------------------------------------------------

def _enumerate_solutions(Fs, Gs, ell, p, prec):
    gvecs = np.array([g.coeffs for g in Gs], dtype=np.int64).reshape(len(Gs), prec)
    combos = np.array(list(itertools.product(range(p), repeat=len(Gs))), dtype=np.int64).reshape(-1, len(Gs))
    span = {tuple(r) for r in (combos @ gvecs) % p} if Gs else {tuple([0] * prec)}
    diffs = np.array([(v_operator(f, ell) - f).coeffs for f in Fs], dtype=np.int64).reshape(len(Fs), prec)
    return {a for a in itertools.product(range(p), repeat=len(Fs)) if tuple((np.array(a, dtype=np.int64) @ diffs) % p) in span}


def _row_span(H, n, p):
    rows = np.array(H, dtype=np.int64).reshape(-1, n)
    if len(rows) == 0:
        return {tuple([0] * n)}
    return {tuple((np.array(c, dtype=np.int64) @ rows) % p) for c in itertools.product(range(p), repeat=len(rows))}


def test_criterion_6_oracle(report):
    p, ell = 5, 2
    R = ResidueRing(p)
    instances = agree = 0
    for w in range(0, 17, 2):
        for j in range(0, w // (p - 1) + 1):
            t = w - j * (p - 1)
            for prec in range(1, 9):
                dim = dim_full(w)
                if prec < dim:
                    continue
                for exponents in (list(range(dim)), None):
                    try:
                        F, cand, H = candidate_span(p, ell, w, t, 1, prec, exponents=exponents)
                    except PrecisionError:
                        continue
                    if not cand:
                        continue
                    Fs = [F[n] for n in cand]
                    Gs = list(gamma0_2_basis(t, prec, R))
                    instances += 1
                    agree += _row_span(H, len(cand), p) == _enumerate_solutions(Fs, Gs, ell, p, prec)
    report(6, "exhaustive F_5 enumeration matches the Howell solver", instances > 0 and agree == instances,
           f"{agree}/{instances} instances")


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_linear_algebra(report):
    p, k, m = 5, 2, 25
    rng = np.random.default_rng(20261016)
    failures = []
    trials = 1000
    for trial in range(trials):
        r, c = int(rng.integers(1, 5)), int(rng.integers(1, 7))
        A = rng.integers(0, m, size=(r, c))
        # mix in multiples of p so zero divisors appear often
        A = np.where(rng.random((r, c)) < 0.3, (A * p) % m, A)
        h = zpk.howell(A, p, k, ncols=c)
        if not np.array_equal(zpk.howell(h.H, p, k, ncols=c).H, h.H):
            failures.append((trial, "idempotence"))
        if not np.array_equal(span_closure(h.H, m, c), span_closure(A, m, c)):
            failures.append((trial, "row span"))
        K = np.array(zpk.kernel(A, p, k), dtype=np.int64).reshape(-1, c)
        if np.any((K @ A.T) % m):
            failures.append((trial, "annihilation"))
        if c <= 4:
            # completeness: every x with A x = 0 lies in the span of the kernel rows
            xs = np.array(list(itertools.product(range(m), repeat=c)), dtype=np.int64)
            true_kernel = np.sort(encode(xs[np.all((xs @ A.T) % m == 0, axis=1)], m))
            if not np.array_equal(span_closure(K, m, c), true_kernel):
                failures.append((trial, "kernel completeness"))
        # A x = b is solvable iff b lies in the column span
        colspan = span_closure(A.T, m, r)
        b = rng.integers(0, m, size=r)
        if rng.random() < 0.5:
            b = (A @ rng.integers(0, m, size=c)) % m
        x = zpk.solve(A, b, p, k)
        if (x is not None) != bool(np.isin(encode(b[None, :], m), colspan)[0]):
            failures.append((trial, "solvability"))
        if x is not None and np.any((A @ np.array(x, dtype=np.int64) - b) % m):
            failures.append((trial, "solution"))
    report(7, "Howell form, kernel and solve over Z/25", not failures,
           f"{trials} matrices, {len(failures)} failures" + (f" {failures[:3]}" if failures else ""))


# -- 8 ------------------------------------------------------------------------

def _outside_image_reference(p: int, n: int, j: int) -> bool:
    return n >= 2 and p**n < j < p**n + p ** (n - 1)


def test_criterion_8_exceptional_indices(report):
    grid = [(n, j) for n in range(0, 5) for j in range(1, 1001)]
    wrong = [(n, j) for n, j in grid if is_outside_image(5, n, j) != _outside_image_reference(5, n, j)]
    flagged = is_outside_image(5, 2, 29) and BetaIndex(5, 2, 25, 29, 1).exceptional
    report(8, "exceptional-index classifier on the p = 5 grid", not wrong and flagged,
           f"{len(grid)} cases, {len(wrong)} mismatches, (2, 29) flagged: {flagged}")


# -- 9 ------------------------------------------------------------------------

def test_criterion_9_precision_stability(report, table_witnesses):
    changed = []
    for e, window, w in table_witnesses:
        idx = w.index
        again = search(idx, prec=2 * search_precision(idx), out_prec=window, verify=False)
        if len(again) != 1 or again[0].f.truncate(window) != w.f.truncate(window):
            changed.append(e.label)
    report(9, "doubling the precision leaves every coefficient unchanged", not changed,
           f"{len(table_witnesses)} entries" + (f"; changed: {changed}" if changed else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
