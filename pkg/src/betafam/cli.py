"""Command-line interface: ``betafam <command> ...``.

Exit codes: 0 success (an empty search result included), 1 verification
mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import golden
from .finvariant import f_invariant, times_back
from .modforms import FULL, Gamma0, PrecisionError, UnsupportedLevelError, basis, delta, eisenstein
from .qseries import QQ, ZZ, NonUnitError, NotIntegralError, QSeries, ResidueRing, _ring_for_modulus, parse, render
from .search import BetaIndex, UnstableSearchError, bgroup, is_outside_image, search


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    ell: int = 2
    i: int | None = None
    t: int | None = None
    j: int | None = None
    k: int | None = None
    prec: int | None = None
    out_prec: int | None = None
    fmt: str = "text"
    verify: bool = True

    def index(self) -> BetaIndex:
        if self.p is None or self.j is None or self.k is None:
            raise UsageError("--p, --j and --k are required")
        i = self.i
        if i is None:
            w = self.t + self.j * (self.p - 1)
            if w % (self.p**2 - 1):
                raise UsageError(f"t + j(p-1) = {w} is not a multiple of p^2 - 1")
            i = w // (self.p**2 - 1)
        return BetaIndex(self.p, self.ell, i, self.j, self.k)

    def reduced_weight(self) -> int:
        if self.t is not None:
            return self.t
        return self.index().t


def _ring(mod: int | None):
    if mod is None:
        return ZZ
    return _ring_for_modulus(mod)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _coeffs(f: QSeries | None) -> list | None:
    if f is None:
        return None
    return [str(c) if f.ring == QQ else int(c) for c in f.coeffs]


def _series_json(f: QSeries) -> dict:
    return {"ring": str(f.ring), "precision": f.prec, "coeffs": _coeffs(f), "text": render(f)}


# -- commands --------------------------------------------------------------------

def cmd_eis(args) -> int:
    f = eisenstein(args.k, args.prec, _ring(args.mod))
    print(_dump(_series_json(f)) if args.format == "json" else render(f))
    return 0


def cmd_delta(args) -> int:
    f = delta(args.prec, _ring(args.mod))
    print(_dump(_series_json(f)) if args.format == "json" else render(f))
    return 0


def _parse_level(s: str):
    s = s.lower().replace(" ", "")
    if s in ("full", "1", "sl2z"):
        return FULL
    for prefix in ("gamma0(", "g0("):
        if s.startswith(prefix) and s.endswith(")"):
            return Gamma0(int(s[len(prefix) : -1]))
    if s.startswith("gamma0_") or s.startswith("g0_"):
        return Gamma0(int(s.split("_")[1]))
    raise UsageError(f"unknown level {s!r}; use 'full' or 'gamma0(2)'")


def cmd_basis(args) -> int:
    level = _parse_level(args.level)
    B = basis(level, args.weight, args.prec, _ring(args.mod))
    if args.format == "json":
        print(_dump({
            "level": str(level),
            "weight": args.weight,
            "ring": str(B.ring),
            "precision": B.prec,
            "basis": [_series_json(f) for f in B],
        }))
    else:
        print(f"# M_{args.weight}({level}) over {B.ring}: dimension {len(B)}")
        for f in B:
            print(render(f))
    return 0


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        p=args.p,
        ell=args.ell,
        i=getattr(args, "i", None),
        t=getattr(args, "t", None),
        j=args.j,
        k=args.k,
        prec=args.prec,
        out_prec=getattr(args, "out_prec", None),
        fmt=args.format,
        verify=not getattr(args, "no_verify", False),
    )


def _witness_json(w) -> dict:
    return {
        "f": _coeffs(w.f),
        "g": _coeffs(w.g),
        "a": [int(x) for x in w.a],
        "b": [int(x) for x in w.b],
        "order": w.order,
        "conditions": {f"c{n + 1}": bool(c) for n, c in enumerate(w.cond_flags)},
        "exceptional": w.index.exceptional,
        "text": render(w.f),
    }


def _search(cfg: RunConfig):
    idx = cfg.index()
    ws = search(idx, prec=cfg.prec, out_prec=cfg.out_prec, verify=cfg.verify)
    if cfg.out_prec:
        for w in ws:
            w.f = w.f.truncate(min(cfg.out_prec, w.f.prec))
    return idx, ws


def cmd_search(args) -> int:
    cfg = _config(args)
    idx, ws = _search(cfg)
    N = ws[0].f.prec if ws else (cfg.out_prec or cfg.prec or 0)
    if cfg.fmt == "json":
        print(_dump({
            "index": {"p": idx.p, "ell": idx.ell, "i": idx.i, "j": idx.j, "k": idx.k},
            "weight": idx.w,
            "t": idx.t,
            "witnesses": [_witness_json(w) for w in ws],
            "precision": N,
        }))
    else:
        note = " (outside the image of the sphere's 2-line)" if idx.exceptional else ""
        print(f"# {idx.label()}: weight {idx.w}, t = {idx.t}, {len(ws)} witness(es){note}")
        for w in ws:
            print(render(w.f))
    return 0


def cmd_finv(args) -> int:
    cfg = _config(args)
    idx, ws = _search(cfg)
    reps = [f_invariant(w) for w in ws]
    if cfg.fmt == "json":
        print(_dump({
            "index": {"p": idx.p, "ell": idx.ell, "i": idx.i, "j": idx.j, "k": idx.k},
            "weight": idx.w,
            "t": idx.t,
            "representatives": [
                {
                    "series": _coeffs(r.series),
                    "text": render(r.series),
                    "round_trip": times_back(r) == (r.source.f - r.source.f[0]),
                }
                for r in reps
            ],
        }))
    else:
        print(f"# f({idx.label().replace('f_', 'beta_')}) = {idx.p}^-{idx.k} E_{idx.p - 1}^-{idx.j} f")
        for r in reps:
            print(render(r.series))
    return 0


def cmd_bgroup(args) -> int:
    cfg = _config(args)
    if cfg.p is None or cfg.j is None or cfg.k is None:
        raise UsageError("--p, --j and --k are required")
    t = cfg.reduced_weight()
    rep = bgroup(cfg.p, cfg.ell, t, cfg.j, cfg.k, cfg.prec)
    if cfg.fmt == "json":
        print(_dump({
            "params": {"p": rep.p, "ell": rep.ell, "t": rep.t, "j": rep.j, "k": rep.k},
            "weight": rep.w,
            "precision": rep.prec,
            "order": rep.order,
            "generators": [{"f": _coeffs(g.f), "order": g.order, "text": render(g.f)} for g in rep.generators],
        }))
    else:
        print(f"# B_{{{t}/{cfg.j},{cfg.k}}} at p = {cfg.p}, ell = {cfg.ell}: order {rep.order}")
        for g in rep.generators:
            print(f"order {g.order}: {render(g.f)}")
    return 0


# -- golden table ------------------------------------------------------------------

def normalize(f: QSeries) -> QSeries:
    """Scale so the leading coefficient is 1 (the table allows unit multiples)."""
    if f.is_zero():
        return f
    lead = int(f[int(f.order())])
    if not f.ring.is_unit(lead):
        return f
    return f.scale(pow(lead, -1, f.ring.modulus))


def load_golden(path: str | None) -> list[golden.GoldenEntry]:
    if path is None:
        return list(golden.TABLE)
    with open(path) as fh:
        data = json.load(fh)
    return [golden.GoldenEntry(d["i"], d["j"], d["k"], d.get("expression", ""), d["text"]) for d in data]


def check_entry(entry: golden.GoldenEntry, prec: int | None = None, verify: bool = True) -> tuple[bool, list[str]]:
    """Recompute one table entry; returns (ok, report lines)."""
    expected = parse(entry.text)
    window = expected.prec if prec is None else min(prec, expected.prec)
    expected = expected.truncate(window)
    idx = BetaIndex(golden.P, golden.ELL, entry.i, entry.j, entry.k)
    ws = search(idx, out_prec=window, verify=verify)
    lines = []
    if len(ws) != 1:
        return False, [f"{entry.label}: expected one witness, found {len(ws)}"]
    got = normalize(ws[0].f.truncate(window))
    exp = normalize(expected)
    if got.ring != exp.ring:
        return False, [f"{entry.label}: ring {got.ring} differs from {exp.ring}"]
    for n in range(window):
        if got[n] != exp[n]:
            lines.append(f"{entry.label}: q^{n}: expected {int(exp[n])}, got {int(got[n])}")
    return not lines, lines


def _check_entry_star(args):
    return check_entry(*args)


def cmd_verify_table(args) -> int:
    entries = load_golden(args.golden)
    start = time.perf_counter()
    jobs = [(e, args.prec, not args.no_verify) for e in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_check_entry_star, jobs))
    else:
        results = [check_entry(*j) for j in jobs]
    failures = 0
    for e, (ok, lines) in zip(entries, results):
        print(f"{'PASS' if ok else 'FAIL'} {e.label} = {e.expression}".rstrip(" ="))
        for line in lines:
            print("  " + line)
        failures += not ok
    print(f"{len(entries) - failures}/{len(entries)} entries reproduced in {time.perf_counter() - start:.1f}s")
    return 1 if failures else 0


def cmd_dump_golden(args) -> int:
    print(_dump([{"i": e.i, "j": e.j, "k": e.k, "expression": e.expression, "text": e.text} for e in golden.TABLE]))
    return 0


# -- argument parsing ----------------------------------------------------------------

def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="betafam", description="beta-family congruences of modular forms")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eis", help="Eisenstein series E_k")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--prec", type=_positive, default=10)
    p.add_argument("--mod", type=_positive, help="reduce modulo this prime power")
    fmt(p)
    p.set_defaults(func=cmd_eis)

    p = sub.add_parser("delta", help="the discriminant form")
    p.add_argument("--prec", type=_positive, default=10)
    p.add_argument("--mod", type=_positive)
    fmt(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("basis", help="echelon basis of M_w")
    p.add_argument("--level", default="full", help="'full' or 'gamma0(2)'")
    p.add_argument("--weight", type=_nonneg, required=True)
    p.add_argument("--prec", type=_positive, default=None)
    p.add_argument("--mod", type=_positive)
    fmt(p)
    p.set_defaults(func=cmd_basis)

    def index_args(p, t_default_based: bool = False):
        p.add_argument("--p", type=_positive, required=True)
        p.add_argument("--ell", type=_positive, default=2)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--i", type=_positive)
        g.add_argument("--t", type=_nonneg)
        p.add_argument("--j", type=_nonneg if t_default_based else _positive, required=True)
        p.add_argument("--k", type=_positive, required=True)
        p.add_argument("--prec", type=_positive, default=None, help="solving precision")
        fmt(p)

    for name, func, helptext in (
        ("search", cmd_search, "find the forms f_{i/j,k}"),
        ("finv", cmd_finv, "f-invariant representatives"),
    ):
        p = sub.add_parser(name, help=helptext)
        index_args(p)
        p.add_argument("--out-prec", type=_positive, default=None, help="precision of printed expansions")
        p.add_argument("--no-verify", action="store_true", help="skip the double-precision re-solve")
        p.set_defaults(func=func)

    p = sub.add_parser("bgroup", help="the group B_{t/j,k}")
    index_args(p, t_default_based=True)
    p.set_defaults(func=cmd_bgroup)

    p = sub.add_parser("verify-table", help="recompute the p = 5 table and compare")
    p.add_argument("--prec", type=_positive, default=None, help="compare only below this q-power")
    p.add_argument("--golden", default=None, help="JSON file of golden entries")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("dump-golden", help="print the embedded golden table as JSON")
    p.set_defaults(func=cmd_dump_golden)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "command", None) == "basis" and args.prec is None:
            from .modforms import dimension, sturm_precision

            level = _parse_level(args.level)
            args.prec = max(sturm_precision(level, args.weight), dimension(level, args.weight), 1)
        return args.func(args)
    except UnstableSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, UnsupportedLevelError, PrecisionError, NotIntegralError, NonUnitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
