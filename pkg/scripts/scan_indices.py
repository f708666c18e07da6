"""Scan beta-indices for p, ell and tabulate witnesses and B-group orders.

    python scripts/scan_indices.py --p 5 --imax 5 --kmax 2
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from betafam.qseries import render
from betafam.search import BetaIndex, bgroup, search


@dataclass
class ScanConfig:
    p: int = 5
    ell: int = 2
    imax: int = 5
    kmax: int = 1
    with_bgroup: bool = False


def scan(cfg: ScanConfig):
    for i in range(1, cfg.imax + 1):
        w = i * (cfg.p**2 - 1)
        for k in range(1, cfg.kmax + 1):
            for j in range(1, w // (cfg.p - 1) + 1):
                idx = BetaIndex(cfg.p, cfg.ell, i, j, k)
                if idx.t % ((cfg.p - 1) * cfg.p ** (k - 1)):
                    continue
                ws = search(idx, verify=False)
                order = bgroup(cfg.p, cfg.ell, idx.t, j, k).order if cfg.with_bgroup else ""
                lead = render(ws[0].f.truncate(int(ws[0].f.order()) + 3)) if ws else ""
                yield {"i": i, "j": j, "k": k, "t": idx.t, "witnesses": len(ws),
                       "exceptional": idx.exceptional, "bgroup_order": order, "leading": lead}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--imax", type=int, default=5)
    ap.add_argument("--kmax", type=int, default=1)
    ap.add_argument("--bgroup", action="store_true", help="also compute |B_{t/j,k}| (slow)")
    args = ap.parse_args()
    cfg = ScanConfig(args.p, args.ell, args.imax, args.kmax, args.bgroup)

    writer = None
    for row in scan(cfg):
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)


if __name__ == "__main__":
    main()
