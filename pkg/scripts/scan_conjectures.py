"""Run the three conjecture scans and the single-class checks as data.

Usage:  python3 scripts/scan_conjectures.py
Every line is "<scan> <value> pass|fail <detail>"; nothing here raises on a
failing value.
"""

from __future__ import annotations

import math
import time

from ekrperm import partitions_chars as pc
from ekrperm import singlecc as sc
from ekrperm.cli import psl_rank_row


def main():
    for n in range(2, 21):
        t0 = time.perf_counter()
        s = pc.character_bound_scan(n)
        print(f"char-bound {n} {'pass' if s.passed else 'fail'} violations={len(s.violations)} "
              f"({time.perf_counter() - t0:.2f}s)")
    for q in (3, 5, 7, 9, 11):
        rank, target, _ = psl_rank_row(q)
        print(f"psl-rank {q} {'pass' if rank == target else 'fail'} rank={rank} target={target}")
    for n in range(5, 13):
        c = sc.alt_least_scan(n)
        print(f"alt-least {n} {'pass' if c.holds else 'fail'} least={c.least} mult={c.multiplicity}")
    for n in range(1, 31):
        print(f"even-odd {n} {sc.even_odd_derangement_difference(n)}")
    for n in range(4, 8):
        r = sc.gamma_nn_least_and_rank(n)
        ok = r.rank == math.comb(2 * n - 2, n - 1)
        print(f"gamma-nn-rank {n} {'pass' if ok else 'fail'} rank={r.rank} tau={r.tau}")


if __name__ == "__main__":
    main()
