"""Compare the extended pipeline against exhaustive search on every small catalog group.

Usage:  python3 scripts/oracle_sweep.py [--cap 5000]
Prints one line per group: pipeline verdict, oracle verdict, agreement.
Exit status 1 if any pair of verdicts contradicts.
"""

from __future__ import annotations

import argparse
import sys

from ekrperm import ekr_verify as ev
from ekrperm import families as fam


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--cap", type=int, default=ev.BRUTE_CAP)
    args = ap.parse_args(argv)
    bad = 0
    for e in fam.catalog_entries():
        if int(e.notes["order"]) > args.cap:
            continue
        r = ev.report_for_entry(e, mode="extended", cap=args.cap)
        bad += not r.consistent
        print(f"{e.name:16s} strict={r.strict:8s} oracle={r.oracle!s:8s} "
              f"{'ok' if r.consistent else 'CONTRADICTION'}")
    for case in ev.product_ekr_suite(cap=args.cap):
        print(f"{case.name:24s} alpha={case.result.alpha} strict={case.result.strict} "
              f"theorem={'agrees' if case.agrees else 'DISAGREES'}")
        bad += not case.agrees
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
