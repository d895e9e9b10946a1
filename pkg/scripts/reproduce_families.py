"""Rebuild and re-verify one small member of every family, plus the DHO code.

Distances are recomputed exhaustively for every row.  Run from anywhere:

    python scripts/reproduce_families.py
"""

from __future__ import annotations

import argparse
import time

from addqmds.code import qmds_length_bound, split_dimension
from addqmds.constructions import construct_A, construct_B, construct_Bbar, construct_spread_code
from addqmds.geometry import dda_to_code, search_dho

ROWS = [
    ("A", lambda: construct_A(2, 2, 2, 1)),
    ("A", lambda: construct_A(2, 2, 3, 1)),
    ("A", lambda: construct_A(3, 2, 2, 1)),
    ("A", lambda: construct_A(2, 4, 2, 2)),
    ("spread", lambda: construct_spread_code(2, 2, 1)),
    ("spread", lambda: construct_spread_code(2, 3, 1)),
    ("spread", lambda: construct_spread_code(2, 3, 2)),
    ("B", lambda: construct_B(2, 6, 3, 1)),
    ("Bbar", lambda: construct_Bbar(2, 6, 1)),
]


def describe(family: str, C, extra: str = "") -> str:
    d = C.min_distance()
    k, r0 = split_dimension(C.r, C.h)
    bound = qmds_length_bound(C.q, C.h, k, r0)
    dually = C.is_dually_qmds(method="direct")
    return (f"{family:<7} {C.type_string(d):<22} qmds={'yes' if C.is_qmds() else 'no':<3} "
            f"dually={'yes' if dually else 'no':<3} n_max={bound} {extra}").rstrip()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-dho", action="store_true", help="leave out the q=2, h=2 DHO search")
    a = ap.parse_args()
    for family, build in ROWS:
        t = time.perf_counter()
        P, C = build()
        extra = f"g={P.meta['g']}" if "g" in P.meta else ""
        print(describe(family, C, extra), f"({time.perf_counter() - t:.1f}s)")
    if not a.skip_dho:
        t = time.perf_counter()
        R = search_dho(2, 2)
        print(describe("DHO", dda_to_code(R.arc)), f"({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
