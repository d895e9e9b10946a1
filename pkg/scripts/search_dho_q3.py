"""Exhaustive dual hyperoval search for q=3, h=2 with resumable progress.

Progress goes to a JSON state file after every work unit; rerunning the
script with the same file picks up where it stopped.

    python scripts/search_dho_q3.py --workers 8 --state runs/dho_q3_h2.json
"""

from __future__ import annotations

import argparse
import os
import time
from pathlib import Path

from addqmds.geometry import search_dho


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--h", type=int, default=2)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--state", default="runs/dho_q3_h2.json")
    ap.add_argument("--batch", type=int, default=4, help="units per progress line")
    a = ap.parse_args()
    state = Path(a.state)
    state.parent.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    while True:
        R = search_dho(a.q, a.h, state_path=state, workers=a.workers, max_units=a.batch)
        print(f"{R.status:<10} units {R.units_done}/{R.units_total} nodes {R.nodes} "
              f"{time.perf_counter() - start:.0f}s", flush=True)
        if R.status != "incomplete":
            break
    if R.status == "found":
        print("blocks:")
        for B in R.arc.blocks:
            print(" ", B)


if __name__ == "__main__":
    main()
