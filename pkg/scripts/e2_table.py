"""Print the 0-line E2 table next to the chord diagram side.

    python scripts/e2_table.py --max-m 6
"""
from __future__ import annotations

import argparse
import time

from gwknots.braid_homotopy import DEFAULT_CONVENTION
from gwknots.tower_ss import verify_e2comp


def group(d: dict) -> str:
    parts = ([f"Z^{d['free']}"] if d["free"] else []) + [f"Z/{t}" for t in d["torsion"]]
    return " + ".join(parts) or "0"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=5)
    ap.add_argument("--convention", default=DEFAULT_CONVENTION, choices=("graded-symmetric", "classical"))
    args = ap.parse_args()
    print(f"{'m':>2}  {'E1 deg0':>7}  {'E1 deg1':>12}  {'d1 rank':>7}  {'E2':>14}  {'A^I_(m-1)':>14}  status   time")
    for m in range(2, args.max_m + 1):
        t0 = time.time()
        rep = verify_e2comp(m, args.convention)
        d1 = rep["e1_deg1"]
        deg1 = f"{d1['free']}+{d1['torsion2']}(2)" + ("*" if d1["eta_special"] else "")
        print(
            f"{m:>2}  {rep['e1_deg0']:>7}  {deg1:>12}  {rep['d1']['rank']:>7}  "
            f"{group(rep['e2']):>14}  {group(rep['chord_side']):>14}  {rep['status']:<8} {time.time() - t0:5.1f}s",
            flush=True,
        )
    print("E1 deg1 = free + formal Z/2 rank; * marks the eta column.")


if __name__ == "__main__":
    main()
