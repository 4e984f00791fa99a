"""Compare sign conventions: braid generators (graded vs classical) and 4T patterns.

Shows which combinations make the 0-line E2 agree with A^I integrally.
"""
from __future__ import annotations

import argparse

from gwknots.chord_diagrams import SIGN_PATTERNS, a_i_presentation
from gwknots.tower_ss import e2_zero_line


def show(pres) -> str:
    parts = ([f"Z^{pres.free_rank}"] if pres.free_rank else []) + [f"Z/{t}" for t in pres.torsion]
    return "+".join(parts) or "0"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=5)
    args = ap.parse_args()
    ms = range(2, args.max_m + 1)
    print("E2 on the 0-line")
    for conv in ("graded-symmetric", "classical"):
        print(f"  {conv:<17}", "  ".join(f"m={m}: {show(e2_zero_line(m, conv).presentation):<10}" for m in ms), flush=True)
    print("A^I_(m-1) by 4T sign pattern")
    for name, signs in SIGN_PATTERNS.items():
        label = f"{name} {''.join('+' if s > 0 else '-' for s in signs)}"
        print(f"  {label:<17}", "  ".join(f"m={m}: {show(a_i_presentation(m - 1, name)):<10}" for m in ms), flush=True)


if __name__ == "__main__":
    main()
