"""Tabulate which structures hold on generated profiles.

    python scripts/lattice_sweep.py --trials 500 --max-size 12

Each row is a generator; each column is the fraction of its profiles on
which the detector reports the column property.  The generator's own
column should read 1.000.
"""

import argparse
import random
import time

from dichotomous.detection import StructureProperty as S, detect
from dichotomous.generators import GenSpec, generate

COLUMNS = (S.TWO_PART, S.PART, S.VEI, S.VI, S.CEI, S.CI, S.WSC, S.SSC)
ROWS = ("2PART", "PART", "VEI", "VI", "CEI", "CI", "WSC", "DUE", "UNRESTRICTED")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--max-size", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'generator':>13} " + " ".join(f"{c.value:>6}" for c in COLUMNS))
    start = time.perf_counter()
    for row in ROWS:
        rng = random.Random(f"{args.seed}-{row}")
        hits = dict.fromkeys(COLUMNS, 0)
        unknown = 0
        for _ in range(args.trials):
            lo = 2 if row == "2PART" else 1
            p = generate(GenSpec(row, rng.randint(lo, args.max_size), rng.randint(lo, args.max_size), rng.getrandbits(64)))
            for col in COLUMNS:
                holds = detect(p, col).holds
                if holds is None:
                    unknown += 1
                elif holds:
                    hits[col] += 1
        cells = " ".join(f"{hits[c] / args.trials:6.3f}" for c in COLUMNS)
        print(f"{row:>13} {cells}   (SSC undecided: {unknown})")
    print(f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
