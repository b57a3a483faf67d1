"""Compare single-crossing refinability with the direct seemingly
single-crossing test on every small profile, up to renaming.

    python scripts/psc_ssc_check.py --max-m 3 --max-n 4
"""

import argparse
import itertools
import time

from dichotomous.detection import detect_ssc_exhaustive
from dichotomous.profile_core import profile_from_indices
from dichotomous.refinements import psc_exhaustive


def canonical(votes, m):
    best = None
    for perm in itertools.permutations(range(m)):
        key = tuple(sorted(tuple(sorted(perm[c] for c in v)) for v in votes))
        if best is None or key < best:
            best = key
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()

    start = time.perf_counter()
    checked = 0
    for m in range(1, args.max_m + 1):
        subsets = [frozenset(c for c in range(m) if mask >> c & 1) for mask in range(1 << m)]
        seen = set()
        for n in range(1, args.max_n + 1):
            for votes in itertools.combinations_with_replacement(subsets, n):
                key = canonical(votes, m)
                if key in seen:
                    continue
                seen.add(key)
                p = profile_from_indices(m, votes)
                psc = psc_exhaustive(p)
                ssc = detect_ssc_exhaustive(p) is not None
                checked += 1
                if psc != ssc:
                    print("disagreement:", [sorted(v) for v in votes], "psc", psc, "ssc", ssc)
        print(f"m={m}: {len(seen)} profiles")
    print(f"{checked} profiles checked in {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
