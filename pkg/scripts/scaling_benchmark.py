"""Time detection and the PAV dynamic programs on large generated profiles.

    python scripts/scaling_benchmark.py --sizes 250 500 1000 2000 -k 20
"""

import argparse
import random
import time

from dichotomous.consecutive_ones import BinaryMatrix, c1p_column_order
from dichotomous.detection import StructureProperty as S, detect
from dichotomous.generators import GenSpec, generate
from dichotomous.profile_core import profile_stats
from dichotomous.rules import pav_ci_bounded_s, pav_vi_bounded_d, pav_vi_bounded_s


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("-k", type=int, default=20)
    ap.add_argument("-s", type=int, default=3)
    ap.add_argument("-d", type=int, default=4)
    ap.add_argument("--seed", type=int, default=8)
    args = ap.parse_args()

    print(f"{'n=m':>6} {'VI detect':>10} {'VI dp(s)':>9} {'VI dp(d)':>9} {'CI detect':>10} {'CI dp(s)':>9} {'C1P':>7}")
    for size in args.sizes:
        vi = generate(GenSpec("VI", size, size, args.seed, s=args.s, d=args.d))
        order, t_vid = timed(lambda: detect(vi, S.VI).witness)
        _, t_vis = timed(pav_vi_bounded_s, vi, order, args.k)
        if (args.k + 1) ** profile_stats(vi).max_degree <= 10**6:
            _, t_vidd = timed(pav_vi_bounded_d, vi, order, args.k)
        else:
            t_vidd = float("nan")
        ci = generate(GenSpec("CI", size, size, args.seed, s=args.s, d=args.d))
        axis, t_cid = timed(lambda: detect(ci, S.CI).witness)
        _, t_cis = timed(pav_ci_bounded_s, ci, axis, args.k)

        rng = random.Random(size)
        hidden = list(range(size))
        rng.shuffle(hidden)
        rows = []
        for _ in range(size):
            lo = rng.randrange(size)
            rows.append({hidden[x] for x in range(lo, min(size, lo + rng.randint(1, 8)))})
        _, t_c1p = timed(c1p_column_order, BinaryMatrix.from_rows(size, rows))
        print(f"{size:>6} {t_vid:10.3f} {t_vis:9.3f} {t_vidd:9.3f} {t_cid:10.3f} {t_cis:9.3f} {t_c1p:7.3f}")


if __name__ == "__main__":
    main()
