"""Random sweep over exact scales: completeness versus pairwise rationality.

Counts how often each certificate method is needed and checks that no
complete scale has an irrational interval.

    python3 scripts/theorem_sweep.py --count 5000 --seed 1
"""

import argparse
import itertools
import random
import time
from collections import Counter

from logscale.analysis import is_complete
from logscale.logalg import rational_ratio
from logscale.sampling import random_scale


def main():
    ap = argparse.ArgumentParser(description="completeness sweep")
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-size", type=int, default=6)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    stats = Counter()
    start = time.perf_counter()
    for _ in range(args.count):
        scale = random_scale(rng, args.max_size)
        rational = all(rational_ratio(x, y) is not None for x, y in itertools.combinations(scale, 2))
        v = is_complete(scale)
        stats["rational" if rational else "irrational"] += 1
        if v.complete:
            stats["complete"] += 1
            stats[f"method:{v.certificate.method}"] += 1
            if not rational:
                stats["VIOLATION"] += 1
                print("complete scale with an irrational interval:", [str(d) for d in scale])
        elif v.certificate_error:
            stats["certificate_error"] += 1
    elapsed = time.perf_counter() - start
    for key in sorted(stats):
        print(f"{key:>20}  {stats[key]}")
    print(f"{'seconds':>20}  {elapsed:.2f}")
    raise SystemExit(1 if stats["VIOLATION"] else 0)


if __name__ == "__main__":
    main()
