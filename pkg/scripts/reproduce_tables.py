"""Print every constructed scale as a closed form / decimal / cents table.

    python3 scripts/reproduce_tables.py [--digits 3]
"""

import argparse

from logscale.scales import (
    Scale,
    factorization_scale,
    normalize_rows,
    projective_scale,
    render_table,
    root_approximation_scale,
    schneider_octave_scale,
)
from logscale.series import SeriesSpec, periodic_difference_series

TABLES = [
    ("Schneider octave scale, m=4", lambda: schneider_octave_scale(4)),
    ("factorial series", lambda: Scale(tuple(SeriesSpec("factorial").take(7)))),
    ("primorial series", lambda: Scale(tuple(SeriesSpec("primorial").take(8)))),
    ("periodic differences d=(3,5)", lambda: Scale(tuple(periodic_difference_series([3, 5], True, 8)))),
    ("root approximation n=2 k=2 m=17", lambda: root_approximation_scale(2, 2, 17)),
    ("factorization N=108", lambda: factorization_scale(108)),
    ("projective bases (2,3) heights (2,1)", lambda: projective_scale([2, 3], [2, 1])),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=3)
    args = ap.parse_args()
    for title, build in TABLES:
        print(f"## {title}\n")
        print(render_table(normalize_rows(build()), args.digits))
        print()


if __name__ == "__main__":
    main()
