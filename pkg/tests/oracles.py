"""Independent brute-force oracles shared by the analysis and acceptance tests."""

import itertools
from fractions import Fraction

from logscale.logalg import LogFreq

SHIFT_WINDOW = range(-64, 65)


def _vec(x):
    v = {"unit": x.unit}
    v.update(x.coeffs)
    return {k: c for k, c in v.items() if c}


def brute_coverage(degrees):
    """{(i, j): (difference, [(z, t), ...])} by exhaustive search over a shift window.

    Works on plain coefficient dicts so it shares no arithmetic with the library
    beyond reading ``unit`` and ``coeffs``.
    """
    degrees = list(degrees)
    vecs = [_vec(d) for d in degrees]
    out = {}
    for i, j in itertools.combinations(range(len(degrees)), 2):
        keys = set(vecs[i]) | set(vecs[j])
        diff = {k: vecs[j].get(k, 0) - vecs[i].get(k, 0) for k in keys}
        diff = {k: c for k, c in diff.items() if c}
        found = []
        for z, vz in enumerate(vecs):
            if set(vz) != set(diff):
                continue
            for t in SHIFT_WINDOW:
                scale = Fraction(2) ** t
                if all(diff[k] == scale * vz[k] for k in vz):
                    found.append((z, t))
        unit = diff.pop("unit", 0)
        out[(i, j)] = (LogFreq(unit, diff), found)
    return out


def all_pairs_rational(degrees):
    """True when every coefficient vector (unit included) is proportional to the last."""
    degrees = list(degrees)
    top = degrees[-1]
    keys = set(top.coeffs) | {"unit"}
    for d in degrees:
        keys |= set(d.coeffs)

    def vec(x):
        return [x.unit] + [x.coeffs.get(k, Fraction(0)) for k in sorted(k for k in keys if k != "unit")]

    vt = vec(top)
    for d in degrees:
        vd = vec(d)
        # proportional iff every 2x2 minor vanishes
        for a, b in itertools.combinations(range(len(vt)), 2):
            if vd[a] * vt[b] != vd[b] * vt[a]:
                return False
    return True
