"""Random exact scales for exercising the completeness decision."""

from __future__ import annotations

import random
from fractions import Fraction

from .logalg import LogFreq, ZERO, combine
from .scales import Scale

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
_DENOMS = (1, 1, 1, 2, 4)


def _coeff(rng: random.Random) -> Fraction:
    while True:
        c = Fraction(rng.randint(-4, 4), rng.choice(_DENOMS))
        if c:
            return c


def random_degree(rng: random.Random, max_terms: int = 4, unit_prob: float = 0.15) -> LogFreq:
    """Sum of up to ``max_terms`` terms ``c * ln p`` with ``p <= 13``, ``|c| <= 4``."""
    coeffs = {}
    for p in rng.sample(SMALL_PRIMES, rng.randint(1, max_terms)):
        coeffs[p] = _coeff(rng)
    unit = Fraction(rng.randint(1, 8), rng.choice(_DENOMS)) if rng.random() < unit_prob else 0
    return LogFreq(unit, coeffs)


def random_scale(rng: random.Random, max_size: int = 6) -> Scale:
    """A random positive scale.

    Half the draws share one support term, so every interval is rational and
    complete scales turn up often; the rest mix independent terms.
    """
    size = rng.randint(1, max_size)
    degrees = set()
    shared = rng.random() < 0.5
    base = random_degree(rng, max_terms=1, unit_prob=0.2)
    if base.sign() < 0:
        base = -base
    attempts = 0
    while len(degrees) < size and attempts < 50 * size:
        attempts += 1
        if shared:
            d = combine(base, ZERO, Fraction(rng.randint(1, 16), rng.choice((1, 2, 4))), 0)
        else:
            d = random_degree(rng)
        if d.sign() > 0:
            degrees.add(d)
    return Scale.from_degrees(degrees, "random")
