"""Unbounded logarithmic frequency series.

All streams yield :class:`~logscale.logalg.LogFreq` values in strictly
increasing order.  The periodic-difference series is finite on request
because appending its missing terms needs a sort.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .logalg import LogFreq, DomainError, ln_of, primes

SERIES_KINDS = ("logarithmic", "factorial", "primorial", "periodic")


def logarithmic_series(start: int = 3) -> Iterator[LogFreq]:
    """``ln(start), ln(start + 1), ...``"""
    if start < 2:
        raise DomainError(f"logarithmic series must start at >= 2, got {start}")
    for k in itertools.count(start):
        yield ln_of(k)


def factorial_series() -> Iterator[LogFreq]:
    """``ln 2!, ln 3!, ln 4!, ...``; 0! and 1! would give a zero frequency."""
    acc = ln_of(2)
    yield acc
    for k in itertools.count(3):
        acc = acc + ln_of(k)
        yield acc


def primorial_series() -> Iterator[LogFreq]:
    """Logarithms of the primorials 2, 6, 30, 210, ... (Chebyshev theta at each prime)."""
    coeffs: dict[int, Fraction] = {}
    for p in primes():
        coeffs[p] = Fraction(1)
        yield LogFreq(0, coeffs)


def _periodic_base(divisors: Sequence[int]) -> Iterator[LogFreq]:
    acc = LogFreq()
    for d in itertools.cycle(divisors):
        acc = acc + ln_of(d)
        yield acc


def periodic_difference_series(
    divisors: Sequence[int], append_missing: bool = False, count: int = 8
) -> list[LogFreq]:
    """First ``count`` terms of the series whose consecutive differences cycle
    through ``ln d_1, ..., ln d_k``.

    With ``append_missing`` the frequencies ``ln d_2 ... ln d_k``, which the
    plain series never produces as differences, are merged in.
    """
    divisors = [int(d) for d in divisors]
    if not divisors:
        raise DomainError("periodic series needs at least one divisor")
    if any(d < 2 for d in divisors):
        raise DomainError(f"divisors must be >= 2, got {divisors}")
    if count < 0:
        raise DomainError("count must be >= 0")
    # count base terms are distinct, so the first count merged terms lie among them
    terms = list(itertools.islice(_periodic_base(divisors), count))
    if append_missing:
        merged = set(terms)
        merged.update(ln_of(d) for d in divisors[1:])
        terms = sorted(merged)
    return terms[:count]


@dataclass(frozen=True)
class SeriesSpec:
    kind: str
    start: int = 3
    divisors: tuple[int, ...] = field(default_factory=tuple)
    append_missing: bool = False

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise DomainError(f"unknown series kind {self.kind!r}")
        if self.kind == "periodic" and not self.divisors:
            raise DomainError("periodic series needs a nonempty divisor list")
        if self.kind == "logarithmic" and self.start < 2:
            raise DomainError("logarithmic series must start at >= 2")

    def take(self, count: int) -> list[LogFreq]:
        if count < 0:
            raise DomainError("count must be >= 0")
        if self.kind == "periodic":
            return periodic_difference_series(self.divisors, self.append_missing, count)
        stream = {
            "logarithmic": lambda: logarithmic_series(self.start),
            "factorial": factorial_series,
            "primorial": primorial_series,
        }[self.kind]()
        return list(itertools.islice(stream, count))

    @property
    def label(self) -> str:
        if self.kind == "logarithmic":
            return f"logarithmic series from ln {self.start}"
        if self.kind == "periodic":
            ds = ",".join(map(str, self.divisors))
            extra = ", missing terms appended" if self.append_missing else ""
            return f"periodic difference series d=({ds}){extra}"
        return f"{self.kind} series"
