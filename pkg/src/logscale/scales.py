"""Finite logarithmic scales, normalization and table rendering."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .logalg import (
    DomainError,
    LogFreq,
    cents_between,
    factorize,
    gcd_all,
    ln_of,
    rational_ratio,
    rational_text,
    ratio_value,
    to_text,
)


@dataclass(frozen=True)
class Scale:
    """A strictly increasing tuple of positive frequencies."""

    degrees: tuple[LogFreq, ...]
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        for d in self.degrees:
            if d.sign() <= 0:
                raise DomainError(f"scale degree {d} is not a positive frequency")
        for a, b in zip(self.degrees, self.degrees[1:]):
            if not a < b:
                raise DomainError(f"scale degrees not strictly increasing at {a}, {b}")

    @classmethod
    def from_degrees(cls, degrees: Iterable[LogFreq], label: str = "", **meta) -> "Scale":
        """Sort and deduplicate ``degrees`` before building the scale."""
        return cls(tuple(sorted(set(degrees))), label, meta)

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]


@dataclass(frozen=True)
class ScaleRow:
    closed_form: str
    decimal: float
    cents: float
    ratio: Fraction | None = None


def schneider_octave_scale(m: int = 4) -> Scale:
    """``ln m, ln(m+1), ..., ln(m**2)``: one octave, since ln m**2 = 2 ln m."""
    if m < 2:
        raise DomainError(f"Schneider scale needs m >= 2, got {m}")
    return Scale(tuple(ln_of(k) for k in range(m, m * m + 1)), f"Schneider octave scale m={m}")


def root_approximation_scale(n: int, k: int, m: int) -> Scale:
    """Scale built from ``n**(2**k) ~ m``.

    Degrees are ``ln(n**j * m)`` for ``j < 2**k`` together with
    ``ln(n**(2**(k+1)))`` and ``ln(m**2)``.
    """
    if n < 2 or m < 2 or k < 1:
        raise DomainError(f"root approximation needs n, m >= 2 and k >= 1, got n={n} k={k} m={m}")
    degrees = [ln_of(n**j * m) for j in range(2**k)]
    degrees.append(ln_of(n ** (2 ** (k + 1))))
    degrees.append(ln_of(m * m))
    degenerate = n ** (2**k) == m
    return Scale.from_degrees(
        degrees, f"root approximation scale n={n} k={k} m={m}", degenerate=degenerate
    )


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def octave_doubling_exponent(p: int, n: int) -> int:
    """Smallest ``b >= 0`` with ``p**(2**b) >= n``, i.e. ceil(log2(log_p n)) for n > p."""
    b = 0
    while p ** (2**b) < n:
        b += 1
    return b


def factorization_scale(N: int) -> Scale:
    if N < 4:
        raise DomainError(f"factorization scale needs a composite N, got {N}")
    factors = factorize(N)
    if sum(factors.values()) < 2:
        raise DomainError(f"factorization scale needs a composite N, {N} is prime")
    degrees = [ln_of(d * N) for d in divisors(N)]
    powers = {}
    for p in factors:
        b = octave_doubling_exponent(p, N)
        powers[p] = b
        degrees.append(ln_of(p ** (2**b)))
    return Scale.from_degrees(degrees, f"factorization scale N={N}", exponents=powers)


def projective_set(bases: Sequence[int], heights: Sequence[int]) -> list[Fraction]:
    """All ``t = prod(b_i**a_i) > 1`` with ``|a_i| <= h_i`` and ``gcd(a) = 1``, ascending."""
    bases = list(bases)
    heights = list(heights)
    if not bases or len(bases) != len(heights):
        raise DomainError("projective scale needs equally many bases and heights (at least one)")
    if any(b < 2 for b in bases):
        raise DomainError(f"bases must be integers >= 2, got {bases}")
    if len(set(bases)) != len(bases):
        raise DomainError(f"bases must be pairwise distinct, got {bases}")
    if any(h < 1 for h in heights):
        raise DomainError(f"heights must be positive, got {heights}")
    found = set()
    for exps in itertools.product(*(range(-h, h + 1) for h in heights)):
        if gcd_all(exps) != 1:
            continue
        t = Fraction(1)
        for b, a in zip(bases, exps):
            t *= Fraction(b) ** a
        if t > 1:
            found.add(t)
    return sorted(found)


def projective_scale(bases: Sequence[int], heights: Sequence[int]) -> Scale:
    ts = projective_set(bases, heights)
    label = "projective scale bases=({}) heights=({})".format(
        ",".join(map(str, bases)), ",".join(map(str, heights))
    )
    return Scale(tuple(ln_of(t) for t in ts), label, {"T": ts})


def closed_form(x: LogFreq, ref: LogFreq) -> str:
    q = rational_ratio(x, ref)
    if q is not None:
        return rational_text(q)
    b, r = ref.exp_rational(), x.exp_rational()
    if b is not None and r is not None:
        base = rational_text(b)
        if b.denominator != 1:
            base = f"({base})"
        return f"log_{base}({rational_text(r)})"
    return f"({to_text(x)})/({to_text(ref)})"


def normalize_rows(scale: Scale | Sequence[LogFreq]) -> list[ScaleRow]:
    degrees = list(scale)
    if not degrees:
        raise DomainError("cannot normalize an empty scale")
    ref = degrees[0]
    if ref.is_zero():
        raise DomainError("first degree is zero")
    rows = []
    for i, x in enumerate(degrees):
        q = rational_ratio(x, ref)
        rows.append(
            ScaleRow(
                closed_form="1" if i == 0 else closed_form(x, ref),
                decimal=float(ratio_value(x, ref)),
                cents=cents_between(x, ref),
                ratio=q,
            )
        )
    return rows


def format_rows(rows: Sequence[ScaleRow], digits: int = 3) -> list[tuple[str, str, str]]:
    return [(r.closed_form, f"{r.decimal:.{digits}f}", f"{r.cents:.{digits}f}") for r in rows]


def render_table(rows: Sequence[ScaleRow], digits: int = 3) -> str:
    """Three-column text table: closed form, decimal, cents."""
    cells = [("Closed Form", "Decimal", "Cents")] + format_rows(rows, digits)
    widths = [max(len(c[i]) for c in cells) for i in range(3)]
    lines = []
    for n, (a, b, c) in enumerate(cells):
        lines.append(f"{a:<{widths[0]}}  {b:>{widths[1]}}  {c:>{widths[2]}}")
        if n == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)
