"""Difference-tone coverage, complete-difference-tone decisions and factored chords.

Indices in every report are 0-based positions into ``scale.degrees``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .logalg import (
    DomainError,
    LogFreq,
    factorize,
    ln_of,
    octave_shift_between,
    rational_ratio,
    rational_text,
)
from .scales import Scale

# bound on alternative h-map choices tried when a cycle is degenerate
_MAX_REROUTES = 4096


class CertificateError(ArithmeticError):
    """No rationality certificate could be produced for the given scale."""


@dataclass(frozen=True)
class PairCoverage:
    i: int
    j: int
    difference: LogFreq
    matches: tuple[tuple[int, int], ...]  # (degree index z, octave shift t)

    @property
    def covered(self) -> bool:
        return bool(self.matches)


@dataclass(frozen=True)
class CoverageReport:
    pairs: tuple[PairCoverage, ...]
    covered_count: int
    total_pairs: int

    def uncovered(self) -> list[PairCoverage]:
        return [p for p in self.pairs if not p.covered]


@dataclass(frozen=True)
class Certificate:
    """Rational ratios ``q_i`` with ``f_i = q_i * f_n`` and the relations proving them.

    ``h_map`` holds ``(i, h(i), t_i)`` with ``f_n - f_i = 2**t_i * f_h(i)``.
    ``method`` is ``"orbit"`` when the h-map orbit algebra alone determines
    every ratio, ``"relations"`` when degenerate cycles forced a solve over
    all pairwise covering relations (listed in ``relations`` as
    ``(i, j, z, t)`` meaning ``f_j - f_i = 2**t * f_z``).
    """

    ratios: tuple[Fraction, ...]
    h_map: tuple[tuple[int, int, int], ...]
    periodic: tuple[int, ...] = ()
    method: str = "orbit"
    relations: tuple[tuple[int, int, int, int], ...] = ()


@dataclass(frozen=True)
class Verdict:
    complete: bool
    certificate: Certificate | None = None
    first_uncovered: PairCoverage | None = None
    certificate_error: str | None = None


def _matches(diff: LogFreq, degrees: Sequence[LogFreq]) -> tuple[tuple[int, int], ...]:
    out = []
    for z, fz in enumerate(degrees):
        t = octave_shift_between(diff, fz)
        if t is not None:
            out.append((z, t))
    return tuple(out)


def coverage_report(scale: Scale | Sequence[LogFreq]) -> CoverageReport:
    degrees = list(scale)
    pairs = []
    for i in range(len(degrees)):
        for j in range(i + 1, len(degrees)):
            diff = degrees[j] - degrees[i]
            pairs.append(PairCoverage(i, j, diff, _matches(diff, degrees)))
    covered = sum(1 for p in pairs if p.covered)
    return CoverageReport(tuple(pairs), covered, len(pairs))


def is_complete(scale: Scale | Sequence[LogFreq]) -> Verdict:
    """Decide whether every pairwise difference is an octave-equivalent of a degree."""
    degrees = list(scale)
    if not degrees:
        raise DomainError("empty scale")
    n = len(degrees)
    for i in range(n):
        for j in range(i + 1, n):
            diff = degrees[j] - degrees[i]
            if not any(octave_shift_between(diff, fz) is not None for fz in degrees):
                return Verdict(False, first_uncovered=PairCoverage(i, j, diff, ()))
    try:
        cert = rationality_certificate(degrees)
    except CertificateError as exc:
        return Verdict(True, certificate_error=str(exc))
    return Verdict(True, certificate=cert)


def _candidates(degrees: Sequence[LogFreq]) -> list[list[tuple[int, int]]]:
    top = degrees[-1]
    cands = []
    for i, fi in enumerate(degrees[:-1]):
        found = list(_matches(top - fi, degrees))
        if not found:
            raise CertificateError(f"scale is not complete: no h-image for index {i}")
        cands.append(found)
    return cands


class _DegenerateCycle(Exception):
    def __init__(self, cycle):
        self.cycle = cycle


def _solve_orbits(h: Sequence[tuple[int, int]], n: int):
    """Solve ``q_i = 1 - 2**t_i * q_h(i)`` with ``q_n = 1`` along the orbits of ``h``.

    Returns ``(q, periodic)``.  Raises :class:`_DegenerateCycle` when a cycle's
    equation does not pin down its ratio.
    """
    last = n - 1
    q: list[Fraction | None] = [None] * n
    q[last] = Fraction(1)
    periodic = {last}
    for start in range(n):
        path = []
        on_path = {}
        i = start
        while q[i] is None and i not in on_path:
            on_path[i] = len(path)
            path.append(i)
            i = h[i][0]
        if q[i] is None:
            cycle = path[on_path[i]:]
            # q_c0 = a + b * q_c0 after composing the affine maps around the cycle
            a, b = Fraction(0), Fraction(1)
            for c in reversed(cycle):
                scale = Fraction(2) ** h[c][1]
                a, b = 1 - scale * a, -scale * b
            if b == 1:
                raise _DegenerateCycle(tuple(cycle))
            q[i] = a / (1 - b)
            periodic.update(cycle)
        for c in reversed(path):
            if q[c] is None:
                j, t = h[c]
                q[c] = 1 - Fraction(2) ** t * q[j]
    return q, periodic


def _solve_relations(degrees: Sequence[LogFreq]):
    """Exact Gaussian elimination over every covering relation of the scale."""
    n = len(degrees)
    rows = []
    relations = []
    e = [Fraction(0)] * (n + 1)
    e[n - 1] = Fraction(1)
    e[n] = Fraction(1)
    rows.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            for z, t in _matches(degrees[j] - degrees[i], degrees):
                r = [Fraction(0)] * (n + 1)
                r[j] += 1
                r[i] -= 1
                r[z] -= Fraction(2) ** t
                rows.append(r)
                relations.append((i, j, z, t))
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((k for k in range(row, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for k in range(len(rows)):
            if k != row and rows[k][col]:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[row])]
        pivots.append(col)
        row += 1
    if len(pivots) < n:
        raise CertificateError("covering relations do not determine the ratios")
    return [rows[k][n] for k in range(n)], tuple(relations)


def rationality_certificate(scale: Scale | Sequence[LogFreq]) -> Certificate:
    """Certificate that a complete scale is a set of rational multiples of its top degree.

    ``h(i)`` is the smallest index ``j`` with ``f_n - f_i = 2**t * f_j``.  The
    ratios follow by back-substitution along each orbit of ``h`` and by solving
    the single linear equation around each cycle.  If a cycle's equation is
    degenerate, alternative images are tried for the cycle's members; failing
    that, all pairwise covering relations are solved together.
    """
    degrees = list(scale)
    if not degrees:
        raise DomainError("empty scale")
    n = len(degrees)
    top = degrees[-1]
    cands = _candidates(degrees)
    choice = [0] * (n - 1)
    seen = set()
    stack = [tuple(choice)]
    result = None
    while stack and len(seen) < _MAX_REROUTES:
        choice = stack.pop()
        if choice in seen:
            continue
        seen.add(choice)
        h = [cands[i][c] for i, c in enumerate(choice)] + [(n - 1, 0)]
        try:
            q, periodic = _solve_orbits(h, n)
        except _DegenerateCycle as exc:
            for c in reversed(exc.cycle):
                for alt in range(len(cands[c]) - 1, -1, -1):
                    if alt != choice[c]:
                        nxt = list(choice)
                        nxt[c] = alt
                        stack.append(tuple(nxt))
            continue
        h_map = tuple((i, j, t) for i, (j, t) in enumerate(h))
        result = Certificate(tuple(q), h_map, tuple(sorted(periodic)))
        break
    if result is None:
        q, relations = _solve_relations(degrees)
        h = [cands[i][0] for i in range(n - 1)] + [(n - 1, 0)]
        h_map = tuple((i, j, t) for i, (j, t) in enumerate(h))
        result = Certificate(tuple(q), h_map, (), "relations", relations)
    check_certificate(degrees, result)
    return result


def check_certificate(degrees: Sequence[LogFreq], cert: Certificate) -> None:
    """Symbolically verify every ratio and relation of ``cert``; raise on failure."""
    top = degrees[-1]
    if len(cert.ratios) != len(degrees) or cert.ratios[-1] != 1:
        raise CertificateError("certificate has the wrong shape")
    for i, (fi, qi) in enumerate(zip(degrees, cert.ratios)):
        if rational_ratio(fi, top) != qi:
            raise CertificateError(f"ratio q_{i} = {qi} disagrees with f_{i} / f_n")
    for i, j, t in cert.h_map:
        if i == len(degrees) - 1:
            continue
        if top - degrees[i] != degrees[j] * Fraction(2) ** t:
            raise CertificateError(f"h-map entry ({i}, {j}, {t}) does not hold")
    for i, j, z, t in cert.relations:
        if degrees[j] - degrees[i] != degrees[z] * Fraction(2) ** t:
            raise CertificateError(f"relation ({i}, {j}, {z}, {t}) does not hold")


# factored chords -------------------------------------------------------

INTERVAL_NAMES = {
    Fraction(2): "octave",
    Fraction(3, 2): "fifth",
    Fraction(4, 3): "fourth",
    Fraction(5, 4): "major third",
    Fraction(6, 5): "minor third",
    Fraction(5, 3): "major sixth",
    Fraction(8, 5): "minor sixth",
    Fraction(9, 8): "major second",
}


@dataclass(frozen=True)
class Chord:
    A: int
    exponents: dict[int, int] = field(compare=False)
    tones: tuple[LogFreq, ...]
    proper: bool  # at least three distinct primes

    def tone_for(self, p: int) -> LogFreq:
        return ln_of(p) * self.exponents[p]


def factored_chord(A: int) -> Chord:
    """The pitch set ``{a_i ln p_i}`` of ``A = prod p_i**a_i``."""
    if A < 2:
        raise DomainError(f"factored chord needs A >= 2, got {A}")
    exps = factorize(A)
    tones = tuple(sorted(ln_of(p) * e for p, e in exps.items()))
    return Chord(A, dict(exps), tones, len(exps) >= 3)


@dataclass(frozen=True)
class VoiceMovement:
    kind: str  # "rational", "irrational", "enter" or "exit"
    source: LogFreq | None
    target: LogFreq | None
    primes: tuple[int, ...]
    ratio: Fraction | None = None
    name: str | None = None


def interval_name(r: Fraction) -> str:
    if r == 1:
        return "unison"
    up = r > 1
    base = r if up else 1 / r
    label = INTERVAL_NAMES.get(base)
    if label is None:
        return rational_text(r)
    return f"{'up' if up else 'down'} a {label}"


def chord_transition(A1: int, A2: int) -> list[VoiceMovement]:
    c1, c2 = factored_chord(A1), factored_chord(A2)
    moves = []
    shared = sorted(set(c1.exponents) & set(c2.exponents))
    for p in shared:
        src, dst = c1.tone_for(p), c2.tone_for(p)
        r = rational_ratio(dst, src)
        moves.append(VoiceMovement("rational", src, dst, (p,), r, interval_name(r)))
    only1 = sorted(set(c1.exponents) - set(c2.exponents))
    only2 = sorted(set(c2.exponents) - set(c1.exponents))
    for p, p2 in zip(only1, only2):
        src, dst = c1.tone_for(p), c2.tone_for(p2)
        r = rational_ratio(dst, src)
        if r is None:
            moves.append(VoiceMovement("irrational", src, dst, (p, p2)))
        else:  # pragma: no cover - distinct primes are never proportional
            moves.append(VoiceMovement("rational", src, dst, (p, p2), r, interval_name(r)))
    k = min(len(only1), len(only2))
    for p in only1[k:]:
        moves.append(VoiceMovement("exit", c1.tone_for(p), None, (p,)))
    for p in only2[k:]:
        moves.append(VoiceMovement("enter", None, c2.tone_for(p), (p,)))
    return moves
