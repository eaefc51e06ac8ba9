"""Exact arithmetic for frequencies of the form ``unit + sum(c_p * ln p)``.

Every frequency in this package is stored relative to an implicit reference
frequency ``f`` as a rational affine combination of ``1`` and the logarithms
of primes.  Because ``{1, ln 2, ln 3, ln 5, ...}`` is linearly independent
over the rationals, two such values are equal exactly when their canonical
coefficient maps agree, so equality and rational dependence are decidable.
Signs of nonzero values are settled numerically with interval arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

from mpmath import libmp, mp, mpf

Rational = Fraction

TRIAL_DIVISION_BOUND = 10**12

# working precision (bits) for the first interval evaluation; doubled on demand
_START_PREC = 64
_MAX_PREC = 1 << 16


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class CapacityError(DomainError):
    """Argument inside the domain but beyond a documented implementation bound."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division.

    >>> factorize(108)
    {2: 2, 3: 3}
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("factorize expects an int")
    if n < 1:
        raise DomainError(f"cannot factorize {n}: need a positive integer")
    if n > TRIAL_DIVISION_BOUND:
        raise CapacityError(f"{n} exceeds the trial division bound {TRIAL_DIVISION_BOUND}")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # 6k +- 1 wheel
    d = 5
    step = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def primes():
    """Unbounded ascending stream of primes."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


@total_ordering
class LogFreq:
    """An exact value ``unit + sum(coeffs[p] * ln p)``.

    Instances are immutable and always canonical: every key of ``coeffs``
    is prime and no stored coefficient is zero.  ``==`` is exact; ``<`` and
    friends go through :func:`compare`.
    """

    __slots__ = ("_unit", "_coeffs", "_hash")

    def __init__(self, unit=0, coeffs: Mapping[int, object] | None = None):
        unit = as_rational(unit)
        clean: dict[int, Fraction] = {}
        for p, c in (coeffs or {}).items():
            if not is_prime(p):
                raise DomainError(f"coefficient key {p} is not prime")
            c = as_rational(c)
            if c:
                clean[p] = c
        object.__setattr__(self, "_unit", unit)
        object.__setattr__(self, "_coeffs", tuple(sorted(clean.items())))
        object.__setattr__(self, "_hash", hash((unit, self._coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("LogFreq is immutable")

    @property
    def unit(self) -> Fraction:
        return self._unit

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._unit and not self._coeffs

    def is_log_of_rational(self) -> bool:
        """True when the value is ``ln r`` for a positive rational ``r``."""
        return not self._unit and all(c.denominator == 1 for _, c in self._coeffs)

    def exp_rational(self) -> Fraction | None:
        """The rational ``r`` with ``self == ln r``, if there is one."""
        if not self.is_log_of_rational():
            return None
        r = Fraction(1)
        for p, c in self._coeffs:
            r *= Fraction(p) ** int(c)
        return r

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LogFreq):
            return NotImplemented
        return combine(self, other, 1, 1)

    def __sub__(self, other):
        if not isinstance(other, LogFreq):
            return NotImplemented
        return combine(self, other, 1, -1)

    def __neg__(self):
        return combine(self, ZERO, -1, 0)

    def __mul__(self, k):
        try:
            k = as_rational(k)
        except TypeError:
            return NotImplemented
        return combine(self, ZERO, k, 0)

    __rmul__ = __mul__

    def __truediv__(self, k):
        try:
            k = as_rational(k)
        except TypeError:
            return NotImplemented
        if not k:
            raise ZeroDivisionError("LogFreq division by zero")
        return combine(self, ZERO, 1 / k, 0)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LogFreq):
            return NotImplemented
        return self._unit == other._unit and self._coeffs == other._coeffs

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, LogFreq):
            return NotImplemented
        return compare(self, other) < 0

    # evaluation -------------------------------------------------------
    def sign(self) -> int:
        return compare(self, ZERO)

    def value(self, dps: int = 30) -> mpf:
        """Numeric value good to about ``dps`` significant decimal digits."""
        prec = int(dps * 3.33) + 24
        return mp.make_mpf(libmp.mpi_mid(_interval(self, prec), prec))

    def __float__(self):
        return float(self.value(20))

    def __repr__(self):
        return f"LogFreq({to_text(self)})"

    def __str__(self):
        return to_text(self)


ZERO = LogFreq()
ONE = LogFreq(1)


def ln_of(r) -> LogFreq:
    """``ln r`` for a positive rational ``r``."""
    r = as_rational(r)
    if r <= 0:
        raise DomainError(f"ln is undefined for {r}")
    coeffs: dict[int, Fraction] = {}
    for p, e in factorize(r.numerator).items():
        coeffs[p] = Fraction(e)
    for p, e in factorize(r.denominator).items():
        coeffs[p] = coeffs.get(p, Fraction(0)) - e
    return LogFreq(0, coeffs)


def combine(x: LogFreq, y: LogFreq, a=1, b=1) -> LogFreq:
    """Return ``a*x + b*y`` in canonical form."""
    a = as_rational(a)
    b = as_rational(b)
    coeffs = {p: a * c for p, c in x.items()}
    for p, c in y.items():
        coeffs[p] = coeffs.get(p, Fraction(0)) + b * c
    return LogFreq(a * x.unit + b * y.unit, coeffs)


def rational_ratio(x: LogFreq, y: LogFreq) -> Fraction | None:
    """The rational ``q`` with ``x == q*y``, or ``None`` if ``x : y`` is irrational."""
    if y.is_zero():
        raise DomainError("rational_ratio: divisor is zero")
    if y.unit:
        q = x.unit / y.unit
    else:
        p, c = y.items()[0]
        q = x.coeffs.get(p, Fraction(0)) / c
    return q if combine(x, y, 1, -q).is_zero() else None


def power_of_two_exponent(q: Fraction) -> int | None:
    """``t`` with ``q == 2**t``, or ``None``."""
    if q <= 0:
        return None
    n, d = q.numerator, q.denominator
    if d == 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    if n == 1 and d & (d - 1) == 0:
        return -(d.bit_length() - 1)
    return None


def octave_shift_between(x: LogFreq, z: LogFreq) -> int | None:
    """``t`` with ``x == 2**t * z`` exactly, or ``None``."""
    q = rational_ratio(x, z)
    if q is None:
        return None
    return power_of_two_exponent(q)


def _exact_interval(q: Fraction, prec: int):
    n = libmp.from_int(q.numerator)
    d = libmp.from_int(q.denominator)
    return libmp.mpi_div((n, n), (d, d), prec)


def _interval(x: LogFreq, prec: int):
    """Rigorous enclosure of ``value(x)`` as a raw mpmath interval."""
    total = _exact_interval(x.unit, prec)
    for p, c in x.items():
        pp = libmp.from_int(p)
        term = libmp.mpi_mul(_exact_interval(c, prec), libmp.mpi_log((pp, pp), prec), prec)
        total = libmp.mpi_add(total, term, prec)
    return total


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if sign:
        man = -man
    return Fraction(int(man) << exp) if exp >= 0 else Fraction(int(man), 1 << -exp)


def enclosure(x: LogFreq, prec: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds ``lo <= value(x) <= hi`` at ``prec`` bits."""
    lo, hi = _interval(x, prec)
    return _raw_to_fraction(lo), _raw_to_fraction(hi)


def compare(x: LogFreq, y: LogFreq) -> int:
    """Exact three-way comparison of the real values of ``x`` and ``y``."""
    d = x - y
    if d.is_zero():
        return 0
    if not d.items():
        return 1 if d.unit > 0 else -1
    prec = _START_PREC
    while prec <= _MAX_PREC:
        lo, hi = enclosure(d, prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2
    raise ArithmeticError(f"could not resolve the sign of {d}")  # pragma: no cover


def format_fixed(q: Fraction, digits: int) -> str:
    """Fixed-point rendering of ``q`` rounded half-even to ``digits`` places."""
    r = round(q, digits)
    sign = "-" if r < 0 else ""
    scaled = abs(r) * 10**digits
    assert scaled.denominator == 1
    whole, frac = divmod(scaled.numerator, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def approx_value(x: LogFreq, digits: int = 3) -> str:
    """Decimal expansion of ``x`` correctly rounded to ``digits`` places."""
    if digits < 1:
        raise DomainError("digits must be >= 1")
    if not x.items():
        return format_fixed(x.unit, digits)
    prec = max(_START_PREC, int(digits * 3.33) + 32)
    while prec <= _MAX_PREC:
        lo, hi = enclosure(x, prec)
        a, b = format_fixed(lo, digits), format_fixed(hi, digits)
        if a == b:
            return a
        prec *= 2
    raise ArithmeticError("rounding boundary not resolved")  # pragma: no cover


_LN2_PREC = 160


def ratio_value(x: LogFreq, ref: LogFreq) -> mpf:
    """``value(x) / value(ref)`` to well beyond double precision."""
    if x.sign() <= 0 or ref.sign() <= 0:
        raise DomainError("frequencies must be positive")
    box = libmp.mpi_div(_interval(x, _LN2_PREC), _interval(ref, _LN2_PREC), _LN2_PREC)
    return mp.make_mpf(libmp.mpi_mid(box, _LN2_PREC))


def _cents_interval(ratio_box):
    two = libmp.from_int(2)
    k = libmp.from_int(1200)
    lg = libmp.mpi_div(libmp.mpi_log(ratio_box, _LN2_PREC), libmp.mpi_log((two, two), _LN2_PREC), _LN2_PREC)
    return libmp.mpi_mul((k, k), lg, _LN2_PREC)


def cents_between(x: LogFreq, ref: LogFreq) -> float:
    """Size of the interval ``x : ref`` in cents."""
    if x.sign() <= 0 or ref.sign() <= 0:
        raise DomainError("frequencies must be positive")
    if x == ref:
        return 0.0
    box = libmp.mpi_div(_interval(x, _LN2_PREC), _interval(ref, _LN2_PREC), _LN2_PREC)
    return libmp.to_float(libmp.mpi_mid(_cents_interval(box), _LN2_PREC))


def cents_of_ratio(r) -> float:
    """Cents of a positive rational (exact input) or float ratio."""
    if isinstance(r, float):
        raw = libmp.from_float(r)
        box = (raw, raw)
    else:
        box = _exact_interval(as_rational(r), _LN2_PREC)
    if not libmp.mpf_gt(box[0], libmp.fzero):
        raise DomainError("ratio must be positive")
    return libmp.to_float(libmp.mpi_mid(_cents_interval(box), _LN2_PREC))


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_text(q: Fraction) -> str:
    return _frac_text(q)


def to_text(x: LogFreq, factored: bool = False) -> str:
    """Human-readable rendering, e.g. ``ln(16)``, ``ln(4/3)`` or ``1/2*ln(3) + 1``.

    With ``factored`` logs of rationals are spelled per prime (``4*ln(2)``).
    """
    if x.is_zero():
        return "0"
    r = None if factored else x.exp_rational()
    if r is not None:
        return f"ln({_frac_text(r)})"
    parts = []
    for p, c in x.items():
        if c == 1:
            parts.append(f"ln({p})")
        elif c == -1:
            parts.append(f"-ln({p})")
        else:
            parts.append(f"{_frac_text(c)}*ln({p})")
    if x.unit:
        parts.append(_frac_text(x.unit))
    return " + ".join(parts).replace("+ -", "- ")


def lincomb(terms: Iterable[tuple[object, LogFreq]]) -> LogFreq:
    total = ZERO
    for c, x in terms:
        total = combine(total, x, 1, c)
    return total


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g
