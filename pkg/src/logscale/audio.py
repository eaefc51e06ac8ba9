"""Audio rendering of scales and chords, plus difference-tone verification.

Difference tones are simulated with the memoryless nonlinearity
``s -> s + eps * s**2``: the square of ``sin a + sin b`` contains
``cos(a - b)``, a component at ``f2 - f1``.  :func:`goertzel_power`
measures single frequency bins to confirm it.
"""

from __future__ import annotations

import math
import wave
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .logalg import DomainError, LogFreq, ln_of, ratio_value
from .scales import Scale

FADE_SECONDS = 0.005


@dataclass(frozen=True)
class RenderParams:
    reference_hz: float = 440.0
    sample_rate_hz: int = 44100
    note_seconds: float = 1.0
    amplitude: float = 0.8
    nonlinearity_epsilon: float = 0.0
    timbre: str = "pure_sine"
    partial_count: int = 6

    def __post_init__(self):
        if self.reference_hz <= 0:
            raise DomainError("reference_hz must be positive")
        if self.sample_rate_hz <= 0:
            raise DomainError("sample_rate_hz must be positive")
        if self.note_seconds <= 0:
            raise DomainError("note_seconds must be positive")
        if not 0 < self.amplitude <= 1:
            raise DomainError("amplitude must lie in (0, 1]")
        if self.nonlinearity_epsilon < 0:
            raise DomainError("nonlinearity_epsilon must be >= 0")
        if self.timbre not in ("pure_sine", "log_partials"):
            raise DomainError(f"unknown timbre {self.timbre!r}")
        if self.partial_count < 1:
            raise DomainError("partial_count must be >= 1")

    @property
    def nyquist(self) -> float:
        return self.sample_rate_hz / 2

    def partial_factors(self) -> list[float]:
        """Relative partial frequencies; log partials sit at ln(k)/ln(3)."""
        if self.timbre == "pure_sine":
            return [1.0]
        return [math.log(k) / math.log(3) for k in range(3, 3 + self.partial_count)]

    def check_alias(self, highest_hz: float) -> None:
        if highest_hz >= self.nyquist:
            raise DomainError(
                f"{highest_hz:.1f} Hz is at or above the Nyquist limit {self.nyquist:.1f} Hz"
            )


def _fade(n: int, sr: int) -> np.ndarray:
    env = np.ones(n)
    k = min(int(round(FADE_SECONDS * sr)), n // 2)
    if k:
        ramp = np.linspace(0.0, 1.0, k, endpoint=False)
        env[:k] = ramp
        env[n - k:] = ramp[::-1]
    return env


def _note(freqs: Sequence[float], params: RenderParams) -> np.ndarray:
    sr = params.sample_rate_hz
    n = int(round(params.note_seconds * sr))
    t = np.arange(n) / sr
    out = np.zeros(n)
    factors = params.partial_factors()
    for f in freqs:
        for idx, k in enumerate(factors, start=1):
            out += np.sin(2 * np.pi * f * k * t) / idx
    return out * _fade(n, sr)


def _peak_normalize(x: np.ndarray, amplitude: float) -> np.ndarray:
    peak = float(np.max(np.abs(x))) if x.size else 0.0
    if peak == 0:
        return x
    return x * (amplitude / peak)


def degree_frequencies(degrees: Sequence[LogFreq], reference_hz: float, ref: LogFreq | None = None):
    ref = degrees[0] if ref is None else ref
    return [reference_hz * float(ratio_value(d, ref)) for d in degrees]


def render_tone_sequence(scale: Scale | Sequence[LogFreq], params: RenderParams, mode: str = "melodic") -> np.ndarray:
    """One note per degree (``melodic``) or all degrees at once (``simultaneous``).

    The first degree sounds at ``params.reference_hz``.
    """
    degrees = list(scale)
    if not degrees:
        raise DomainError("cannot render an empty scale")
    if mode not in ("melodic", "simultaneous"):
        raise DomainError(f"unknown mode {mode!r}")
    freqs = degree_frequencies(degrees, params.reference_hz)
    params.check_alias(max(freqs) * max(params.partial_factors()))
    if mode == "melodic":
        out = np.concatenate([_note([f], params) for f in freqs])
    else:
        out = _note(freqs, params)
    return _peak_normalize(out, params.amplitude)


def render_chord_progression(chords: Sequence[Sequence[LogFreq]], params: RenderParams) -> np.ndarray:
    """Each chord sounded simultaneously, one after another.

    ``reference_hz`` is assigned to the lowest tone of the whole progression.
    """
    chords = [list(c) for c in chords]
    if not chords or not all(chords):
        raise DomainError("progression needs at least one nonempty chord")
    ref = min(t for c in chords for t in c)
    blocks = []
    for c in chords:
        freqs = degree_frequencies(c, params.reference_hz, ref)
        params.check_alias(max(freqs) * max(params.partial_factors()))
        blocks.append(_note(freqs, params))
    return _peak_normalize(np.concatenate(blocks), params.amplitude)


def render_dyad_nonlinear(ratio: float, params: RenderParams) -> np.ndarray:
    """Dyad ``f1 = reference_hz``, ``f2 = ratio * f1`` through ``s + eps * s**2``."""
    if ratio <= 1:
        raise DomainError("dyad ratio must exceed 1")
    f1 = params.reference_hz
    f2 = ratio * f1
    # s**2 produces 2*f2, the highest component
    params.check_alias(2 * f2 if params.nonlinearity_epsilon else f2)
    sr = params.sample_rate_hz
    t = np.arange(int(round(params.note_seconds * sr))) / sr
    s = np.sin(2 * np.pi * f1 * t) + np.sin(2 * np.pi * f2 * t)
    return _peak_normalize(s + params.nonlinearity_epsilon * s * s, params.amplitude)


def goertzel_power(buffer: np.ndarray, target_hz: float, sample_rate_hz: int, window: str | None = None) -> float:
    """Power of the single frequency bin at ``target_hz``.

    The buffer is truncated to a whole number of periods of the target.
    A unit sinusoid at the target over ``N`` samples reads about ``N**2 / 4``.
    ``window="hann"`` tapers the block first (normalized to the same reading)
    to suppress leakage from strong nearby components.
    """
    if target_hz <= 0 or target_hz >= sample_rate_hz / 2:
        raise DomainError(f"target {target_hz} Hz must lie in (0, Nyquist)")
    x = np.asarray(buffer, dtype=float)
    periods = math.floor(len(x) * target_hz / sample_rate_hz)
    if periods < 1:
        raise DomainError("buffer is shorter than one period of the target")
    n = min(int(round(periods * sample_rate_hz / target_hz)), len(x))
    x = x[:n]
    gain = 1.0
    if window == "hann":
        w = np.hanning(n)
        gain = float(np.mean(w)) ** 2
        x = x * w
    elif window is not None:
        raise DomainError(f"unknown window {window!r}")
    coeff = 2.0 * math.cos(2.0 * math.pi * target_hz / sample_rate_hz)
    s1 = s2 = 0.0
    for v in x.tolist():
        s1, s2 = v + coeff * s1 - s2, s1
    return (s1 * s1 + s2 * s2 - coeff * s1 * s2) / gain


def db(ratio: float) -> float:
    return 10.0 * math.log10(ratio) if ratio > 0 else -math.inf


@dataclass(frozen=True)
class DyadCheck:
    ratio: float
    f1: float
    f2: float
    difference_hz: float
    power_distorted: float
    power_clean: float
    power_f1_clean: float

    @property
    def emergence_db(self) -> float:
        """Gain of the difference bin over the undistorted baseline."""
        return db(self.power_distorted / self.power_clean) if self.power_clean else math.inf

    @property
    def clean_floor_db(self) -> float:
        """Difference bin relative to the f1 bin with no distortion (negative)."""
        return db(self.power_clean / self.power_f1_clean)


def verify_difference_tone(
    ratio: float, params: RenderParams, epsilon: float | None = None, window: str | None = "hann"
) -> DyadCheck:
    eps = params.nonlinearity_epsilon if epsilon is None else epsilon
    base = dict(params.__dict__)
    distorted = render_dyad_nonlinear(ratio, RenderParams(**{**base, "nonlinearity_epsilon": eps}))
    clean = render_dyad_nonlinear(ratio, RenderParams(**{**base, "nonlinearity_epsilon": 0.0}))
    f1 = params.reference_hz
    f2 = ratio * f1
    sr = params.sample_rate_hz
    return DyadCheck(
        ratio, f1, f2, f2 - f1,
        goertzel_power(distorted, f2 - f1, sr, window),
        goertzel_power(clean, f2 - f1, sr, window),
        goertzel_power(clean, f1, sr, window),
    )


def log_ratio(a: int, b: int) -> float:
    """``log_b(a)`` evaluated exactly then rounded, e.g. ``log_ratio(5, 4)``."""
    return float(ratio_value(ln_of(a), ln_of(b)))


def to_pcm16(buffer: np.ndarray) -> np.ndarray:
    x = np.clip(np.asarray(buffer, dtype=float), -1.0, 1.0)
    return np.round(x * 32767.0).astype("<i2")


def write_wav(path: str | Path, buffer: np.ndarray, sample_rate_hz: int = 44100) -> Path:
    """Mono 16-bit little-endian PCM RIFF/WAVE."""
    path = Path(path)
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(sample_rate_hz)
        w.writeframes(to_pcm16(buffer).tobytes())
    return path


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    with wave.open(str(path), "rb") as w:
        if w.getnchannels() != 1 or w.getsampwidth() != 2:
            raise DomainError("only mono 16-bit PCM is supported")
        frames = w.readframes(w.getnframes())
        return np.frombuffer(frames, dtype="<i2").astype(float) / 32767.0, w.getframerate()
