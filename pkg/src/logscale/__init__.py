"""Logarithmic frequency series and scales with exact difference-tone analysis."""

from .logalg import (
    ONE,
    ZERO,
    CapacityError,
    DomainError,
    LogFreq,
    approx_value,
    cents_between,
    combine,
    compare,
    factorize,
    ln_of,
    octave_shift_between,
    rational_ratio,
)
from .scales import (
    Scale,
    ScaleRow,
    factorization_scale,
    normalize_rows,
    projective_scale,
    render_table,
    root_approximation_scale,
    schneider_octave_scale,
)
from .series import (
    SeriesSpec,
    factorial_series,
    logarithmic_series,
    periodic_difference_series,
    primorial_series,
)
from .analysis import (
    Certificate,
    CoverageReport,
    Verdict,
    chord_transition,
    coverage_report,
    factored_chord,
    is_complete,
    rationality_certificate,
)

__version__ = "0.1.0"
