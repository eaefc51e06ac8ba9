"""Serialization: Scala ``.scl`` tuning files, JSON reports and CSV rows.

JSON schema (keys always sorted, two-space indent):

* rational   -> ``"5/4"`` or ``"2"``
* LogFreq    -> ``{"unit": rational, "coeffs": {"<prime>": rational}, "text": str}``
* ScaleRow   -> ``{"closed_form", "decimal", "cents"}`` with floats rounded to ``digits``
* CoverageReport -> ``{"covered_count", "total_pairs", "pairs": [...]}``, each
  pair ``{"i", "j", "difference", "covered", "matches": [{"degree", "shift"}]}``
* Verdict    -> ``{"complete", "certificate", "first_uncovered", "certificate_error"}``
* Certificate -> ``{"ratios", "h_map": [{"index", "image", "shift"}], "periodic", "method", "relations"}``
* Chord      -> ``{"A", "exponents", "tones", "proper"}``
* VoiceMovement -> ``{"kind", "source", "target", "primes", "ratio", "name"}``
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

from .analysis import Certificate, Chord, CoverageReport, PairCoverage, Verdict, VoiceMovement
from .logalg import DomainError, LogFreq, cents_of_ratio, rational_text
from .scales import Scale, ScaleRow


def _logfreq(x: LogFreq) -> dict:
    return {
        "unit": rational_text(x.unit),
        "coeffs": {str(p): rational_text(c) for p, c in x.items()},
        "text": str(x),
    }


def to_jsonable(obj, digits: int = 3):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return round(obj, digits)
    if isinstance(obj, Fraction):
        return rational_text(obj)
    if isinstance(obj, LogFreq):
        return _logfreq(obj)
    if isinstance(obj, ScaleRow):
        return {
            "closed_form": obj.closed_form,
            "decimal": round(obj.decimal, digits),
            "cents": round(obj.cents, digits),
        }
    if isinstance(obj, Scale):
        return {"label": obj.label, "degrees": [_logfreq(d) for d in obj.degrees]}
    if isinstance(obj, PairCoverage):
        return {
            "i": obj.i,
            "j": obj.j,
            "difference": _logfreq(obj.difference),
            "covered": obj.covered,
            "matches": [{"degree": z, "shift": t} for z, t in obj.matches],
        }
    if isinstance(obj, CoverageReport):
        return {
            "covered_count": obj.covered_count,
            "total_pairs": obj.total_pairs,
            "pairs": [to_jsonable(p, digits) for p in obj.pairs],
        }
    if isinstance(obj, Certificate):
        return {
            "ratios": [rational_text(q) for q in obj.ratios],
            "h_map": [{"index": i, "image": j, "shift": t} for i, j, t in obj.h_map],
            "periodic": list(obj.periodic),
            "method": obj.method,
            "relations": [{"i": i, "j": j, "degree": z, "shift": t} for i, j, z, t in obj.relations],
        }
    if isinstance(obj, Verdict):
        return {
            "complete": obj.complete,
            "certificate": to_jsonable(obj.certificate, digits),
            "first_uncovered": to_jsonable(obj.first_uncovered, digits),
            "certificate_error": obj.certificate_error,
        }
    if isinstance(obj, Chord):
        return {
            "A": obj.A,
            "exponents": {str(p): e for p, e in sorted(obj.exponents.items())},
            "tones": [_logfreq(t) for t in obj.tones],
            "proper": obj.proper,
        }
    if isinstance(obj, VoiceMovement):
        return {
            "kind": obj.kind,
            "source": to_jsonable(obj.source, digits),
            "target": to_jsonable(obj.target, digits),
            "primes": list(obj.primes),
            "ratio": to_jsonable(obj.ratio, digits),
            "name": obj.name,
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_json(obj, digits: int = 3) -> str:
    return json.dumps(to_jsonable(obj, digits), sort_keys=True, indent=2) + "\n"


def rows_csv(rows: Sequence[ScaleRow], digits: int = 3) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["closed_form", "decimal", "cents"])
    for r in rows:
        w.writerow([r.closed_form, f"{r.decimal:.{digits}f}", f"{r.cents:.{digits}f}"])
    return buf.getvalue()


def export_scl(rows: Sequence[ScaleRow], description: str, filename: str = "scale.scl") -> str:
    """Scala tuning file; the first row is the implicit 1/1 and is omitted."""
    if len(rows) < 2:
        raise DomainError(".scl export needs at least two rows")
    lines = [f"! {filename}", "!", description.replace("\n", " "), f" {len(rows) - 1}", "!"]
    for r in rows[1:]:
        if r.ratio is not None:
            q = r.ratio
            lines.append(f" {q.numerator}/{q.denominator}")
        else:
            lines.append(f" {r.cents:.5f}")
    return "\n".join(lines) + "\n"


def parse_scl(text: str) -> tuple[str, list[float]]:
    """Description and per-degree cents of a ``.scl`` document."""
    body = [ln for ln in text.splitlines() if not ln.startswith("!")]
    if len(body) < 2:
        raise DomainError("truncated .scl document")
    description = body[0].strip()
    count = int(body[1].split()[0])
    cents = []
    for ln in body[2:2 + count]:
        tok = ln.split()[0]
        if "." in tok:
            cents.append(float(tok))
        else:
            cents.append(cents_of_ratio(Fraction(tok)))
    if len(cents) != count:
        raise DomainError(f"expected {count} degrees, found {len(cents)}")
    return description, cents
