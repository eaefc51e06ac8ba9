import json
from fractions import Fraction

import pytest

from logscale.analysis import coverage_report, factored_chord, is_complete, rationality_certificate
from logscale.export import export_scl, parse_scl, report_json, rows_csv
from logscale.logalg import DomainError, ln_of
from logscale.scales import Scale, normalize_rows, projective_scale, schneider_octave_scale

WORKED = Scale((ln_of(16), ln_of(32), ln_of(64)))


def scl_values(text):
    body = [ln.strip() for ln in text.splitlines() if not ln.startswith("!")]
    return body[2:]


def test_scl_schneider():
    rows = normalize_rows(schneider_octave_scale(4))
    text = export_scl(rows, "Schneider")
    values = scl_values(text)
    assert len(values) == 12
    assert values[-1] == "2/1"
    assert values[3] == "3/2"
    desc, cents = parse_scl(text)
    assert desc == "Schneider"
    for r, c in zip(rows[1:], cents):
        assert c == pytest.approx(r.cents, abs=1e-3)


def test_scl_worked_example():
    assert scl_values(export_scl(normalize_rows(WORKED), "worked")) == ["5/4", "3/2"]


def test_scl_projective_first_value():
    values = scl_values(export_scl(normalize_rows(projective_scale([2, 3], [2, 1])), "projective"))
    assert len(values) == 5
    # 1200 * log2(ln(3/2) / ln(4/3)) = 594.1229411...
    assert values[0] == "594.12294"


def test_scl_needs_two_rows():
    with pytest.raises(DomainError):
        export_scl(normalize_rows(Scale((ln_of(3),))), "x")


def test_json_certificate():
    data = json.loads(report_json(rationality_certificate(WORKED)))
    assert data["ratios"] == ["2/3", "5/6", "1"]
    assert data["h_map"][0] == {"image": 0, "index": 0, "shift": -1}


def test_json_coverage():
    data = json.loads(report_json(coverage_report(Scale((ln_of(3), ln_of(4))))))
    assert (data["covered_count"], data["total_pairs"]) == (0, 1)
    assert data["pairs"][0]["difference"]["coeffs"] == {"2": "2", "3": "-1"}
    assert json.loads(report_json(coverage_report(Scale(()))))["total_pairs"] == 0


def test_json_logfreq_schema_and_determinism():
    v = is_complete(WORKED)
    a, b = report_json(v), report_json(v)
    assert a == b
    data = json.loads(a)
    assert data["complete"] is True
    assert list(data) == sorted(data)
    chord = json.loads(report_json(factored_chord(2016)))
    assert chord["tones"][0] == {"coeffs": {"7": "1"}, "text": "ln(7)", "unit": "0"}
    assert chord["exponents"] == {"2": 5, "3": 2, "7": 1}


def test_json_rationals_and_rows():
    assert json.loads(report_json(Fraction(5, 4))) == "5/4"
    rows = json.loads(report_json(normalize_rows(schneider_octave_scale(4))))
    assert rows[1] == {"cents": 258.388, "closed_form": "log_4(5)", "decimal": 1.161}


def test_csv_rows():
    text = rows_csv(normalize_rows(WORKED))
    assert text.splitlines() == ["closed_form,decimal,cents", "1,1.000,0.000", "5/4,1.250,386.314", "3/2,1.500,701.955"]
