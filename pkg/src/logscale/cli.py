"""Command line interface: ``logscale <command> ...`` or ``python -m logscale``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, audio, export, scales, series
from .logalg import LogFreq, DomainError, ln_of, ratio_value, to_text

_LN = re.compile(r"^ln\s*(?:\(\s*(\d+)\s*(?:/\s*(\d+))?\s*\)|(\d+))$")
_FRAC = re.compile(r"^(\d+)(?:/(\d+))?$")
_LOG = re.compile(r"^log_?\(?(\d+)(?:/(\d+))?\)?\((\d+)(?:/(\d+))?\)$")


class UsageError(Exception):
    pass


def parse_degree(token: str) -> LogFreq:
    """``ln16``, ``ln(16)``, ``ln(4/3)`` or a unit term ``3/2`` / ``5``."""
    tok = token.strip().replace(" ", "")
    m = _LN.match(tok)
    if m:
        num = int(m.group(1) or m.group(3))
        den = int(m.group(2) or 1)
        if num == 0 or den == 0:
            raise DomainError(f"ln undefined for {tok}")
        return ln_of(Fraction(num, den))
    m = _FRAC.match(tok)
    if m:
        den = int(m.group(2) or 1)
        if den == 0:
            raise DomainError(f"zero denominator in {tok}")
        return LogFreq(Fraction(int(m.group(1)), den))
    raise UsageError(f"cannot parse scale degree {token!r}")


def parse_scale_literal(text: str) -> scales.Scale:
    degrees = [parse_degree(t) for t in text.split(",") if t.strip()]
    if len(set(degrees)) != len(degrees):
        raise DomainError("duplicate degrees in scale literal")
    return scales.Scale.from_degrees(degrees, f"scale {text}")


def parse_ratio(text: str) -> float:
    """Dyad ratio: ``1.5``, ``3/2`` or ``log4(5)`` / ``log_17(34)``."""
    tok = text.strip().replace(" ", "")
    m = _LOG.match(tok)
    if m:
        base = Fraction(int(m.group(1)), int(m.group(2) or 1))
        arg = Fraction(int(m.group(3)), int(m.group(4) or 1))
        return float(ratio_value(ln_of(arg), ln_of(base)))
    try:
        return float(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse ratio {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


FAMILIES = ("schneider", "root", "factorization", "projective", "literal")


def _add_family_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="schneider: lowest argument; root: approximated integer")
    p.add_argument("--n", type=int, help="root: base n")
    p.add_argument("--k", type=int, help="root: exponent k in n**(2**k) ~ m")
    p.add_argument("--N", type=int, dest="N", help="factorization: composite N")
    p.add_argument("--bases", type=_int_list, help="projective: comma-separated bases")
    p.add_argument("--heights", type=_int_list, help="projective: comma-separated heights")
    p.add_argument("--scale", help='literal: e.g. "ln16,ln32,ln64"')


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs " + ", ".join("--" + n for n in missing))


def build_scale(args) -> scales.Scale:
    fam = args.family
    if fam == "schneider":
        return scales.schneider_octave_scale(args.m if args.m is not None else 4)
    if fam == "root":
        _need(args, "n", "k", "m")
        return scales.root_approximation_scale(args.n, args.k, args.m)
    if fam == "factorization":
        _need(args, "N")
        return scales.factorization_scale(args.N)
    if fam == "projective":
        _need(args, "bases", "heights")
        return scales.projective_scale(args.bases, args.heights)
    _need(args, "scale")
    return parse_scale_literal(args.scale)


def _add_output(p, formats=("table", "json", "csv")):
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument("--digits", type=int, default=3)
    p.add_argument("--output", "-o", type=Path)


def _add_render(p):
    p.add_argument("--output", "-o", type=Path, required=True, help="WAV file to write")
    p.add_argument("--reference-hz", type=float, default=440.0)
    p.add_argument("--sample-rate", type=int, default=44100)
    p.add_argument("--note-seconds", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, default=0.8)
    p.add_argument("--timbre", choices=("pure_sine", "log_partials"), default="pure_sine")
    p.add_argument("--partials", type=int, default=6)
    p.add_argument("--epsilon", type=float, default=0.0)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logscale", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="generate a frequency series")
    p.add_argument("kind", choices=series.SERIES_KINDS)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--start", type=int, default=3)
    p.add_argument("--divisors", type=_int_list, default=None)
    p.add_argument("--append-missing", action="store_true")
    _add_output(p)

    p = sub.add_parser("scale", help="construct a scale")
    p.add_argument("family", choices=FAMILIES)
    _add_family_params(p)
    _add_output(p, ("table", "json", "csv", "scl"))

    p = sub.add_parser("analyze", help="difference-tone analysis of a scale")
    p.add_argument("what", choices=("coverage", "complete", "certificate"))
    p.add_argument("--family", choices=FAMILIES, default=None)
    _add_family_params(p)
    _add_output(p, ("table", "json"))

    p = sub.add_parser("chord", help="factored chords")
    csub = p.add_subparsers(dest="chord_command", required=True)
    q = csub.add_parser("show")
    q.add_argument("A", type=int)
    _add_output(q, ("table", "json"))
    q = csub.add_parser("transition")
    q.add_argument("A1", type=int)
    q.add_argument("A2", type=int)
    _add_output(q, ("table", "json"))

    p = sub.add_parser("render", help="render audio to a WAV file")
    rsub = p.add_subparsers(dest="render_command", required=True)
    q = rsub.add_parser("scale")
    q.add_argument("family", choices=FAMILIES)
    _add_family_params(q)
    q.add_argument("--mode", choices=("melodic", "simultaneous"), default="melodic")
    _add_render(q)
    q = rsub.add_parser("chords")
    q.add_argument("A", type=int, nargs="+")
    _add_render(q)
    q = rsub.add_parser("dyad")
    q.add_argument("--ratio", required=True)
    _add_render(q)

    p = sub.add_parser("verify", help="spectrally verify the difference tone of a dyad")
    p.add_argument("--ratio", action="append", required=True)
    p.add_argument("--reference-hz", type=float, default=440.0)
    p.add_argument("--sample-rate", type=int, default=44100)
    p.add_argument("--seconds", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=0.2)
    p.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def _emit(text: str, args, stdout) -> None:
    out = getattr(args, "output", None)
    if out is not None:
        Path(out).write_text(text)
    else:
        stdout.write(text)


def _rows_output(rows, label, args) -> str:
    fmt = args.format
    if fmt == "table":
        return scales.render_table(rows, args.digits) + "\n"
    if fmt == "json":
        return export.report_json({"label": label, "rows": rows}, args.digits)
    if fmt == "csv":
        return export.rows_csv(rows, args.digits)
    name = re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_") + ".scl"
    return export.export_scl(rows, label, name)


def _cmd_series(args, stdout):
    spec = series.SeriesSpec(
        args.kind,
        start=args.start,
        divisors=tuple(args.divisors or ()),
        append_missing=args.append_missing,
    )
    terms = spec.take(args.count)
    if not terms:
        return
    _emit(_rows_output(scales.normalize_rows(terms), spec.label, args), args, stdout)


def _cmd_scale(args, stdout):
    s = build_scale(args)
    _emit(_rows_output(scales.normalize_rows(s), s.label, args), args, stdout)


def _coverage_table(report) -> str:
    lines = [f"covered {report.covered_count} of {report.total_pairs} pairs"]
    for p in report.pairs:
        if p.covered:
            m = ", ".join(f"2^{t}*f{z}" for z, t in p.matches)
        else:
            m = "UNCOVERED"
        lines.append(f"f{p.j} - f{p.i} = {to_text(p.difference)}: {m}")
    return "\n".join(lines) + "\n"


def _certificate_table(cert) -> str:
    lines = [f"method: {cert.method}"]
    lines.append("ratios: " + ", ".join(str(q) for q in cert.ratios))
    for i, j, t in cert.h_map:
        lines.append(f"h({i}) = {j}, t = {t}")
    for i, j, z, t in cert.relations:
        lines.append(f"f{j} - f{i} = 2^{t}*f{z}")
    return "\n".join(lines) + "\n"


def _cmd_analyze(args, stdout):
    if args.family is None:
        args.family = "literal" if args.scale is not None else None
    if args.family is None:
        raise UsageError("analyze needs --scale or --family")
    s = build_scale(args)
    if args.what == "coverage":
        rep = analysis.coverage_report(s)
        text = export.report_json(rep, args.digits) if args.format == "json" else _coverage_table(rep)
    elif args.what == "complete":
        v = analysis.is_complete(s)
        if args.format == "json":
            text = export.report_json(v, args.digits)
        elif v.complete:
            text = "complete\n" + (_certificate_table(v.certificate) if v.certificate else f"{v.certificate_error}\n")
        else:
            p = v.first_uncovered
            text = f"incomplete: first uncovered pair ({p.i}, {p.j}), difference {to_text(p.difference)}\n"
    else:
        cert = analysis.rationality_certificate(s)
        text = export.report_json(cert, args.digits) if args.format == "json" else _certificate_table(cert)
    _emit(text, args, stdout)


def _cmd_chord(args, stdout):
    if args.chord_command == "show":
        c = analysis.factored_chord(args.A)
        if args.format == "json":
            text = export.report_json(c, args.digits)
        else:
            tones = ", ".join(to_text(t, factored=True) for t in c.tones)
            note = "" if c.proper else "  (fewer than three distinct primes)"
            text = f"C_{c.A} = {{{tones}}}{note}\n"
    else:
        moves = analysis.chord_transition(args.A1, args.A2)
        if args.format == "json":
            text = export.report_json(moves, args.digits)
        else:
            lines = []
            for m in moves:
                src = to_text(m.source, True) if m.source is not None else "-"
                dst = to_text(m.target, True) if m.target is not None else "-"
                extra = f" {m.ratio} {m.name}" if m.ratio is not None else ""
                lines.append(f"{src} -> {dst}: {m.kind}{extra}")
            text = "\n".join(lines) + "\n"
    _emit(text, args, stdout)


def _render_params(args, **over) -> audio.RenderParams:
    kw = dict(
        reference_hz=args.reference_hz,
        sample_rate_hz=args.sample_rate,
        note_seconds=args.note_seconds,
        amplitude=args.amplitude,
        nonlinearity_epsilon=args.epsilon,
        timbre=args.timbre,
        partial_count=args.partials,
    )
    kw.update(over)
    return audio.RenderParams(**kw)


def _cmd_render(args, stdout):
    params = _render_params(args)
    if args.render_command == "scale":
        buf = audio.render_tone_sequence(build_scale(args), params, args.mode)
    elif args.render_command == "chords":
        chords = [analysis.factored_chord(a).tones for a in args.A]
        buf = audio.render_chord_progression(chords, params)
    else:
        buf = audio.render_dyad_nonlinear(parse_ratio(args.ratio), params)
    audio.write_wav(args.output, buf, params.sample_rate_hz)
    stdout.write(f"wrote {args.output} ({len(buf)} samples)\n")


def _cmd_verify(args, stdout):
    params = audio.RenderParams(
        reference_hz=args.reference_hz,
        sample_rate_hz=args.sample_rate,
        note_seconds=args.seconds,
        nonlinearity_epsilon=args.epsilon,
    )
    checks = [audio.verify_difference_tone(parse_ratio(r), params) for r in args.ratio]
    if args.format == "json":
        data = [
            {
                "ratio": c.ratio,
                "difference_hz": c.difference_hz,
                "emergence_db": c.emergence_db,
                "clean_floor_db": c.clean_floor_db,
            }
            for c in checks
        ]
        stdout.write(export.report_json(data, 3))
        return
    for c in checks:
        stdout.write(
            f"ratio {c.ratio:.6f}: f2-f1 = {c.difference_hz:.3f} Hz, "
            f"gain over clean {c.emergence_db:.1f} dB, clean floor {c.clean_floor_db:.1f} dB\n"
        )


COMMANDS = {
    "series": _cmd_series,
    "scale": _cmd_scale,
    "analyze": _cmd_analyze,
    "chord": _cmd_chord,
    "render": _cmd_render,
    "verify": _cmd_verify,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "digits", 1) < 1:
        stderr.write("logscale: error: --digits must be >= 1\n")
        return 2
    try:
        COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(f"logscale: error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"logscale: error: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())
