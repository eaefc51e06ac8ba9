"""Render demo WAV files and report difference-tone levels.

    python3 scripts/render_examples.py --out renders/
"""

import argparse
from pathlib import Path

from logscale.analysis import factored_chord
from logscale.audio import (
    RenderParams,
    log_ratio,
    render_chord_progression,
    render_dyad_nonlinear,
    render_tone_sequence,
    verify_difference_tone,
    write_wav,
)
from logscale.scales import root_approximation_scale, schneider_octave_scale

DYADS = {"log4(5)": log_ratio(5, 4), "3/2": 1.5, "log17(34)": log_ratio(34, 17)}


def main():
    ap = argparse.ArgumentParser(description="render demo audio")
    ap.add_argument("--out", type=Path, default=Path("renders"))
    ap.add_argument("--reference", type=float, default=220.0)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    p = RenderParams(reference_hz=args.reference, note_seconds=0.5)
    write_wav(args.out / "schneider_m4.wav", render_tone_sequence(schneider_octave_scale(4), p))
    write_wav(
        args.out / "schneider_m4_log_partials.wav",
        render_tone_sequence(schneider_octave_scale(4), RenderParams(reference_hz=args.reference, note_seconds=0.5, timbre="log_partials")),
    )
    write_wav(args.out / "root_2_2_17.wav", render_tone_sequence(root_approximation_scale(2, 2, 17), p))
    chords = [factored_chord(a).tones for a in (2016, 4752, 2016)]
    write_wav(args.out / "chords_2016_4752.wav", render_chord_progression(chords, RenderParams(reference_hz=args.reference, note_seconds=1.5)))

    check = RenderParams(reference_hz=440, note_seconds=2.0, nonlinearity_epsilon=0.2)
    print(f"{'dyad':>10} {'f2-f1 Hz':>9} {'emergence dB':>13} {'clean floor dB':>15}")
    for name, r in DYADS.items():
        write_wav(args.out / f"dyad_{name.replace('/', '_')}.wav", render_dyad_nonlinear(r, check))
        c = verify_difference_tone(r, check)
        print(f"{name:>10} {c.difference_hz:9.2f} {c.emergence_db:13.1f} {c.clean_floor_db:15.1f}")
    print(f"wrote WAV files to {args.out}/")


if __name__ == "__main__":
    main()
