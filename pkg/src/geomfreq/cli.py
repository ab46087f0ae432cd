"""Command line: ``geomfreq generate | analyze | validate``."""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .curves import balanced_sinusoid, distorted_three_phase, fit_sampled, unbalanced_sinusoid
from .darboux import average_bivector, geometric_frequency_series
from .errors import GeomFreqError
from .waveio import parse_waveform_csv, to_csv, to_json, write_waveform_csv

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

MODELS = ("balanced", "unbalanced", "harmonic437")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomfreq",
        description="Geometric frequency of multi-phase signals via the Darboux bivector.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic t,v1..vn CSV")
    gen.add_argument("--model", choices=MODELS, required=True)
    gen.add_argument("--phases", type=int, help="phase count (balanced only)")
    gen.add_argument("--amp", type=_positive, help="amplitude in V (balanced only)")
    gen.add_argument("--amps", type=_floats, help="per-phase amplitudes in V (unbalanced)")
    gen.add_argument("--phis", type=_floats, help="per-phase angles in degrees (unbalanced)")
    gen.add_argument("--freq", type=_positive, default=50.0, help="fundamental in Hz")
    gen.add_argument("--rate", type=_positive, default=12800.0, help="sample rate in Hz")
    gen.add_argument("--cycles", type=_positive, default=3.0)
    gen.add_argument("--out", help="output path (default: stdout)")

    ana = sub.add_parser("analyze", help="geometric frequency of a sampled waveform")
    ana.add_argument("input", help="CSV with header t,v1,...,vn")
    ana.add_argument("--method", choices=("cgs", "mgs", "gags"), default="mgs")
    ana.add_argument("--max-order", type=int, choices=(2, 3, 4),
                     help="highest derivative used for the frame (default min(n, 4))")
    ana.add_argument("--smoothing", type=float, default=0.0)
    ana.add_argument("--format", choices=("json", "csv"), default="json")
    ana.add_argument("--window", help="averaging window: 'one-cycle' or 't0,t1' in seconds")
    ana.add_argument("--freq", type=_positive, help="nominal frequency in Hz (for one-cycle)")
    ana.add_argument("--steps", type=int, default=1024, help="quadrature steps per cycle")
    ana.add_argument("--out", help="output path (default: stdout)")

    val = sub.add_parser("validate", help="run the acceptance checks on analytic signals")
    val.add_argument("--only", action="append",
                     help="criterion key, number or tag; may be repeated")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args, parser) -> int:
    omega = 2 * math.pi * args.freq
    if args.model == "balanced":
        if args.amps is not None or args.phis is not None:
            parser.error("--amps/--phis apply to the unbalanced model only")
        model = balanced_sinusoid(args.phases or 3, args.amp or 1.0, omega)
    elif args.model == "unbalanced":
        if args.phases is not None or args.amp is not None:
            parser.error("--phases/--amp apply to the balanced model only")
        if args.amps is None or args.phis is None:
            parser.error("the unbalanced model needs --amps and --phis")
        if len(args.amps) != len(args.phis):
            parser.error("--amps and --phis must have the same length")
        model = unbalanced_sinusoid(args.amps, np.radians(args.phis), omega)
    else:
        if any(x is not None for x in (args.phases, args.amp, args.amps, args.phis)):
            parser.error("harmonic437 is a fixed three-phase preset; only --freq, "
                         "--rate and --cycles apply")
        model = distorted_three_phase(omega)
    count = int(round(args.rate / args.freq * args.cycles))
    times = np.arange(count) / args.rate
    values = model.eval(times, 0)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            write_waveform_csv(fh, times, values)
    else:
        write_waveform_csv(sys.stdout, times, values)
    return EXIT_OK


def _window(args, parser, domain):
    if args.window is None:
        return None, None
    if args.steps < 16:
        parser.error("--steps must be at least 16 when averaging")
    if args.window == "one-cycle":
        if args.freq is None:
            parser.error("--window one-cycle needs --freq")
        t0 = domain[0]
        return (t0, t0 + 1.0 / args.freq), args.steps
    try:
        t0, t1 = (float(x) for x in args.window.split(","))
    except ValueError:
        parser.error(f"--window must be 'one-cycle' or 't0,t1', got {args.window!r}")
    if not t1 > t0:
        parser.error("--window needs t1 > t0")
    if args.freq is None:
        return (t0, t1), args.steps
    return (t0, t1), max(16, int(math.ceil(args.steps * (t1 - t0) * args.freq)))


def cmd_analyze(args, parser) -> int:
    if args.smoothing < 0:
        parser.error("--smoothing must be >= 0")
    try:
        signal = parse_waveform_csv(args.input)
        model = fit_sampled(signal, args.smoothing)
    except (OSError, GeomFreqError) as exc:
        print(f"geomfreq analyze: {exc}", file=sys.stderr)
        return EXIT_INPUT
    order = args.max_order or min(signal.dim, 4)
    window, steps = _window(args, parser, model.domain)
    if window is not None and (window[0] < model.domain[0] or window[1] > model.domain[1]):
        print(f"geomfreq analyze: window {window} leaves the analyzed span {model.domain}",
              file=sys.stderr)
        return EXIT_INPUT
    mask = model.interior_mask()
    times = signal.times[mask]
    samples = geometric_frequency_series(model, times, method=args.method, order=order)
    average = average_bivector(model, *window, steps) if window is not None else None
    metadata = {
        "version": __version__,
        "config": {
            "input": args.input,
            "orthogonalizer": args.method,
            "max_order": order,
            "smoothing": args.smoothing,
            "format": args.format,
            "window": list(window) if window else None,
            "steps": steps,
        },
        "phases": signal.dim,
        "analyzed_span": list(model.domain),
        "samples_total": len(signal),
        "samples_trimmed": int(len(signal) - mask.sum()),
        "samples_flagged": sum(1 for s in samples if not s.ok),
    }
    render = to_json if args.format == "json" else to_csv
    _emit(render(samples, signal.dim, metadata, average), args.out)
    return EXIT_OK


def cmd_validate(args, parser) -> int:
    from .validation import run

    try:
        ok = run(args.only)
    except KeyError as exc:
        parser.error(str(exc))
    print("all criteria passed" if ok else "some criteria FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"generate": cmd_generate, "analyze": cmd_analyze, "validate": cmd_validate}
    return handler[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
