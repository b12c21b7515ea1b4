"""Command line driver: ``entdecay <subcommand> ...``.

Exit codes: 0 success, 1 verification above tolerance, 2 invalid input,
3 state or pair not in the catalog, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, analysis, analytic, concurrence, lindblad
from .errors import EntDecayError, InvalidArgument

EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2

STATE_HELP = "w3, w4, phi1, phi2, phi3, ghz:N, w:N or file:PATH"
CHANNEL_HELP = "x, y, z or iso (depolarizing)"


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_common(p: argparse.ArgumentParser, step: bool = True) -> None:
    p.add_argument("--state", required=True, help=STATE_HELP)
    p.add_argument("--channel", required=True, help=CHANNEL_HELP)
    if step:
        p.add_argument("--step", type=float, default=lindblad.DEFAULT_STEP, help="RK4 step in kt (default 1e-3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entdecay", description="Entanglement decay of qubit registers under Pauli noise.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="integrate the master equation and dump the density matrix")
    _add_common(p)
    p.add_argument("--kt", type=float, required=True)
    p.add_argument("--out", default="-", help="output file (default stdout)")

    p = sub.add_parser("tau", help="evaluate the concurrence lower bound at one time")
    _add_common(p)
    p.add_argument("--kt", type=float, default=0.0)
    p.add_argument("--source", default="numeric", help="numeric, analytic or formula")

    p = sub.add_parser("sweep", help="tau curve on a uniform grid as CSV")
    _add_common(p)
    p.add_argument("--kt-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--source", default="numeric", help="numeric, analytic or formula")
    p.add_argument("--out", default="-")

    p = sub.add_parser("sudden-death", help="first time the bound reaches zero")
    _add_common(p)
    p.add_argument("--kt-max", type=float, default=5.0)
    p.add_argument("--source", default="auto", help="auto, numeric, analytic or formula")

    p = sub.add_parser("compare", help="normalized tau of several states and the most robust one")
    p.add_argument("--states", type=_str_list, required=True, help="comma-separated state ids")
    p.add_argument("--channel", required=True, help=CHANNEL_HELP)
    p.add_argument("--kt-grid", type=_float_list, required=True, help="comma-separated kt values")
    p.add_argument("--source", default="numeric")
    p.add_argument("--step", type=float, default=lindblad.DEFAULT_STEP)
    p.add_argument("--out", default="-")

    p = sub.add_parser("verify", help="closed-form density against the integrator")
    _add_common(p)
    p.add_argument("--kt-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=21)
    return parser


def _cmd_evolve(args) -> int:
    rho0 = analysis.load_state(args.state)
    ch = lindblad.NoiseChannel.named(args.channel, rho0.shape[0].bit_length() - 1)
    if args.kt < 0:
        raise InvalidArgument("--kt must be non-negative")
    analysis.write_density(lindblad.propagate(rho0, ch, args.kt, args.step), args.out)
    return 0


def _cmd_tau(args) -> int:
    if args.kt < 0:
        raise InvalidArgument("--kt must be non-negative")
    source = analysis.source_name(args.source)
    kts = [0.0, args.kt] if args.kt > 0 else [0.0]
    raw = analysis._tau_series(args.state, args.channel, kts, source, args.step)
    norm = raw[-1] / raw[0] if raw[0] > 0 else 0.0
    print(
        f"state={args.state} channel={lindblad.channel_name(args.channel)} kt={args.kt:g} source={source} "
        f"tau={analysis.format_number(raw[-1])} tau_normalized={analysis.format_number(norm)}"
    )
    return 0


def _cmd_sweep(args) -> int:
    curve = analysis.sweep(args.state, args.channel, args.kt_max, args.points, args.source, args.step)
    analysis.write_curve_csv(curve, args.out)
    return 0


def _cmd_sudden_death(args) -> int:
    report = analysis.sudden_death(args.state, args.channel, args.kt_max, args.source, args.step)
    print(report.line())
    return 0


def _cmd_compare(args) -> int:
    table = analysis.compare(args.states, args.channel, args.kt_grid, args.source, args.step)
    analysis.write_compare_csv(table, args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.points < 2 or not args.kt_max > 0:
        raise InvalidArgument("need --points >= 2 and --kt-max > 0")
    grid = [args.kt_max * i / (args.points - 1) for i in range(args.points)]
    report = analysis.verify(args.state, args.channel, grid, args.step)
    print("\n".join(report.lines()))
    return 0 if report.passed else EXIT_VERIFY_FAILED


_COMMANDS = {
    "evolve": _cmd_evolve,
    "tau": _cmd_tau,
    "sweep": _cmd_sweep,
    "sudden-death": _cmd_sudden_death,
    "compare": _cmd_compare,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EntDecayError as exc:
        print(f"entdecay: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"entdecay: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
