"""Command-line interface for localamp."""

import argparse
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import __version__, bell, oracle
from .config_manager import OUTPUT_DIR_ENV, ConfigManager, RunConfig
from .exceptions import ArgumentError, ConstraintError, ContractViolation, DomainError
from .export import (
    COUNTS_COLUMNS,
    INTERFERENCE_COLUMNS,
    SCAN_COLUMNS,
    plot_path,
    write_csv,
    write_plot,
)
from .formalism import ghz, interference, model
from .formalism.models import SPIN_HALF, SPIN_ONE, InterferenceConfig, JointDistribution, PairConfig
from .sampler import (
    GENERATOR_NAME,
    SamplerRun,
    analytic_correlation,
    estimate_correlation,
    sample_events,
    standard_error,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMPARE_TOLERANCE = 1e-12
CHSH_TOLERANCE = 1e-9
GHZ_TOLERANCE = 1e-12

PAIR_SYSTEMS: Dict[str, Callable[[float, float], JointDistribution]] = {
    "singlet": model.singlet_correlation,
    "photon": model.photon_correlation,
}
MODEL_P: Dict[str, Callable[[float, float], float]] = {
    "singlet": model.singlet_p,
    "photon": model.photon_p,
}
ORACLE_SYSTEMS: Dict[str, Callable[[float, float], float]] = {
    "singlet": oracle.singlet_correlation,
    "photon": oracle.photon_correlation,
}
PAIR_SOURCES = {
    "singlet": (SPIN_HALF, model.SINGLET_PHI0),
    "photon": (SPIN_ONE, model.PHOTON_PHI0),
}
CANONICAL_CHSH = {
    "singlet": bell.ChshSettings(0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4),
    "photon": bell.ChshSettings(0.0, math.pi / 4, math.pi / 8, 3 * math.pi / 8),
}


@dataclass(frozen=True)
class ScanRequest:
    """A one-dimensional scan over analyzer separation or detector offset."""
    system: str
    start: float
    stop: float
    points: int
    output_path: Path

    def __post_init__(self):
        if self.system not in (*PAIR_SYSTEMS, "interference"):
            raise ArgumentError(f"Unknown system {self.system!r}")
        if self.points < 2:
            raise ArgumentError(f"points must be at least 2, got {self.points}")
        if not self.start < self.stop:
            raise ArgumentError(f"start ({self.start}) must be below stop ({self.stop})")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def _console() -> Console:
    return Console(highlight=False, width=100, soft_wrap=True)


def _to_radians(value: float, radians: bool) -> float:
    return value if radians else math.radians(value)


def _angle_unit(radians: bool) -> str:
    return "rad" if radians else "deg"


def _interference_config(config: RunConfig) -> InterferenceConfig:
    options = config.interference
    return InterferenceConfig(k=options.k, alpha=options.alpha, x0=options.x0)


def _interference_rows(cfg: InterferenceConfig, separations: np.ndarray) -> List[Dict[str, float]]:
    # Detector 2 stays at the origin.
    return [
        {"x1_minus_x2": float(d), "prob": interference.coincidence_probability(cfg, float(d), 0.0)}
        for d in separations
    ]


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Send log records to stderr through rich, keeping stdout for results."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[
            RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)
        ],
        force=True,
    )


def handle_scan_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the scan command."""
    request = ScanRequest(
        system=args.system,
        start=args.start,
        stop=args.stop,
        points=config.points,
        output_path=config.resolve_output(args.output or f"{args.system}_scan.csv"),
    )
    xs = request.grid()

    if request.system == "interference":
        cfg = _interference_config(config)
        rows = _interference_rows(cfg, xs)
        write_csv(rows, INTERFERENCE_COLUMNS, request.output_path)
        if config.plot:
            write_plot(
                xs,
                {"coincidence": [row["prob"] for row in rows]},
                plot_path(request.output_path),
                xlabel="x1 - x2",
                title="Two-photon coincidence pattern",
                ylim=(-0.05, 1.05),
            )
        print(request.output_path)
        return EXIT_OK

    correlation = PAIR_SYSTEMS[request.system]
    rows = []
    for x in xs:
        joint = correlation(_to_radians(float(x), config.radians), 0.0)
        rows.append(
            {
                "x": float(x),
                "u": joint.u,
                "p": joint.p,
                "p_pp": joint.p_pp,
                "p_mm": joint.p_mm,
                "p_pm": joint.p_pm,
                "p_mp": joint.p_mp,
            }
        )
    write_csv(rows, SCAN_COLUMNS, request.output_path)
    if config.plot:
        write_plot(
            xs,
            {"U": [row["u"] for row in rows], "P": [row["p"] for row in rows]},
            plot_path(request.output_path),
            xlabel=f"theta1 - theta2 ({_angle_unit(config.radians)})",
            title=f"{request.system} correlation",
        )
    print(request.output_path)
    return EXIT_OK


def compare_system(system: str, points: int, perturb_u: float = 0.0) -> float:
    """Largest |P_model - P_oracle| over a uniform grid of separations in [0, 2 pi)."""
    if points < 1:
        raise ArgumentError(f"points must be positive, got {points}")
    spin, phi0 = PAIR_SOURCES[system]
    oracle_correlation = ORACLE_SYSTEMS[system]
    worst = 0.0
    for j in range(points):
        delta = 2 * math.pi * j / points
        u = model.amplitude_correlation(PairConfig(spin, phi0, delta, 0.0))
        if perturb_u:
            u = float(np.clip(u + perturb_u, -1.0, 1.0))
        deviation = abs(model.experimenter_correlation(u) - oracle_correlation(delta, 0.0))
        worst = max(worst, deviation)
    return worst


def handle_compare_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the compare command."""
    deviation = compare_system(args.system, config.points, args.perturb_u)
    print(f"system: {args.system}")
    print(f"grid points: {config.points}")
    print(f"max |P_model - P_oracle|: {deviation:.3e}")
    if deviation > COMPARE_TOLERANCE:
        logger.error(
            f"Model and oracle disagree by {deviation:.3e} (tolerance {COMPARE_TOLERANCE:.0e})"
        )
        return EXIT_FAILURE
    return EXIT_OK


def handle_chsh_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the chsh command."""
    table = Table(title="CHSH")
    table.add_column("quantity")
    table.add_column("value", justify="right")

    model_values = {}
    for system, settings in CANONICAL_CHSH.items():
        model_values[system] = bell.chsh_value(MODEL_P[system], settings)
        oracle_value = bell.chsh_value(ORACLE_SYSTEMS[system], settings)
        table.add_row(f"S model ({system}, canonical angles)", f"{model_values[system]:+.12f}")
        table.add_row(f"S oracle ({system}, canonical angles)", f"{oracle_value:+.12f}")

    deterministic = bell.max_deterministic_chsh()
    table.add_row("max |S| deterministic instruction sets", f"{deterministic:.12f}")

    points = bell.scan_chsh(
        model.singlet_p, config.chsh_grid, workers=config.workers, progress=args.progress
    )
    best_settings, best = bell.max_abs_chsh(points)
    table.add_row(f"max |S| model grid ({config.chsh_grid}^4 points)", f"{abs(best):.12f}")
    table.add_row(
        "  at (a, a', b, b') deg",
        ", ".join(f"{math.degrees(angle):.2f}" for angle in best_settings.as_tuple()),
    )
    table.add_row("Tsirelson bound 2*sqrt(2)", f"{bell.TSIRELSON_BOUND:.12f}")
    _console().print(table)

    if deterministic != bell.CLASSICAL_BOUND:
        raise ContractViolation(f"Deterministic bound is {deterministic}, expected 2")
    for system, value in model_values.items():
        if abs(abs(value) - bell.TSIRELSON_BOUND) > CHSH_TOLERANCE:
            raise ContractViolation(f"|S| for {system} is {abs(value)}, expected 2*sqrt(2)")
    return EXIT_OK


def handle_ghz_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the ghz command."""
    state = oracle.ghz_state()
    settings = oracle.x_basis_settings(3)
    rows = ghz.ghz_table()

    table = Table(title="GHZ x-basis outcomes")
    for column in ("outcome", "P local amplitudes", "P / 4", "oracle Born", "local realistic"):
        table.add_column(column, justify="right")

    worst = 0.0
    records = []
    for row in rows:
        born = oracle.joint_probability(state, settings, row.outcome.signs)
        worst = max(worst, abs(row.normalized - born))
        table.add_row(
            row.outcome.label,
            f"{row.probability:.0f}",
            f"{row.normalized:.4f}",
            f"{born:.4f}",
            f"{row.local_realistic:.0f}",
        )
        records.append(
            {
                "outcome": row.outcome.label,
                "probability": row.probability,
                "normalized": row.normalized,
                "oracle": born,
                "local_realistic": row.local_realistic,
            }
        )
    console = _console()
    console.print(table)
    console.print(
        f"best local instruction set reproduces {bell.max_ghz_agreements()} of "
        f"{len(bell.GHZ_QUANTUM_STATEMENTS)} GHZ parity statements"
    )

    if args.output:
        write_csv(records, list(records[0]), config.resolve_output(args.output))

    if worst > GHZ_TOLERANCE:
        raise ContractViolation(f"GHZ table deviates from the oracle by {worst:.3e}")
    return EXIT_OK


def handle_interference_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the interference command."""
    cfg = _interference_config(config)
    period = interference.fringe_period(cfg)
    vis = interference.visibility(cfg, args.samples)
    shifted = interference.visibility(cfg, args.samples, offset=args.offset)

    print(f"k: {cfg.k:g}  alpha: {cfg.alpha:g}  x0: {cfg.x0:g}")
    print(f"fringe period: {period:.12g}")
    print(f"visibility ({args.samples} samples): {vis:.12f}")
    print(f"visibility with common offset {args.offset:g}: {shifted:.12f}")

    if args.output:
        separations = interference.fringe_offsets(cfg, args.samples)
        rows = _interference_rows(cfg, separations)
        output_path = config.resolve_output(args.output)
        write_csv(rows, INTERFERENCE_COLUMNS, output_path)
        if config.plot:
            write_plot(
                separations,
                {"coincidence": [row["prob"] for row in rows]},
                plot_path(output_path),
                xlabel="x1 - x2",
                title="One fringe period",
                ylim=(-0.05, 1.05),
            )

    if abs(vis - 1.0) > 1e-9:
        raise ContractViolation(f"Visibility {vis} differs from 1")
    return EXIT_OK


def handle_sample_command(args: argparse.Namespace, config: RunConfig) -> int:
    """Handle the sample command."""
    spin, phi0 = PAIR_SOURCES[args.system]
    pair = PairConfig(
        spin=spin,
        phi0=phi0,
        theta1=_to_radians(args.theta1, config.radians),
        theta2=_to_radians(args.theta2, config.radians),
    )
    run = SamplerRun(
        config=pair,
        n_events=config.events,
        seed=config.seed,
        chunk_size=config.chunk_size,
        random_internal_phase=args.random_phase,
    )
    counts = sample_events(run, workers=config.workers, progress=args.progress)
    p_hat = estimate_correlation(counts)
    p_analytic = analytic_correlation(pair)

    table = Table(title=f"{args.system} events (seed {run.seed}, {GENERATOR_NAME})")
    for column in ("++", "--", "+-", "-+", "total"):
        table.add_column(column, justify="right")
    table.add_row(*(str(n) for n in counts.to_dict().values()))
    console = _console()
    console.print(table)
    console.print(f"P estimate: {p_hat:+.6f}")
    console.print(f"P analytic: {p_analytic:+.6f}")
    console.print(f"standard error: {standard_error(p_analytic, counts.n_total):.6f}")

    if args.output:
        record = dict(counts.to_dict(), p_hat=p_hat, p_analytic=p_analytic)
        write_csv([record], COUNTS_COLUMNS, config.resolve_output(args.output))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog="localamp",
        description="Quantum correlations from local amplitudes, checked against state vectors",
    )
    parser.add_argument("--version", action="store_true", help="Show version information")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="Only log warnings and errors")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", "-c",
        type=str,
        help="Path to YAML configuration file"
    )
    common.add_argument(
        "--output", "-o",
        type=str,
        help="Output file (relative to the output directory)"
    )
    common.add_argument(
        "--output-dir",
        type=str,
        help=f"Output directory (default: ${OUTPUT_DIR_ENV} or .)"
    )
    plot_group = common.add_mutually_exclusive_group()
    plot_group.add_argument(
        "--plot",
        action="store_const",
        const=True,
        help="Also write an SVG plot beside the CSV"
    )
    plot_group.add_argument(
        "--no-plot",
        dest="plot",
        action="store_const",
        const=False,
        help="Do not write a plot, even if the configuration asks for one"
    )
    common.add_argument("--seed", type=int, help="Random seed (unsigned 64-bit)")
    common.add_argument("--points", type=int, help="Number of grid points")
    angle_group = common.add_mutually_exclusive_group()
    angle_group.add_argument(
        "--radians",
        action="store_const",
        const=True,
        help="Read angles as radians instead of degrees"
    )
    angle_group.add_argument(
        "--degrees",
        dest="radians",
        action="store_const",
        const=False,
        help="Read angles as degrees (the default)"
    )
    common.add_argument("--workers", type=int, help="Number of worker threads")
    common.add_argument("--progress", action="store_true", help="Show progress bars")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Scan command
    scan_parser = subparsers.add_parser(
        "scan", parents=[common], help="Scan a correlation curve to CSV"
    )
    scan_parser.add_argument(
        "--system",
        choices=[*PAIR_SYSTEMS, "interference"],
        default="singlet",
        help="System to scan"
    )
    scan_parser.add_argument(
        "--start",
        type=float,
        default=0.0,
        help="Scan start (angle or length)"
    )
    scan_parser.add_argument(
        "--stop",
        type=float,
        default=360.0,
        help="Scan stop (angle or length)"
    )
    _add_interference_arguments(scan_parser)
    scan_parser.set_defaults(func=handle_scan_command)

    # Compare command
    compare_parser = subparsers.add_parser(
        "compare", parents=[common], help="Compare the model with the state-vector oracle"
    )
    compare_parser.add_argument(
        "--system",
        choices=list(PAIR_SYSTEMS),
        default="singlet",
        help="System to compare"
    )
    compare_parser.add_argument("--perturb-u", type=float, default=0.0, help=argparse.SUPPRESS)
    compare_parser.set_defaults(func=handle_compare_command)

    # CHSH command
    chsh_parser = subparsers.add_parser("chsh", parents=[common], help="CHSH values and bounds")
    chsh_parser.add_argument("--chsh-grid", type=int, help="Lattice points per CHSH angle")
    chsh_parser.set_defaults(func=handle_chsh_command)

    # GHZ command
    ghz_parser = subparsers.add_parser("ghz", parents=[common], help="GHZ outcome table")
    ghz_parser.set_defaults(func=handle_ghz_command)

    # Interference command
    interference_parser = subparsers.add_parser(
        "interference", parents=[common], help="Two-photon fringe visibility"
    )
    interference_parser.add_argument(
        "--samples",
        type=int,
        default=256,
        help="Samples over one fringe period"
    )
    interference_parser.add_argument(
        "--offset",
        type=float,
        default=0.0,
        help="Common detector translation"
    )
    _add_interference_arguments(interference_parser)
    interference_parser.set_defaults(func=handle_interference_command)

    # Sample command
    sample_parser = subparsers.add_parser(
        "sample", parents=[common], help="Monte Carlo pair events"
    )
    sample_parser.add_argument(
        "--system",
        choices=list(PAIR_SYSTEMS),
        default="singlet",
        help="System to sample"
    )
    sample_parser.add_argument("--theta1", type=float, default=0.0, help="Analyzer 1 angle")
    sample_parser.add_argument("--theta2", type=float, default=60.0, help="Analyzer 2 angle")
    sample_parser.add_argument("--events", type=int, help="Number of pair events")
    sample_parser.add_argument(
        "--chunk-size",
        type=int,
        help="Events per independently seeded chunk"
    )
    sample_parser.add_argument(
        "--random-phase",
        action="store_true",
        help="Draw a fresh internal phase for every pair"
    )
    sample_parser.set_defaults(func=handle_sample_command)

    return parser


def _add_interference_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=float, help="Wave number")
    parser.add_argument("--alpha", type=float, help="Angular scale factor")
    parser.add_argument("--x0", type=float, help="Reference coordinate")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    if args.version:
        print(f"localamp version {__version__}")
        return EXIT_OK

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        config = ConfigManager(args.config).apply_overrides(args)
        return args.func(args, config)
    except (ArgumentError, DomainError, ConstraintError) as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE
    except ContractViolation as e:
        logger.error(f"Computation contract failed: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
