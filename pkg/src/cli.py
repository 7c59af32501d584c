#!/usr/bin/env python3
"""Command-line interface for dqcsim.

Subcommands build codes, emit noisy distributed circuits, sample and decode
shots, run logical error rate cells and sweeps, bound circuit distances and
extrapolate required code distances. Results go to stdout or ``--out``;
logs go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, NoReturn, Optional, Sequence, Tuple, Union

from application.experiment_service import ExperimentService, PreparedCell
from application.sweep_service import SweepGrid, SweepService
from domain.analysis import (
    ResultRepository,
    ResultRow,
    distance_table,
    search_circuit_distance,
    witness_report,
)
from domain.circuit import (
    CircuitParseError,
    DeterminismError,
    census,
    serialize,
)
from domain.codes import (
    CodeConstructionError,
    CodeSpec,
    CodeSpecError,
    build_code,
    dump_check_matrices,
    load_code_specs,
    min_logical_weight_bruteforce,
)
from domain.constants import (
    CIRCUIT_KINDS,
    DISTANCE_SEARCH_BP_ITERATIONS,
    EBIT_RATIOS,
    REFERENCE_THRESHOLDS,
    default_log_level,
    default_workers,
)
from domain.decoder import BpConfig, OsdConfig, decode_batch
from domain.dem import DemParseError, parse_dem, sample_from_dem, serialize_dem
from domain.sim import (
    read_batch_binary,
    read_batch_text,
    sample_table,
    write_batch_binary,
    write_batch_text,
)
from infrastructure.persistence import CsvResultRepository, JsonResultRepository
from version import __version__

logger = logging.getLogger("dqcsim")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUILD = 2
EXIT_RUNTIME = 3

BUILD_ERRORS = (
    CodeConstructionError,
    CodeSpecError,
    CircuitParseError,
    DemParseError,
    DeterminismError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _first(value: Any) -> Any:
    if isinstance(value, list):
        return value[0] if value else None
    return value


@dataclass
class RunConfig:
    """Resolved options of one invocation."""

    command: str
    code: str = ""
    circuit: str = CIRCUIT_KINDS[0]
    p: float = 0.0
    ebit_ratio: Optional[float] = None
    ebit_p: Optional[float] = None
    shots: int = 0
    seed: int = 0
    workers: int = 1
    out: Optional[Path] = None
    format: str = "csv"

    @property
    def p_ebit(self) -> float:
        if self.ebit_p is not None:
            return self.ebit_p
        ratio = 1.0 if self.ebit_ratio is None else self.ebit_ratio
        return min(1.0, ratio * self.p)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        # sweep takes lists; a single-cell config keeps the first entry
        code, p, ratio = (
            _first(getattr(args, name, None)) for name in ("code", "p", "ebit_ratio")
        )
        return cls(
            command=args.command,
            code=str(code or ""),
            circuit=getattr(args, "circuit", CIRCUIT_KINDS[0]),
            p=float(p or 0.0),
            ebit_ratio=None if ratio is None else float(ratio),
            ebit_p=getattr(args, "ebit_p", None),
            shots=int(getattr(args, "shots", 0) or 0),
            seed=int(getattr(args, "seed", 0) or 0),
            workers=int(getattr(args, "workers", 1) or 1),
            out=getattr(args, "out", None),
            format=getattr(args, "format", "csv"),
        )


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}") from e
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability {value} outside [0, 1]")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive count, got {value}")
    return value


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--log-level",
        default=default_log_level(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Logging level (default from DQCSIM_LOG_LEVEL or WARNING)",
    )


def _add_circuit(
    sub: argparse.ArgumentParser, p_default: Optional[float] = None
) -> None:
    sub.add_argument("--code", required=True, help="Code preset or description line")
    sub.add_argument("--circuit", choices=CIRCUIT_KINDS, default=CIRCUIT_KINDS[0])
    sub.add_argument(
        "--p",
        type=_probability,
        required=p_default is None,
        default=p_default,
        help="Local physical error rate",
    )
    ebit = sub.add_mutually_exclusive_group()
    ebit.add_argument(
        "--ebit-ratio", type=float, help="Ebit error rate as a multiple of p"
    )
    ebit.add_argument("--ebit-p", type=_probability, help="Absolute ebit error rate")


def _add_run(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--shots", type=_positive, required=True)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument(
        "--workers",
        type=_positive,
        default=default_workers(),
        help="Worker processes (default from DQCSIM_THREADS or 1)",
    )


def _add_decoder(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--bp-iterations", type=_positive, default=BpConfig().max_iterations
    )
    sub.add_argument(
        "--bp-variant", choices=["product-sum", "min-sum"], default="product-sum"
    )
    sub.add_argument(
        "--bp-schedule", choices=["parallel", "serial"], default="parallel"
    )
    sub.add_argument("--osd-order", type=int, default=OsdConfig().order)
    sub.add_argument(
        "--osd-mode",
        choices=["combination-sweep", "exhaustive"],
        default="combination-sweep",
    )


def _decoder_configs(args: argparse.Namespace) -> Tuple[BpConfig, OsdConfig]:
    bp = BpConfig(
        max_iterations=args.bp_iterations,
        variant=args.bp_variant,
        schedule=args.bp_schedule,
    )
    return bp, OsdConfig(order=args.osd_order, mode=args.osd_mode)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dqcsim",
        description=(
            f"dqcsim v{__version__} - distributed quantum error correction simulator"
        ),
    )
    parser.add_argument("--version", action="version", version=f"dqcsim {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub = subs.add_parser(
        "build-code", help="Build a code and report n, k, rate, CSS check"
    )
    sub.add_argument("spec", nargs="?", help="Code preset or description line")
    sub.add_argument("--from-file", type=Path, help="File of code description lines")
    sub.add_argument("--dump", action="store_true", help="Print the check matrices")
    sub.add_argument(
        "--check-distance",
        type=int,
        metavar="W",
        help="Brute-force logicals up to weight W",
    )
    _add_common(sub)

    sub = subs.add_parser(
        "emit", help="Write a noisy circuit and print its gate census"
    )
    _add_circuit(sub)
    sub.add_argument("--out", type=Path, help="Circuit file (default stdout)")
    sub.add_argument("--dem-out", type=Path, help="Also write the detector error model")
    _add_common(sub)

    sub = subs.add_parser("sample", help="Sample detector and observable shots")
    _add_circuit(sub)
    _add_run(sub)
    sub.add_argument("--out", type=Path, required=True, help="Shot batch file")
    sub.add_argument("--binary", action="store_true", help="Packed binary batch")
    sub.add_argument(
        "--from-dem",
        action="store_true",
        help="Sample the error model instead of the circuit",
    )
    _add_common(sub)

    sub = subs.add_parser("decode", help="Decode a shot batch against an error model")
    sub.add_argument("--dem", type=Path, required=True)
    sub.add_argument("--batch", type=Path, required=True)
    sub.add_argument(
        "--binary", action="store_true", help="Batch file is packed binary"
    )
    sub.add_argument(
        "--flags-out", type=Path, help="Per-shot failure flags, one per line"
    )
    _add_decoder(sub)
    _add_common(sub)

    sub = subs.add_parser("run", help="Logical error rate of one cell")
    _add_circuit(sub)
    _add_run(sub)
    _add_decoder(sub)
    sub.add_argument("--out", type=Path, help="Result file (default stdout)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(sub)

    sub = subs.add_parser("sweep", help="Logical error rates over a grid of cells")
    sub.add_argument(
        "--code", action="append", required=True, help="Repeat for several codes"
    )
    sub.add_argument("--circuit", choices=CIRCUIT_KINDS, default=CIRCUIT_KINDS[0])
    sub.add_argument("--p", type=_probability, nargs="+", required=True)
    ebit = sub.add_mutually_exclusive_group()
    ebit.add_argument("--ebit-ratio", type=float, nargs="+", default=list(EBIT_RATIOS))
    ebit.add_argument("--ebit-p", type=_probability)
    _add_run(sub)
    _add_decoder(sub)
    sub.add_argument("--out", type=Path, help="Result file (default stdout)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(sub)

    sub = subs.add_parser("distance", help="Upper-bound the circuit-level distance")
    _add_circuit(sub, p_default=1e-3)
    sub.add_argument("--effort", type=_positive, help="Mechanisms to try (default all)")
    sub.add_argument(
        "--bp-iterations", type=_positive, default=DISTANCE_SEARCH_BP_ITERATIONS
    )
    sub.add_argument("--osd-order", type=int, default=OsdConfig().order)
    _add_common(sub)

    sub = subs.add_parser(
        "extrapolate", help="Distance needed for a target logical error rate"
    )
    sub.add_argument("--p", type=_probability, required=True)
    sub.add_argument(
        "--p-th", type=_probability, help="Threshold (default: by --circuit)"
    )
    sub.add_argument("--d0", type=_positive, required=True)
    sub.add_argument("--p0", type=_probability, required=True)
    sub.add_argument("--target", type=_probability, nargs="+", required=True)
    sub.add_argument("--odd", action="store_true", help="Round up to an odd distance")
    sub.add_argument("--circuit", default="")
    sub.add_argument("--ebit-ratio", type=float, default=1.0)
    _add_common(sub)
    return parser


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _write_rows(rows: List[ResultRow], cfg: RunConfig) -> None:
    repository: ResultRepository
    if cfg.format == "json":
        repository = JsonResultRepository()
    else:
        repository = CsvResultRepository()
    if cfg.out is None:
        sys.stdout.write(repository.dumps(rows))
    else:
        repository.save(rows, cfg.out)


def _prepare(cfg: RunConfig) -> PreparedCell:
    return ExperimentService(workers=1).prepare(
        cfg.code, cfg.circuit, cfg.p, cfg.p_ebit
    )


def cmd_build_code(args: argparse.Namespace) -> int:
    if args.from_file is not None:
        specs: List[Union[str, CodeSpec]] = list(load_code_specs(args.from_file))
    elif args.spec:
        specs = [args.spec]
    else:
        raise UsageError("build-code needs a spec or --from-file")
    for spec in specs:
        code = build_code(spec)
        report = code.report()
        print(f"{code.name} {report.summary()}")
        if args.dump:
            sys.stdout.write(dump_check_matrices(code))
        if args.check_distance is not None:
            found = min_logical_weight_bruteforce(code, args.check_distance)
            shown = "none" if found is None else str(found)
            print(f"min_logical_weight<={args.check_distance}: {shown}")
        if not report.css_ok:
            raise CodeConstructionError(f"{code.name} violates the CSS condition")
    return EXIT_OK


def cmd_emit(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    cell = _prepare(cfg)
    _write(serialize(cell.program), cfg.out)
    if args.dem_out is not None:
        args.dem_out.write_text(serialize_dem(cell.model), encoding="utf-8")
    counts = census(cell.program)
    print(
        f"{cell.code.name} {cfg.circuit}: {counts} "
        f"detectors={cell.model.detector_count} "
        f"mechanisms={cell.model.mechanism_count}",
        file=sys.stderr if cfg.out is None else sys.stdout,
    )
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    cell = _prepare(cfg)
    if args.from_dem:
        batch = sample_from_dem(cell.model, cfg.shots, cfg.seed)
    else:
        batch = sample_table(cell.table, cfg.shots, cfg.seed)
    assert cfg.out is not None
    if args.binary:
        cfg.out.write_bytes(write_batch_binary(batch))
    else:
        cfg.out.write_text(write_batch_text(batch), encoding="utf-8")
    print(
        f"shots={batch.shots} detectors={batch.detector_count} "
        f"observables={batch.observable_count}"
    )
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    model = parse_dem(args.dem.read_text(encoding="utf-8"))
    dims = (model.detector_count, model.observable_count)
    if args.binary:
        batch = read_batch_binary(args.batch.read_bytes(), *dims)
    else:
        batch = read_batch_text(args.batch.read_text(encoding="utf-8"), *dims)
    bp, osd = _decoder_configs(args)
    fails, flags = decode_batch(model, batch, bp, osd)
    if args.flags_out is not None:
        lines = "".join(f"{int(flag)}\n" for flag in flags)
        args.flags_out.write_text(lines, encoding="utf-8")
    print(f"shots={batch.shots} fails={fails}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    bp, osd = _decoder_configs(args)
    service = ExperimentService(workers=cfg.workers, bp=bp, osd=osd)
    row = service.run_cell(
        cfg.code, cfg.circuit, cfg.p, cfg.p_ebit, cfg.shots, cfg.seed
    )
    _write_rows([row], cfg)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    bp, osd = _decoder_configs(args)
    grid = SweepGrid(
        codes=args.code,
        circuit=args.circuit,
        p_values=args.p,
        ebit_ratios=args.ebit_ratio or list(EBIT_RATIOS),
        ebit_p=args.ebit_p,
    )
    service = SweepService(ExperimentService(workers=cfg.workers, bp=bp, osd=osd))
    rows = service.sweep(grid, cfg.shots, cfg.seed)
    _write_rows(rows, cfg)
    failed = sum(1 for row in rows if not row.ok)
    if failed:
        logger.warning("%d of %d cells failed", failed, len(rows))
    return EXIT_OK


def cmd_distance(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    cell = _prepare(cfg)
    witness = search_circuit_distance(
        cell.model,
        effort=args.effort,
        bp=BpConfig(max_iterations=args.bp_iterations),
        osd=OsdConfig(order=args.osd_order),
    )
    print(f"{cell.code.name} {cfg.circuit}: mechanisms={cell.model.mechanism_count}")
    if witness is None:
        print("none-found")
        return EXIT_OK
    print(witness_report(witness, cell.model))
    verified = str(witness.verify(cell.model)).lower()
    print(f"circuit_distance<={witness.weight} verified={verified}")
    return EXIT_OK


def cmd_extrapolate(args: argparse.Namespace) -> int:
    p_th = args.p_th
    if p_th is None:
        if args.circuit not in REFERENCE_THRESHOLDS:
            raise UsageError("--p-th is required without a known --circuit")
        p_th = REFERENCE_THRESHOLDS[args.circuit]
    rows = distance_table(
        args.p,
        p_th,
        (args.d0, args.p0),
        args.target,
        circuit=args.circuit,
        ebit_ratio=args.ebit_ratio,
        odd=args.odd,
    )
    print("circuit,p,ebit_ratio,target,d")
    for row in rows:
        print(
            f"{row.circuit},{row.p!r},{row.ebit_ratio!r},{row.target!r},"
            f"{row.distance}"
        )
    return EXIT_OK


COMMANDS = {
    "build-code": cmd_build_code,
    "emit": cmd_emit,
    "sample": cmd_sample,
    "decode": cmd_decode,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "distance": cmd_distance,
    "extrapolate": cmd_extrapolate,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=getattr(logging, args.log_level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BUILD_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUILD
    except Exception as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
