"""Command-line front end: polynomial generation and identity checks.

Exit codes: 0 when every gating check passes, 1 when an identity fails,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from hermops import __version__
from hermops.errors import (
    HermopsError,
    InvalidPrecision,
    UsageError,
    UsageFailure,
    detect_invalid_lambda,
    detect_invalid_parameter,
    detect_invalid_precision,
    detect_invalid_rational,
    detect_negative_index,
    detect_not_positive_definite,
    detect_unknown_check,
)
from hermops.hermite import (
    LambdaForm,
    bivariate_hermite,
    hermite_e,
    laguerre_rodrigues,
    legendre_rodrigues,
    u_poly,
)
from hermops.log import ConsoleLog
from hermops.models import Config, Convention, OutputFormat, SuiteConfig, Variant, VerificationReport
from hermops.utils.config import ConfigManager, precision_from_env
from hermops.utils.report_io import (
    poly_table,
    poly_to_csv,
    poly_to_json,
    render_table,
    reports_table,
    reports_to_csv,
    reports_to_json,
)
from hermops.utils.validator import ParameterValidator
from hermops.verify import CHECKS, FAMILIES, CheckOptions, exit_status, run_check, run_suite
from hermops.weyl import Poly

GEN_KINDS = ("hermite", "bivariate", "legendre", "laguerre", "u-poly")


@dataclass
class CliConfig:
    """Resolved settings: stored config, then HERMOPS_PRECISION, then flags."""

    command: str
    precision: int
    output_format: OutputFormat
    convention: Convention
    config: Config
    n: int | None = None
    m: int | None = None
    lam: LambdaForm | None = None
    alpha: Fraction | None = None
    degree: int | None = None
    variant: Variant | None = None


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="first polynomial index")
    common.add_argument("--m", type=int, help="second polynomial index")
    common.add_argument("--lambda", dest="lam", metavar="SQRT_A,B,SQRT_C", help="quadratic form, exact rationals")
    common.add_argument("--precision", help="working precision in decimal digits (>= 15)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="output format")
    common.add_argument("--convention", choices=[c.value for c in Convention], help="exponent pairing for u_(n,m)")
    common.add_argument("--output", type=Path, help="write the rendered result to a file")
    common.add_argument("--config", type=Path, help="configuration file")
    common.add_argument("--verbose", action="store_true", help="progress lines on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Parser for the gen and check subcommands."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="hermops",
        description="Exact Weyl-algebra operators, Hermite families and sl(2) identity checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", parents=[common], help="generate a polynomial")
    gen.add_argument("kind", choices=GEN_KINDS)

    check = commands.add_parser("check", parents=[common], help="run identity checks")
    check.add_argument("check_id", nargs="?", help="check id or 'all'")
    check.add_argument("--list", action="store_true", help="list every check with its anchor")
    check.add_argument("--degree", type=int, help="truncation degree N (ladder: dimension)")
    check.add_argument("--variant", choices=[v.value for v in Variant], help="Theorem 1 b' variant")
    check.add_argument("--family", choices=FAMILIES, help="generator family for eq8")
    check.add_argument("--alpha", help="alpha for the bivariate family, exact rational")
    check.add_argument("--max-nm", type=int, dest="max_nm", help="largest n + m in grids")
    return parser


_validator = ParameterValidator()


def _index(name: str, value: int | None) -> int | None:
    if value is not None and not _validator.validate_index(value).success:
        raise UsageFailure(detect_negative_index(name, value))
    return value


def _parse_lambda(text: str | None) -> LambdaForm | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 3 or not all(_validator.validate_rational(p).success for p in parts):
        raise UsageFailure(detect_invalid_lambda(text, "expected three exact rationals"))
    result = _validator.validate_lambda(text)
    if not result.success:
        raise UsageFailure(detect_not_positive_definite(text, result.message))
    return result.value


def _parse_alpha(text: str | None) -> Fraction | None:
    if text is None:
        return None
    result = _validator.validate_rational(text)
    if not result.success:
        raise UsageFailure(detect_invalid_rational(text))
    if result.value == 0:
        raise UsageFailure(detect_invalid_parameter("--alpha", "alpha must be nonzero"))
    return result.value


def _precision(args: argparse.Namespace, config: Config) -> int:
    """Config file value, overridden by HERMOPS_PRECISION, overridden by --precision."""
    try:
        precision = precision_from_env(config.precision)
    except InvalidPrecision as exc:
        raise UsageFailure(detect_invalid_precision(str(exc.digits))) from None
    if args.precision is not None:
        result = _validator.validate_precision(args.precision)
        if not result.success:
            raise UsageFailure(detect_invalid_precision(args.precision))
        precision = result.value
    return precision


def resolve(args: argparse.Namespace) -> CliConfig:
    """Merge the stored config, the environment and the command-line flags.

    Raises:
        UsageFailure: For any rejected value, before any computation.
    """
    config = ConfigManager(args.config).load()
    try:
        output_format = OutputFormat(args.format or config.output_format)
        convention = Convention(args.convention or config.convention)
    except ValueError as exc:
        raise UsageFailure(detect_invalid_parameter("configuration", str(exc))) from None
    return CliConfig(
        command=args.command,
        precision=_precision(args, config),
        output_format=output_format,
        convention=convention,
        config=config,
        n=_index("n", args.n),
        m=_index("m", args.m),
        lam=_parse_lambda(args.lam),
        alpha=_parse_alpha(getattr(args, "alpha", None)),
        degree=_index("degree", getattr(args, "degree", None)),
        variant=Variant(args.variant) if getattr(args, "variant", None) else None,
    )


def _emit(text: str, output: Path | None) -> None:
    """Write to the output file when given, else stdout."""
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text)


def _require(name: str, value):
    if value is None:
        raise UsageFailure(detect_invalid_parameter(f"--{name}", "required for this kind"))
    return value


def generate(kind: str, settings: CliConfig) -> tuple[dict, Poly]:
    """Build the requested polynomial and its report params."""
    n = _require("n", settings.n)
    if kind == "hermite":
        return {"n": n}, hermite_e(n)
    if kind == "legendre":
        return {"n": n}, legendre_rodrigues(n)
    if kind == "laguerre":
        return {"n": n}, laguerre_rodrigues(n)
    m = _require("m", settings.m)
    lam = _require("lambda", settings.lam)
    params = {"n": n, "m": m, "lambda": lam.label}
    if kind == "bivariate":
        return params, bivariate_hermite(n, m, lam)
    params["convention"] = settings.convention.value
    return params, u_poly(n, m, lam, settings.convention)


def cmd_gen(args: argparse.Namespace, settings: CliConfig) -> int:
    """Generate one polynomial family member and write it in the chosen format.

    Returns:
        Exit code 0; usage problems surface as UsageFailure.
    """
    params, poly = generate(args.kind, settings)
    if settings.output_format == OutputFormat.JSON:
        text = poly_to_json(args.kind, params, poly)
    elif settings.output_format == OutputFormat.CSV:
        text = poly_to_csv(args.kind, params, poly)
    else:
        text = render_table(poly_table(args.kind, params, poly))
    _emit(text, args.output)
    return 0


def _suite_config(args: argparse.Namespace, settings: CliConfig) -> SuiteConfig:
    """Suite grid with the resolved precision and the configured tolerances."""
    config = settings.config
    suite = SuiteConfig(
        precision=settings.precision,
        lambda_samples=list(config.lambda_samples),
        tolerance_small=config.tolerance_small,
        tolerance_medium=config.tolerance_medium,
        tolerance_large=config.tolerance_large,
    )
    if args.max_nm is not None:
        suite.max_nm = _index("max-nm", args.max_nm)
    for text in suite.lambda_samples:
        _parse_lambda(text)
    return suite


def _list_checks(settings: CliConfig, output: Path | None) -> None:
    if settings.output_format == OutputFormat.PRETTY:
        table = Table(title="hermops checks")
        table.add_column("check")
        table.add_column("anchor")
        table.add_column("summary")
        for spec in CHECKS.values():
            table.add_row(spec.check_id, spec.anchor, spec.summary)
        _emit(render_table(table), output)
        return
    _emit("".join(f"{s.check_id}\t{s.anchor}\t{s.summary}\n" for s in CHECKS.values()), output)


def _render_reports(reports: list[VerificationReport], output_format: OutputFormat) -> str:
    if output_format == OutputFormat.JSON:
        return reports_to_json(reports)
    if output_format == OutputFormat.CSV:
        return reports_to_csv(reports)
    return render_table(reports_table(reports))


def cmd_check(args: argparse.Namespace, settings: CliConfig, log: ConsoleLog | None) -> int:
    """Run one check, every check ("all"), or list the registry.

    Returns:
        0 when every gating report passes, 1 otherwise.

    Raises:
        UsageFailure: If no check id is given or it is not registered.
    """
    if args.list:
        _list_checks(settings, args.output)
        return 0
    if not args.check_id:
        raise UsageFailure(detect_invalid_parameter("check", "give a check id, 'all' or --list"))
    if args.check_id != "all" and args.check_id not in CHECKS:
        raise UsageFailure(detect_unknown_check(args.check_id, list(CHECKS)))
    suite = _suite_config(args, settings)
    callback = log.callback if log else None
    if args.check_id == "all":
        reports = run_suite(suite, verbose_callback=callback)
    else:
        options = CheckOptions(
            n=settings.n,
            m=settings.m,
            lam=settings.lam,
            alpha=settings.alpha,
            degree=settings.degree,
            variant=settings.variant,
            family=args.family,
        )
        reports = run_check(args.check_id, suite, options, verbose_callback=callback)
    _emit(_render_reports(reports, settings.output_format), args.output)
    status = exit_status(reports)
    if log:
        passed = sum(r.passed for r in reports)
        summary = f"{passed}/{len(reports)} checks pass"
        if status == 0:
            log.log_success(summary)
        else:
            log.log_error(summary)
    return status


def _print_usage_error(error: UsageError) -> None:
    Console(stderr=True, highlight=False).print(f"[red]Error:[/red] {escape(error.format_message())}")


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code (2 on usage errors)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    log = ConsoleLog() if args.verbose else None
    try:
        settings = resolve(args)
        if args.command == "gen":
            return cmd_gen(args, settings)
        return cmd_check(args, settings, log)
    except UsageFailure as exc:
        _print_usage_error(exc.error)
        return 2
    except HermopsError as exc:
        Console(stderr=True, highlight=False).print(f"[red]Error:[/red] {escape(str(exc))}")
        return 1
