"""Serialization of verification reports and generated polynomials.

JSON output is byte-deterministic: sorted keys, two-space indent and a
trailing newline. Exact values are written as "p/q" strings, floats in
precision-tagged scientific notation.
"""

import csv
import io
import json
from typing import Any

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from hermops.models import Mode, Verdict, VerificationReport
from hermops.scalar import format_scalar
from hermops.weyl import Poly

CSV_COLUMNS = ["check_id", "params", "mode", "residual", "tolerance", "verdict"]

_VERDICT_STYLE = {
    Verdict.PASS: "green",
    Verdict.FAIL: "red",
    Verdict.NOT_PROPORTIONAL: "yellow",
    Verdict.OVERFLOW: "yellow",
}


def _precision(report: VerificationReport) -> int | None:
    """Digits that float values of the report are tagged with."""
    if report.mode == Mode.FLOAT:
        return report.params.get("precision")
    return None


def report_to_dict(report: VerificationReport) -> dict[str, Any]:
    """Convert a report to a JSON-ready dictionary."""
    digits = _precision(report)
    return {
        "check_id": report.check_id,
        "params": dict(report.params),
        "mode": report.mode.value,
        "residual": format_scalar(report.residual, digits),
        "tolerance": format_scalar(report.tolerance, digits),
        "verdict": report.verdict.value,
        "notes": report.notes,
        "required": report.required,
    }


def summarize(reports: list[VerificationReport]) -> dict[str, int]:
    """Count reports per verdict.

    Args:
        reports: Reports of one run.

    Returns:
        A mapping from every verdict value to its count, plus "total".
    """
    counts = {verdict.value: 0 for verdict in Verdict}
    for report in reports:
        counts[report.verdict.value] += 1
    counts["total"] = len(reports)
    return counts


def reports_to_json(reports: list[VerificationReport]) -> str:
    """Serialize reports and their summary as byte-deterministic JSON."""
    document = {
        "reports": [report_to_dict(r) for r in reports],
        "summary": summarize(reports),
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _params_cell(params: dict[str, Any]) -> str:
    return ";".join(f"{key}={params[key]}" for key in sorted(params))


def reports_to_csv(reports: list[VerificationReport]) -> str:
    """One row per report with the params flattened to "key=value;..."."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        row = report_to_dict(report)
        writer.writerow(
            [
                row["check_id"],
                _params_cell(row["params"]),
                row["mode"],
                row["residual"],
                row["tolerance"],
                row["verdict"],
            ]
        )
    return buffer.getvalue()


def reports_table(reports: list[VerificationReport]) -> Table:
    """Rich table of reports; informational verdicts are marked "(info)".

    Notes hold failing residual operators and are shown verbatim.
    """
    table = Table(title="hermops verification")
    table.add_column("check")
    table.add_column("params")
    table.add_column("mode")
    table.add_column("residual", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("verdict")
    table.add_column("notes", overflow="fold")
    for report in reports:
        row = report_to_dict(report)
        style = _VERDICT_STYLE[report.verdict]
        verdict = row["verdict"] if report.required else f"{row['verdict']} (info)"
        table.add_row(
            row["check_id"],
            _params_cell(row["params"]),
            row["mode"],
            row["residual"],
            row["tolerance"],
            f"[{style}]{verdict}[/{style}]",
            escape(row["notes"]),
        )
    return table


def ordered_terms(p: Poly) -> list[tuple[int, int]]:
    """Monomials in graded order: total degree ascending, x power descending."""
    return sorted(p.coeffs, key=lambda mono: (mono[0] + mono[1], -mono[0]))


def poly_to_dict(kind: str, params: dict[str, Any], p: Poly) -> dict[str, Any]:
    """JSON-ready form of a generated polynomial with its terms in graded order."""
    return {
        "kind": kind,
        "params": dict(params),
        "terms": [
            {"xdeg": i, "ydeg": j, "coeff": format_scalar(p.coeffs[(i, j)])}
            for i, j in ordered_terms(p)
        ],
    }


def poly_to_json(kind: str, params: dict[str, Any], p: Poly) -> str:
    """Serialize a generated polynomial as deterministic JSON."""
    return json.dumps(poly_to_dict(kind, params, p), indent=2, sort_keys=True) + "\n"


def poly_to_csv(kind: str, params: dict[str, Any], p: Poly) -> str:
    """One "xdeg,ydeg,coeff" row per term, in graded order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["xdeg", "ydeg", "coeff"])
    for term in poly_to_dict(kind, params, p)["terms"]:
        writer.writerow([term["xdeg"], term["ydeg"], term["coeff"]])
    return buffer.getvalue()


def poly_table(kind: str, params: dict[str, Any], p: Poly) -> Table:
    """Rich table of a polynomial's monomials and coefficients."""
    table = Table(title=f"{kind} {_params_cell(params)}")
    table.add_column("monomial")
    table.add_column("coeff", justify="right")
    for term in poly_to_dict(kind, params, p)["terms"]:
        table.add_row(_monomial(term["xdeg"], term["ydeg"]), term["coeff"])
    return table


def _monomial(i: int, j: int) -> str:
    parts = [name if e == 1 else f"{name}^{e}" for name, e in (("x", i), ("y", j)) if e]
    return "*".join(parts) if parts else "1"


def render_table(table: Table, width: int = 120) -> str:
    """Plain-text rendering of a rich table."""
    console = Console(file=io.StringIO(), width=width, record=True, color_system=None)
    console.print(table)
    return console.export_text()
