"""
Renders a Report as text or JSON.

Text layout: a header line `matfn <subcommand> n=<n>`, the matrix rows,
`residual=<value>`, then key=value lines for branch, details and verdict,
and one "(eigenvalue, size r, count c)" line per group of identical blocks.
"""

from typing import List

from app.models.pydantic.models import BlockCount, Report
from app.utils.matrix_io import format_matrix, format_value


def format_scalar(real: float, imag: float) -> str:
    if imag == 0:
        return format_value(real)
    return f"{format_value(real)}{'+' if imag > 0 else '-'}{format_value(abs(imag))}i"


def format_block(block: BlockCount) -> str:
    return f"({format_scalar(block.real, block.imag)}, size {block.size}, count {block.count})"


def render_text(report: Report) -> str:
    lines: List[str] = [f"matfn {report.command} n={report.n}"]
    if report.matrix is not None:
        lines.append(format_matrix(report.matrix))
    if report.residual is not None:
        lines.append(f"residual={format_value(report.residual)}")
    if report.branch is not None:
        lines.append(f"branch={report.branch}")
    if report.domain_ok is not None:
        lines.append(f"domain_ok={str(report.domain_ok).lower()}")
    for key, value in report.details.items():
        lines.append(f"{key}={format_value(value) if isinstance(value, float) else value}")
    for e in report.eigenvalues:
        lines.append(f"eigenvalue={format_scalar(e.real, e.imag)} multiplicity={e.algebraic_multiplicity}")
    lines.extend(format_block(block) for block in report.blocks)
    if report.verdict is not None:
        verdict = report.verdict
        lines.append(f"verdict={'exists' if verdict.exists else 'none'}")
        lines.append(f"verdict.invertible={str(verdict.invertible).lower()}")
        lines.extend(f"verdict.offending={block.describe()}" for block in verdict.offending)
        if verdict.caveat:
            lines.append(f"verdict.caveat={verdict.caveat}")
    lines.extend(f"warning={w}" for w in report.warnings)
    if report.exit_code == 0:
        lines.append(f"time_ms={report.timing_ms:.3f}")
    return "\n".join(lines)


def render_json(report: Report) -> str:
    return report.model_dump_json(exclude_none=True)


def render(report: Report, fmt: str = "text") -> str:
    return render_json(report) if fmt == "json" else render_text(report)
