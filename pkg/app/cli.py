"""
matfn command line: reads matrix files, dispatches to the router and
prints a Report.

Exit codes: 0 success, 1 usage or IO error, 2 existence or precondition
failure, 3 numerical failure.
"""

import sys
from typing import List, Optional

import click

from app.models.errors import InvalidMatrix
from app.models.pydantic.models import MatfnRequest, ResidualKind, Tolerances
from app.utils.matrix_io import read_matrix, write_matrix
from app.utils.report_formatter import render
from app.utils.service_factory import ServiceFactory

USAGE_ERROR = 1


def common_options(f):
    f = click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
                     help="Also write the result matrix here (.json for JSON).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                     show_default=True, help="Report format.")(f)
    f = click.option("--tol-residual", type=click.FloatRange(min=0), default=None,
                     help="Acceptance residual.")(f)
    f = click.option("--tol-rank", type=click.FloatRange(min=0), default=None,
                     help="Absolute zero threshold for rank decisions.")(f)
    f = click.option("--tol-cluster", type=click.FloatRange(min=0), default=None,
                     help="Radius within which eigenvalues are identified.")(f)
    return f


branch_option = click.option("--branch", type=click.Choice(["principal", "any"]), default="principal",
                             show_default=True, help="principal branch, or any real solution.")
matrix_argument = click.argument("matrix_file", type=click.Path(dir_okay=False))


def _tolerances(tol_cluster, tol_rank, tol_residual) -> Tolerances:
    given = {"cluster_tol": tol_cluster, "rank_tol": tol_rank, "residual_tol": tol_residual}
    return Tolerances(**{key: value for key, value in given.items() if value is not None})


def _execute(ctx: click.Context, command: str, matrix_file: str, tol_cluster, tol_rank, tol_residual,
             fmt: str, output: Optional[str], candidate_file: Optional[str] = None, **fields) -> None:
    try:
        A = read_matrix(matrix_file)
        if candidate_file is not None:
            fields["candidate"] = read_matrix(candidate_file)
    except InvalidMatrix as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(e.exit_code)

    request = MatfnRequest(command=command, matrix=A,
                           tolerances=_tolerances(tol_cluster, tol_rank, tol_residual), **fields)
    report = ctx.obj.dispatch(request)
    click.echo(render(report, fmt))
    if report.message:
        click.echo(f"error: {report.message}", err=True)
    if output and report.exit_code == 0 and report.matrix is not None:
        try:
            write_matrix(output, report.matrix)
        except InvalidMatrix as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(e.exit_code)
    ctx.exit(report.exit_code)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Override the configured log level.")
@click.pass_context
def cli(ctx, log_level):
    """Real logarithms, square roots and p-th roots of real matrices."""
    ctx.obj = ServiceFactory.create_matfn_service_with_config(log_level)


@cli.command()
@matrix_argument
@common_options
@click.pass_context
def eig(ctx, matrix_file, **opts):
    """Clustered eigenvalues with multiplicities."""
    _execute(ctx, "eig", matrix_file, **opts)


@cli.command()
@matrix_argument
@common_options
@click.pass_context
def jordan(ctx, matrix_file, **opts):
    """Complex Jordan block list."""
    _execute(ctx, "jordan", matrix_file, **opts)


@cli.command("real-jordan")
@matrix_argument
@common_options
@click.pass_context
def real_jordan(ctx, matrix_file, **opts):
    """Real Jordan form: block list and the real transform P."""
    _execute(ctx, "real-jordan", matrix_file, **opts)


@cli.command("check-log")
@matrix_argument
@common_options
@click.pass_context
def check_log(ctx, matrix_file, **opts):
    """Does a real logarithm exist? Exit 2 when it does not."""
    _execute(ctx, "check-log", matrix_file, **opts)


@cli.command("check-sqrt")
@matrix_argument
@common_options
@click.pass_context
def check_sqrt(ctx, matrix_file, **opts):
    """Does a real square root exist? Exit 2 when it does not."""
    _execute(ctx, "check-sqrt", matrix_file, **opts)


@cli.command()
@matrix_argument
@branch_option
@common_options
@click.pass_context
def log(ctx, matrix_file, branch, **opts):
    """Real logarithm."""
    _execute(ctx, "log", matrix_file, branch=branch, **opts)


@cli.command()
@matrix_argument
@branch_option
@common_options
@click.pass_context
def sqrt(ctx, matrix_file, branch, **opts):
    """Real square root."""
    _execute(ctx, "sqrt", matrix_file, branch=branch, **opts)


@cli.command()
@matrix_argument
@click.option("-p", "p", type=click.IntRange(min=2), required=True, help="Root order.")
@common_options
@click.pass_context
def root(ctx, matrix_file, p, **opts):
    """Principal p-th root."""
    _execute(ctx, "root", matrix_file, p=p, **opts)


@cli.command()
@matrix_argument
@common_options
@click.pass_context
def exp(ctx, matrix_file, **opts):
    """Matrix exponential."""
    _execute(ctx, "exp", matrix_file, **opts)


@cli.command("iss-log")
@matrix_argument
@common_options
@click.pass_context
def iss_log(ctx, matrix_file, **opts):
    """Principal logarithm by inverse scaling and squaring."""
    _execute(ctx, "iss-log", matrix_file, **opts)


@cli.command()
@matrix_argument
@click.argument("candidate_file", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice([k.value for k in ResidualKind]), default="log", show_default=True)
@click.option("-p", "p", type=click.IntRange(min=2), default=None, help="Root order for --kind root.")
@common_options
@click.pass_context
def verify(ctx, matrix_file, candidate_file, kind, p, **opts):
    """Residual of CANDIDATE_FILE as a logarithm or root of MATRIX_FILE."""
    if kind == ResidualKind.ROOT.value and p is None:
        raise click.UsageError("--kind root needs -p")
    _execute(ctx, "verify", matrix_file, candidate_file=candidate_file, kind=ResidualKind(kind), p=p, **opts)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line and return its exit code."""
    try:
        rv = cli.main(args=argv, prog_name="matfn", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return USAGE_ERROR
    except click.Abort:
        click.echo("Aborted!", err=True)
        return USAGE_ERROR
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
