"""The ``quipu`` command line for spectral radii and minimizer searches over
trees of given order and diameter.

Every subcommand runs inside a workbench built from the defaults,
``QUIPU_SETTINGS`` and the global options, and writes its report as JSON,
CSV or plain text. Quipu exceptions become exit codes 1 to 3.
"""
# Standard Library Imports
import dataclasses
import functools
import logging
import os
import re

from dataclasses import dataclass

# Quipu
import click

from mpmath import mp, mpf
from quipu import __version__
from quipu.core.charpoly import charpoly_det_oracle, charpoly_tree
from quipu.core.graph import from_kvector, looks_like_kvector, parse_kvector, read_edge_list
from quipu.core.spectral import rho_tree, solve_limit_equation
from quipu.core.validators import ChoiceValidator, MinValueValidator
from quipu.exceptions import CheckFailure, ParseError, QuipuException, ToleranceUnreachableError
from quipu.globals import get_setting
from quipu.search import (
    brute_min,
    family_dominance,
    family_min,
    remark3_diagnostic,
    reproduction_table,
)
from quipu.serializer import (
    CertificateReportSchema,
    ClosedFormCheckSchema,
    DominanceReportSchema,
    LimitTableSchema,
    MinimizerReportSchema,
    PolynomialSchema,
    PositivityRowSchema,
    ProfileRowSchema,
    RadiusBoundsSchema,
    Remark3ReportSchema,
    ReproductionRowSchema,
    SpectralResultSchema,
    minimizer_row,
    render,
    to_csv,
    to_json,
    to_plain,
)
from quipu.utils import ConvergenceKind, FamilyId, LimitKind, Scope, as_mpf
from quipu.verify import (
    asymptotic_profile,
    certify_minimizer,
    closed_form_checks,
    limit_convergence,
    pq_positivity_scan,
    rho_bounds,
)
from quipu.workbench import default_workbench

logger = logging.getLogger("quipu.cli")

FORMATS = ("json", "csv", "plain")


@dataclass(frozen=True)
class CliConfig:
    """The command line view of the workbench settings"""

    precision: int
    tol: str
    format: str
    tree_cap: int

    def validate(self):
        MinValueValidator(30, "precision")(self.precision)
        ChoiceValidator(FORMATS, "format")(self.format)
        MinValueValidator(1, "tree cap")(self.tree_cap)
        with mp.workdps(self.precision):
            if mpf(self.tol) < mpf(10) ** (-(self.precision - 20)):
                raise ToleranceUnreachableError(
                    f"tolerance {self.tol} is below 1e-{self.precision - 20} "
                    f"at {self.precision} digits"
                )
        return self

    @classmethod
    def from_config(cls, config):
        return cls(
            precision=int(config["PRECISION"]),
            tol=str(config["TOL"]),
            format=config["FORMAT"],
            tree_cap=int(config["TREE_CAP"]),
        )


def handle_errors(func):
    """Report Quipu exceptions on stderr and exit with their code"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except QuipuException as exc:
            logger.error(str(exc))
            click.echo(str(exc), err=True)
            raise click.exceptions.Exit(exc.exit_code)

    return wrapper


def _emit(text):
    click.echo(text, nl=False)


def _format():
    return get_setting("FORMAT")


def _read_tree(text):
    """A tree from a k-vector string or from the path of an edge-list file"""
    if looks_like_kvector(text):
        return from_kvector(parse_kvector(text))
    if not os.path.isfile(text):
        raise ParseError(f"{text!r} is neither a k-vector nor an edge-list file")
    with open(text, encoding="utf-8") as handle:
        return read_edge_list(handle.read())


def _parse_range(text):
    """``29..44``, ``29-44`` or a comma-separated list"""
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-)\s*(\d+)\s*", text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        return list(range(low, high + 1))
    try:
        return [int(item) for item in text.split(",")]
    except ValueError:
        raise ParseError(f"not a range: {text!r}")


def _install_log_handler():
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("quipu")
    root.addHandler(handler)
    root.setLevel(logging.DEBUG)


@click.group(invoke_without_command=True)
@click.version_option(version=__version__)
@click.option("--precision", type=int, default=None, help="Working precision in decimal digits.")
@click.option("--tol", default=None, help="Width of root enclosures, e.g. 1e-40.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output format.")
@click.option("--cap", type=int, default=None, help="Largest order for exhaustive tree search.")
@click.option("--full", is_flag=True, default=False, help="Print scalars at full precision.")
@click.option("--workers", type=int, default=None, help="Worker processes for family searches.")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log progress to stderr.")
@click.pass_context
@handle_errors
def main(ctx, precision, tol, fmt, cap, full, workers, verbose):
    """Minimal spectral radius of trees with given order and diameter"""
    if verbose:
        _install_log_handler()

    workbench = default_workbench()
    overrides = {
        "PRECISION": precision,
        "TOL": tol,
        "FORMAT": fmt,
        "TREE_CAP": cap,
        "SEARCH_WORKERS": workers,
    }
    workbench.config.from_mapping({key: value for key, value in overrides.items() if value is not None})
    if full:
        workbench.config["FULL"] = True
    CliConfig.from_config(workbench.config).validate()

    ctx.obj = workbench
    ctx.with_resource(workbench.workbench_context())

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command()
@click.argument("source")
@click.option("--oracle", is_flag=True, default=False, help="Use the determinant oracle.")
@handle_errors
def charpoly(source, oracle):
    """Characteristic polynomial of a tree (k-vector or edge-list file)"""
    t = _read_tree(source)
    poly = charpoly_det_oracle(t) if oracle else charpoly_tree(t)
    _emit(render(PolynomialSchema(), poly, _format()))


@main.command()
@click.argument("source")
@click.option("--tol", default=None, help="Enclosure width for this solve.")
@handle_errors
def rho(source, tol):
    """Spectral radius of a tree (k-vector or edge-list file)"""
    result = rho_tree(_read_tree(source), as_mpf(tol) if tol else None)
    _emit(render(SpectralResultSchema(), result, _format()))


def _family_option(func):
    return click.option(
        "--family",
        type=click.Choice([family.value for family in FamilyId]),
        default=FamilyId.FamP.value,
        help="P, P1 (primed) or P2 (double primed).",
    )(func)


def _emit_minimizer(report):
    _emit(
        render(
            MinimizerReportSchema(),
            report,
            _format(),
            csv_rows=lambda obj: [minimizer_row(obj)],
        )
    )


@main.command("family-min")
@click.argument("n", type=int)
@click.argument("e", type=int)
@_family_option
@click.option("--all-ties", is_flag=True, default=False, help="List every tied minimizer.")
@handle_errors
def family_min_command(n, e, family, all_ties):
    """Minimizers over one candidate family"""
    report = family_min(n, e, FamilyId.from_code(family))
    if not all_ties:
        report = dataclasses.replace(
            report,
            argmin=report.argmin[:1],
            labels=report.labels[:1],
            witnesses=report.witnesses[:1],
        )
    _emit_minimizer(report)


@main.command("brute-min")
@click.argument("n", type=int)
@click.argument("d", type=int)
@click.option("--all-graphs", is_flag=True, default=False, help="Search every connected graph.")
@handle_errors
def brute_min_command(n, d, all_graphs):
    """Minimizers over all trees (or small graphs) of order N and diameter D"""
    scope = Scope.AllGraphsSmall if all_graphs else Scope.AllTrees
    _emit_minimizer(brute_min(n, d, scope=scope))


@main.command()
@click.argument("n", type=int)
@click.argument("e", type=int)
@click.option("--kv", "kv_text", default=None, help="Certify this k-vector instead of the minimizer.")
@handle_errors
def verify(n, e, kv_text):
    """Certify the P-family minimizers at (N, E)"""
    if kv_text is not None:
        vectors = [parse_kvector(kv_text)]
    else:
        vectors = list(family_min(n, e, FamilyId.FamP).argmin)

    reports = [certify_minimizer(n, e, kv) for kv in vectors]
    certificates = CertificateReportSchema().dump(reports, many=True)
    fmt = _format()
    if fmt == "csv":
        rows = [dict(kv=dumped["kv"], **check) for dumped in certificates for check in dumped["checks"]]
        _emit(to_csv(rows))
    else:
        data = {
            "certificates": certificates,
            "remark3": Remark3ReportSchema().dump(
                [remark3_diagnostic(kv) for kv in vectors], many=True
            ),
            "bounds": RadiusBoundsSchema().dump(rho_bounds(n, e)) if e >= 6 else None,
        }
        _emit(to_json(data) if fmt == "json" else to_plain(data))

    failed = [report for report in reports if not report.passed]
    if failed:
        raise CheckFailure(f"{len(failed)} of {len(reports)} certificates failed")


@main.command()
@click.argument("kind", type=click.Choice([k.value for k in LimitKind] + [k.value for k in ConvergenceKind]))
@click.argument("k", type=int)
@click.option("--sizes", default="10,20,40", help="Sizes for a convergence table.")
@handle_errors
def limits(kind, k, sizes):
    """Limit radius KIND_k, or a convergence table towards it"""
    fmt = _format()
    if kind in {limit.value for limit in LimitKind}:
        _emit(render(SpectralResultSchema(), solve_limit_equation(LimitKind(kind), k), fmt))
        return

    table = limit_convergence(ConvergenceKind(kind), k, _parse_range(sizes))
    _emit(render(LimitTableSchema(), table, fmt, csv_rows=lambda obj: LimitTableSchema().dump(obj)["rows"]))
    if not table.monotone:
        raise CheckFailure(f"{kind} k={k}: differences are not positive and decreasing")


@main.command()
@click.argument("e", type=int)
@click.argument("n_range")
@handle_errors
def table(e, n_range):
    """Predicted against found minimizers for each n in N_RANGE"""
    rows = reproduction_table(e, _parse_range(n_range))
    _emit(render(ReproductionRowSchema(), rows, _format(), many=True))

    mismatches = [row for row in rows if row.asymptotic and row.predicted and not row.match]
    if mismatches:
        raise CheckFailure(f"{len(mismatches)} rows beyond the stabilization point do not match")


@main.command()
@click.argument("e", type=int)
@click.argument("n_range")
@handle_errors
def profile(e, n_range):
    """Excess of the minimal radius over √(2+√5) for each n in N_RANGE"""
    rows = asymptotic_profile(e, _parse_range(n_range))
    _emit(render(ProfileRowSchema(), rows, _format(), many=True))


@main.command()
@click.argument("n", type=int)
@click.argument("e", type=int)
@handle_errors
def dominance(n, e):
    """Compare the minimum of the P family with the other two families"""
    report = family_dominance(n, e)
    _emit(
        render(
            DominanceReportSchema(),
            report,
            _format(),
            csv_rows=lambda obj: [minimizer_row(r) for r in obj.reports.values()],
        )
    )
    if report.meets_bound and not report.dominates:
        raise CheckFailure(f"the P family does not dominate at n={n}, e={e}")


@main.command()
@click.argument("kv_text")
@click.argument("lam")
@handle_errors
def scan(kv_text, lam):
    """Prefix and suffix (p, q) pairs of a P-family tree at λ = LAM"""
    rows = pq_positivity_scan(parse_kvector(kv_text), as_mpf(lam))
    _emit(render(PositivityRowSchema(), rows, _format(), many=True))


@main.command("closed-forms")
@click.argument("lam")
@click.option("--k", type=int, default=5, help="Interior count used by the identities.")
@handle_errors
def closed_forms(lam, k):
    """Closed-form characteristic polynomial identities at λ = LAM"""
    checks = closed_form_checks(as_mpf(lam), k)
    _emit(render(ClosedFormCheckSchema(), checks, _format(), many=True))

    limit = mpf(10) ** (-(mp.dps - 20))
    failed = [check for check in checks if check.residual > limit * max(1, abs(check.direct))]
    if failed:
        raise CheckFailure(f"{len(failed)} closed forms disagree with the transfer product")


__all__ = ("main", "CliConfig")
