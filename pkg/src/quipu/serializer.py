"""Report schemas and the JSON, CSV and plain emitters"""
# Standard Library Imports
import csv
import io
import json
import logging

# Quipu
from marshmallow import Schema, fields
from mpmath import mp
from quipu.core.graph import KVector, format_kvector
from quipu.globals import get_setting
from quipu.utils import format_scalar

logger = logging.getLogger("quipu.serializer")


def _digits():
    if get_setting("FULL"):
        return mp.dps
    return min(int(get_setting("PRINT_DIGITS")), mp.dps)


class Scalar(fields.Field):
    """mpmath, Fraction or int scalars as decimal strings"""

    def _serialize(self, value, attr, obj, **kwargs):
        return format_scalar(value, _digits())


class Identifier(fields.Field):
    """A k-vector in its textual form, anything else as ``str``"""

    def _serialize(self, value, attr, obj, **kwargs):
        if isinstance(value, KVector):
            return format_kvector(value)
        return str(value)


class EnumValue(fields.Field):
    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else value.value


class PolynomialSchema(Schema):
    degree = fields.Integer()
    coefficients = fields.Function(lambda poly: poly.to_json())
    text = fields.Function(str)


class SpectralResultSchema(Schema):
    value = Scalar()
    lo = Scalar()
    hi = Scalar()
    residual = Scalar()
    iterations = fields.Integer()


class MinimizerReportSchema(Schema):
    n = fields.Integer()
    e = fields.Integer()
    D = fields.Integer()
    scope = EnumValue()
    argmin = fields.List(Identifier())
    labels = fields.List(fields.String())
    rho = fields.Nested(SpectralResultSchema)
    runner_up_gap = Scalar()


class CheckRowSchema(Schema):
    index = fields.Integer()
    check = fields.String()
    satisfied = fields.Boolean()
    slack = Scalar()


class CertificateReportSchema(Schema):
    n = fields.Integer()
    e = fields.Integer()
    kv = Identifier()
    rho = Scalar()
    s = Scalar()
    k_bar = Scalar()
    d2_at_rho = Scalar()
    lower = Scalar()
    upper = Scalar()
    c_bar = Scalar()
    tolerance = Scalar()
    passed = fields.Boolean()
    checks = fields.Nested(CheckRowSchema, many=True)


class Remark3RowSchema(Schema):
    index = fields.Integer()
    k = fields.Integer()
    bound = fields.Integer()
    satisfied = fields.Boolean()


class Remark3ReportSchema(Schema):
    kv = Identifier()
    applies = fields.Boolean()
    k_bar = Scalar()
    satisfied = fields.Boolean()
    rows = fields.Nested(Remark3RowSchema, many=True)


class LimitRowSchema(Schema):
    size = fields.Integer()
    rho = Scalar()
    difference = Scalar()
    companion = Scalar()


class LimitTableSchema(Schema):
    kind = EnumValue()
    k = fields.Integer()
    limit = Scalar()
    monotone = fields.Boolean()
    rows = fields.Nested(LimitRowSchema, many=True)


class ReproductionRowSchema(Schema):
    n = fields.Integer()
    e = fields.Integer()
    k = fields.Integer()
    residue = fields.Integer()
    predicted = fields.List(Identifier())
    found = fields.List(Identifier())
    rho = Scalar()
    gap = Scalar()
    match = fields.Boolean()
    asymptotic = fields.Boolean()


class PositivityRowSchema(Schema):
    side = fields.String()
    index = fields.Integer()
    p = Scalar()
    q = Scalar()


class ClosedFormCheckSchema(Schema):
    name = fields.String()
    lam = Scalar()
    direct = Scalar()
    closed = Scalar()
    residual = Scalar()


class ProfileRowSchema(Schema):
    n = fields.Integer()
    rho = Scalar()
    excess = Scalar()


class RadiusBoundsSchema(Schema):
    n = fields.Integer()
    e = fields.Integer()
    k = fields.Integer(allow_none=True)
    lower = Scalar()
    upper = Scalar()


class DominanceReportSchema(Schema):
    n = fields.Integer()
    e = fields.Integer()
    bound = fields.Integer()
    meets_bound = fields.Boolean()
    dominates = fields.Boolean()
    reports = fields.Method("dump_reports")

    def dump_reports(self, obj):
        schema = MinimizerReportSchema()
        return {family.value: schema.dump(report) for family, report in obj.reports.items()}


def minimizer_row(report):
    """The flat CSV row of a minimizer report"""
    data = MinimizerReportSchema().dump(report)
    return {
        "n": data["n"],
        "e": data["e"],
        "D": data["D"],
        "scope": data["scope"],
        "argmin": ";".join(data["argmin"]),
        "rho": data["rho"]["value"],
        "gap": data["runner_up_gap"],
    }


def _flatten(value):
    if isinstance(value, list):
        return ";".join(str(item) for item in value)
    if value is None:
        return ""
    return value


def to_csv(rows, columns=None):
    """CSV text of a list of flat dicts"""
    rows = list(rows)
    columns = list(columns or (rows[0].keys() if rows else ()))
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _flatten(row.get(key)) for key in columns})
    return buffer.getvalue()


def to_json(data):
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def to_plain(data, indent=0):
    """Indented ``key: value`` lines"""
    pad = "  " * indent
    if isinstance(data, list):
        lines = []
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(to_plain(item, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {item}")
        return "\n".join(lines) + "\n"

    lines = []
    for key, value in data.items():
        if isinstance(value, (dict, list)) and value:
            lines.append(f"{pad}{key}:")
            lines.append(to_plain(value, indent + 1).rstrip("\n"))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines) + "\n"


def render(schema, obj, fmt, many=False, csv_rows=None):
    """Dump ``obj`` through ``schema`` and format it.

    ``csv_rows`` maps ``obj`` to flat rows for CSV; without it the dumped
    data is written as rows.
    """
    data = schema.dump(obj, many=many)
    if fmt == "json":
        return to_json(data)
    if fmt == "plain":
        return to_plain(data)
    rows = csv_rows(obj) if csv_rows else (data if many else [data])
    return to_csv(rows)
