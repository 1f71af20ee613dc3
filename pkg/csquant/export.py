"""Deterministic JSON/CSV serialization and xlsx/pdf verification reports."""

import csv
import json
import logging
import math
import os
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, TextIO

import numpy as np
from pydantic import BaseModel

from csquant.config import get_settings
from csquant.fuzzy import CoefficientTensor
from csquant.models import CheckStatus, ComplexValue, MatrixPayload, VerificationReport
from csquant.operators import HermitianOperator

logger = logging.getLogger(__name__)

REPORT_FILENAME = "verification_report.json"
EXPORT_SUFFIXES = (".xlsx", ".pdf")
REPORT_TITLE = "csquant - Coherent-State Quantization Verification Report"


def round_float(value: float) -> Any:
    """Rounded through %.12e, emitted as the shortest float for that value; non-finite values become strings"""
    value = float(value)
    if not math.isfinite(value):
        return str(value)
    rounded = float(f"{value:.12e}")
    return 0.0 if rounded == 0 else rounded


def to_jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return {name: to_jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, HermitianOperator):
        return to_jsonable(value.to_payload())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        if value.ndim == 2 and value.shape[0] == value.shape[1]:
            return to_jsonable(MatrixPayload.from_matrix(value))
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return to_jsonable(ComplexValue.of(value))
    if isinstance(value, (float, np.floating)):
        return round_float(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2)


def tensor_payload(tensor: CoefficientTensor) -> Dict[str, Any]:
    """Nested l -> m -> {re, im} with rows and columns in ascending label order"""
    nested: Dict[str, Dict[str, Dict[str, List[List[float]]]]] = {}
    for ell, m in tensor.indices():
        block = tensor.get(ell, m)
        nested.setdefault(str(ell), {})[str(m)] = {"re": block.real.tolist(), "im": block.imag.tolist()}
    labels = [str(Fraction(2 * k - tensor.L, 2)) for k in range(tensor.L + 1)]
    return {"L": tensor.L, "ell_max": tensor.ell_max, "labels": labels, "tensor": nested}


def write_tensor_csv(tensor: CoefficientTensor, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["ell", "m", "i", "j", "re", "im"])
    for ell, m, i, j, re, im in tensor.rows():
        writer.writerow([ell, m, str(i), str(j), f"{re:.12e}", f"{im:.12e}"])


def write_tensor(tensor: CoefficientTensor, path: str) -> None:
    """CSV when the path ends in .csv, JSON otherwise"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as f:
        if path.lower().endswith(".csv"):
            write_tensor_csv(tensor, f)
        else:
            f.write(dumps(tensor_payload(tensor)))
            f.write("\n")
    logger.info("Wrote coefficient tensor L=%d to %s", tensor.L, path)


def save_verification_report(report: VerificationReport) -> str:
    """Write the JSON report into the artifacts directory"""
    directory = get_settings().artifacts_dir
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, REPORT_FILENAME)
    with open(path, "w") as f:
        f.write(dumps(report))
        f.write("\n")
    return path


def _counts(report: VerificationReport) -> List[List[str]]:
    return [["Status", "Count"], ["Passed", str(report.passed)], ["Failed", str(report.failed)]]


def export_pdf(report: VerificationReport, path: str) -> None:
    from reportlab.lib import colors
    from reportlab.lib.pagesizes import letter
    from reportlab.lib.styles import getSampleStyleSheet
    from reportlab.lib.units import inch
    from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

    doc = SimpleDocTemplate(path, pagesize=letter)
    styles = getSampleStyleSheet()
    story = [Paragraph(REPORT_TITLE, styles["Title"]), Spacer(1, 12)]

    summary_table = Table(_counts(report))
    summary_table.setStyle(TableStyle([
        ("BACKGROUND", (0, 0), (-1, 0), colors.grey),
        ("TEXTCOLOR", (0, 0), (-1, 0), colors.whitesmoke),
        ("ALIGN", (0, 0), (-1, -1), "CENTER"),
        ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
        ("BOTTOMPADDING", (0, 0), (-1, 0), 12),
        ("BACKGROUND", (0, 1), (-1, -1), colors.beige),
        ("GRID", (0, 0), (-1, -1), 1, colors.black),
    ]))
    story += [summary_table, Spacer(1, 12)]

    for category in dict.fromkeys(r.category for r in report.records):
        story.append(Paragraph(category, styles["Heading2"]))
        rows = [["Check", "Status", "Residual", "Tolerance"]]
        for r in report.records:
            if r.category == category:
                rows.append([
                    Paragraph(r.check, styles["BodyText"]),
                    r.status.value,
                    f"{r.residual:.3e}",
                    f"{r.comparison.value} {r.tolerance:.1e}",
                ])
        table = Table(rows, colWidths=[3.4 * inch, 0.7 * inch, 1.1 * inch, 1.1 * inch])
        style = [
            ("BACKGROUND", (0, 0), (-1, 0), colors.lightgrey),
            ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
            ("GRID", (0, 0), (-1, -1), 1, colors.black),
            ("VALIGN", (0, 0), (-1, -1), "TOP"),
            ("FONTSIZE", (0, 0), (-1, -1), 8),
        ]
        for row_index, row in enumerate(rows[1:], start=1):
            if row[1] == CheckStatus.FAIL.value:
                style.append(("TEXTCOLOR", (1, row_index), (1, row_index), colors.red))
        table.setStyle(TableStyle(style))
        story += [table, Spacer(1, 12)]

    doc.build(story)


def export_xlsx(report: VerificationReport, path: str) -> None:
    import xlsxwriter

    workbook = xlsxwriter.Workbook(path)
    summary_sheet = workbook.add_worksheet("Summary")
    summary_sheet.write(0, 0, REPORT_TITLE)
    summary_sheet.write(2, 0, "Status")
    summary_sheet.write(2, 1, "Count")
    summary_sheet.write(3, 0, "Passed")
    summary_sheet.write(3, 1, report.passed)
    summary_sheet.write(4, 0, "Failed")
    summary_sheet.write(4, 1, report.failed)

    details_sheet = workbook.add_worksheet("Details")
    for col, header in enumerate(["Category", "Check", "Status", "Residual", "Comparison", "Tolerance", "Details"]):
        details_sheet.write(0, col, header)
    for row, r in enumerate(report.records, start=1):
        details_sheet.write(row, 0, r.category)
        details_sheet.write(row, 1, r.check)
        details_sheet.write(row, 2, r.status.value)
        if math.isfinite(r.residual):
            details_sheet.write_number(row, 3, r.residual)
        else:
            details_sheet.write_string(row, 3, str(r.residual))
        details_sheet.write(row, 4, r.comparison.value)
        details_sheet.write_number(row, 5, r.tolerance)
        details_sheet.write(row, 6, r.details or "")
    workbook.close()


def export_report(report: VerificationReport, path: str) -> None:
    """xlsx or pdf by suffix"""
    suffix = os.path.splitext(path)[1].lower()
    if suffix not in EXPORT_SUFFIXES:
        raise ValueError(f"Unsupported export format {suffix!r}. Use .pdf or .xlsx")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    if suffix == ".pdf":
        export_pdf(report, path)
    else:
        export_xlsx(report, path)
    logger.info("Exported verification report to %s", path)
