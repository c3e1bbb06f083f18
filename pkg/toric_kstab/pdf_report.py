"""
PDF export of the analyze report.

Falls back to the text report when reportlab cannot be installed.
"""

import logging
from pathlib import Path

from .deps import ensure_reportlab
from .report import render_text

logger = logging.getLogger(__name__)


def _vertex_rows(report):
    def coord(q):
        return str(q["num"]) if q["den"] == 1 else f"{q['num']}/{q['den']}"
    return [[str(i + 1), coord(v[0]), coord(v[1])] for i, v in enumerate(report["vertices"])]


def _margin_rows(block):
    rows = [["Facet", "lambda", "(n+1)/lambda", "margin", ""]]
    for m in block["zhou_zhu"].get("margins", []):
        bound = m["bound"]
        bound_text = str(bound["num"]) if bound["den"] == 1 else f"{bound['num']}/{bound['den']}"
        rows.append([
            str(m["facet"]),
            str(m["level"]),
            bound_text,
            m["margin"]["decimal"],
            "ok" if m["sign"] > 0 else "VIOLATED",
        ])
    return rows


def generate_pdf_report(report, output_path, title=None):
    """Write an analyze report as PDF.

    Args:
        report: dict from report.analyze_report
        output_path: Path to save the PDF
        title: Title for the report

    Returns:
        Path to the generated file (PDF, or .txt on fallback)
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    title = title or f"K-stability report: {report['source']}"

    if not ensure_reportlab():
        logger.warning("reportlab not available, writing a text report instead")
        return generate_text_report(report, output_path.with_suffix('.txt'))

    from reportlab.lib import colors
    from reportlab.lib.pagesizes import letter
    from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
    from reportlab.lib.units import inch
    from reportlab.platypus import SimpleDocTemplate, Paragraph, Spacer, Table, TableStyle

    doc = SimpleDocTemplate(
        str(output_path),
        pagesize=letter,
        rightMargin=0.5*inch,
        leftMargin=0.5*inch,
        topMargin=0.5*inch,
        bottomMargin=0.5*inch
    )

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'ReportTitle',
        parent=styles['Heading1'],
        fontSize=20,
        spaceAfter=6,
        fontName='Helvetica-Bold',
        textColor=colors.HexColor('#1a1a1a'),
        alignment=1
    )
    section_style = ParagraphStyle(
        'SectionHeader',
        parent=styles['Heading2'],
        fontSize=12,
        spaceBefore=12,
        spaceAfter=6,
        fontName='Helvetica-Bold',
        textColor=colors.HexColor('#34495e')
    )
    body_style = ParagraphStyle('Body', parent=styles['Normal'], fontSize=9)

    table_style = TableStyle([
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, -1), 9),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.HexColor('#666666')),
        ('LINEBELOW', (0, 0), (-1, 0), 1, colors.HexColor('#cccccc')),
        ('FONTNAME', (0, 1), (-1, -1), 'Helvetica'),
        ('TOPPADDING', (0, 1), (-1, -1), 3),
        ('BOTTOMPADDING', (0, 1), (-1, -1), 3),
        ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
        ('LINEBELOW', (0, 1), (-1, -2), 0.5, colors.HexColor('#eeeeee')),
    ])

    story = [Paragraph(title, title_style), Spacer(1, 12)]

    story.append(Paragraph("Polygon", section_style))
    story.append(Paragraph(f"area = {report['area']['text']} = {report['area']['decimal']}", body_style))
    vertices = Table([["#", "x", "y"]] + _vertex_rows(report), colWidths=[0.5*inch, 1.2*inch, 1.2*inch])
    vertices.setStyle(table_style)
    story.append(vertices)

    for name, block in report["conventions"].items():
        story.append(Paragraph(f"Convention: {name}", section_style))
        story.append(Paragraph(f"S0 = {block['s0_text']} = {block['s0_decimal']}... (truncated; rounded {block['s0_rounded']})", body_style))
        zz = block["zhou_zhu"]
        if "error" in zz:
            story.append(Paragraph(f"Zhou-Zhu not applicable: {zz['error']}", body_style))
            continue
        story.append(Paragraph(f"Zhou-Zhu (n = {zz['n']}): {zz['verdict']}", body_style))
        story.append(Spacer(1, 4))
        margins = Table(_margin_rows(block), colWidths=[0.6*inch, 0.7*inch, 1.1*inch, 1.4*inch, 0.9*inch])
        margins.setStyle(table_style)
        story.append(margins)

    if report.get("expectations"):
        story.append(Paragraph("Expected (not asserted)", section_style))
        rows = [["Quantity", "Value", "Source"]] + [
            [e["label"], e["value"], e["provenance"]] for e in report["expectations"]
        ]
        expected = Table(rows, colWidths=[1.8*inch, 3.6*inch, 0.9*inch])
        expected.setStyle(table_style)
        story.append(expected)

    for warning in report.get("warnings", []):
        story.append(Spacer(1, 12))
        story.append(Paragraph(f"Note: {warning}", body_style))

    try:
        doc.build(story)
        return output_path
    except Exception as e:
        logger.warning("error generating PDF (%s), writing a text report instead", e)
        return generate_text_report(report, output_path.with_suffix('.txt'))


def generate_text_report(report, output_path):
    """Write the text rendering of a report.

    Returns:
        Path to the generated file
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(render_text(report))
    return output_path
