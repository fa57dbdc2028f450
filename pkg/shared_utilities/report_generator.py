"""
Trace Report Generation
=======================

Turns normalization traces and expanded trees into pandas record streams,
writes and reloads line-delimited JSON trace files, and produces PDF audit
summaries for sharing.
"""

import logging
from datetime import datetime
from pathlib import Path

import pandas as pd
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer

from bi_notation.reduction import Trace, TraceStep
from bi_notation.notation import tree_records
from bi_notation.sexpr import parse_derivation, render

logger = logging.getLogger(__name__)

TRACE_COLUMNS = [
    "step",
    "path",
    "clause",
    "label",
    "sequent",
    "degree",
    "params",
    "passed",
    "budget_exhausted",
    "before",
    "after",
]


def parse_path(text):
    """Inverse of format_path"""
    if text in ("", "root"):
        return ()
    return tuple(int(part) if part.isdigit() else part for part in str(text).split("."))


class TraceReportGenerator:
    """Generates tabular and PDF reports for reduction traces"""

    def __init__(self):
        self.styles = getSampleStyleSheet()
        self.title_style = ParagraphStyle(
            "TraceTitle",
            parent=self.styles["Heading1"],
            fontSize=20,
            spaceAfter=20,
            textColor="#1f77b4",
        )

    def trace_frame(self, trace: Trace, verdict=None) -> pd.DataFrame:
        """
        One row per reduction step

        Args:
            trace: Trace returned by normalize
            verdict: Optional AuditVerdict filling the passed column

        Returns:
            pandas.DataFrame with TRACE_COLUMNS
        """
        rows = trace.records(verdict)
        for row, step in zip(rows, trace.steps):
            row["budget_exhausted"] = trace.budget_exhausted
            row["before"] = render(step.before, canonical=False)
            row["after"] = render(step.after, canonical=False)
        return pd.DataFrame(rows, columns=TRACE_COLUMNS)

    def tree_frame(self, view) -> pd.DataFrame:
        return pd.DataFrame(tree_records(view), columns=["path", "depth", "label", "sequent", "truncated"])

    def write_trace(self, trace: Trace, verdict, filename):
        frame = self.trace_frame(trace, verdict)
        path = Path(filename)
        if frame.empty:
            path.write_text("")
        else:
            frame.to_json(path, orient="records", lines=True, force_ascii=False)
        logger.info("wrote %d trace records to %s", len(frame), path)
        return str(path)

    def read_trace(self, filename) -> pd.DataFrame:
        path = Path(filename)
        if path.stat().st_size == 0:
            return pd.DataFrame(columns=TRACE_COLUMNS)
        return pd.read_json(path, orient="records", lines=True, dtype=False, convert_dates=False)

    def load_trace(self, filename) -> Trace:
        """Rebuild a Trace from a trace file; terms are parsed without validation"""
        frame = self.read_trace(filename)
        steps = [
            TraceStep(
                int(row["step"]),
                parse_path(row["path"]),
                row["clause"],
                row["label"],
                parse_derivation(row["before"], check=False),
                parse_derivation(row["after"], check=False),
                tuple(row["params"] or ()),
            )
            for _, row in frame.iterrows()
        ]
        exhausted = bool(frame["budget_exhausted"].any()) if not frame.empty else False
        initial = steps[0].before if steps else None
        final = steps[-1].after if steps else None
        return Trace(initial, steps, final, exhausted)

    def summary(self, frame: pd.DataFrame) -> dict:
        """Headline figures of a trace frame"""
        if frame.empty:
            return {"steps": 0, "clauses": {}, "max_depth": 0, "failed_steps": 0}
        depths = frame["path"].map(lambda text: len(parse_path(text)))
        failed = frame["passed"].map(_failed).sum()
        return {
            "steps": int(len(frame)),
            "clauses": {str(k): int(v) for k, v in frame["clause"].value_counts().items()},
            "max_depth": int(depths.max()),
            "failed_steps": int(failed),
        }

    def generate_insights(self, frame: pd.DataFrame):
        """Short human-readable observations about a trace"""
        stats = self.summary(frame)
        insights = []
        if stats["steps"] == 0:
            insights.append("✅ Input was already in normal form")
            return insights
        insights.append(f"🔁 {stats['steps']} reduction steps, deepest position {stats['max_depth']}")
        if stats["clauses"].get("omega-tilde"):
            insights.append(f"🔀 {stats['clauses']['omega-tilde']} impredicative steps through a collapsing witness")
        if stats["failed_steps"]:
            insights.append(f"🚨 {stats['failed_steps']} steps failed the audit")
        else:
            insights.append("✅ Every step passed the audit")
        if frame["budget_exhausted"].any():
            insights.append("⚠️ Reduction budget exhausted before a normal form was reached")
        return insights

    def create_pdf_report(self, frame: pd.DataFrame, verdict_summary: str, filename, title="Normalization Audit"):
        """PDF with the verdict, insights and the step table"""
        doc = SimpleDocTemplate(str(filename), pagesize=letter)
        story = [
            Paragraph(title, self.title_style),
            Paragraph(f"Report Date: {datetime.now().strftime('%Y-%m-%d')}", self.styles["Normal"]),
            Spacer(1, 18),
            Paragraph("Verdict", self.styles["Heading2"]),
        ]
        for line in verdict_summary.splitlines():
            story.append(Paragraph(_escape(line), self.styles["Normal"]))
        story.append(Spacer(1, 12))
        story.append(Paragraph("Insights", self.styles["Heading2"]))
        for insight in self.generate_insights(frame):
            story.append(Paragraph(_escape(insight), self.styles["Normal"]))
        story.append(Spacer(1, 12))
        story.append(Paragraph("Steps", self.styles["Heading2"]))
        for _, row in frame.iterrows():
            text = f"<b>{row['step']}</b> at {row['path']}: {row['clause']} on {_escape(row['label'])}"
            story.append(Paragraph(text, self.styles["Normal"]))
        doc.build(story)
        logger.info("wrote PDF report to %s", filename)
        return str(filename)


def _failed(value):
    if value is None or value != value:
        return False
    return not bool(value)


def _escape(text):
    return str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

