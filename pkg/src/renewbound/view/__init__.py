"""
The `renewbound.view` package renders the human-readable run summaries.
"""

from ._base import BaseViewer, RenewboundReport, MarkdownReport, number, pct_deviation
from ._summary import ReferenceRow, SummaryViewer, reference_rows

__all__ = [
    "BaseViewer",
    "RenewboundReport",
    "MarkdownReport",
    "number",
    "pct_deviation",
    "ReferenceRow",
    "SummaryViewer",
    "reference_rows",
]
