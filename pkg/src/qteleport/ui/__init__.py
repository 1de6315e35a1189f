"""Terminal presentation of reports."""

from __future__ import annotations

from qteleport.ui.formatting import create_report_text, format_value, print_report
from qteleport.ui.style import DEFAULT_STYLE

__all__ = ["DEFAULT_STYLE", "create_report_text", "format_value", "print_report"]
