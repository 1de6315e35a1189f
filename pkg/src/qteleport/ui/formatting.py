"""Text formatting utilities."""

from __future__ import annotations

import sys
from typing import TYPE_CHECKING

from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import FormattedText
from prompt_toolkit.styles import merge_styles

from qteleport.ui.style import DEFAULT_STYLE


if TYPE_CHECKING:
    from typing import TextIO

    from prompt_toolkit.styles import Style

    from qteleport.protocol import ProtocolReport


def format_value(value: object) -> tuple[str, str]:
    """Style class and text of one report value."""
    match value:
        case None:
            return "class:missing", "-"
        case float():
            return "class:value", f"{value:.12g}"
        case _:
            return "class:value", str(value)


def create_report_text(report: ProtocolReport) -> FormattedText:
    """Format a report as aligned key = value lines.

    Args:
        report: Report to render

    Returns:
        Formatted text with the outcome highlighted
    """
    summary = report.summary()
    width = max(len(key) for key in summary)
    outcome_class = "class:success" if report.succeeded else "class:failure"
    message = [("class:title", f"Teleportation ({report.mode})"), ("", "\n")]
    for key, value in summary.items():
        style, text = format_value(value)
        if key == "outcome":
            style = outcome_class
        message.extend([
            ("class:key", key.ljust(width)),
            ("", " = "),
            (style, text),
            ("", "\n"),
        ])
    return FormattedText(message)


def print_report(
    report: ProtocolReport,
    style: Style | None = None,
    file: TextIO | None = None,
) -> None:
    """Print a styled report on a terminal, plain key = value text otherwise."""
    out = file or sys.stdout
    if not out.isatty():
        out.write(report.to_text() + "\n")
        return
    merged = merge_styles([DEFAULT_STYLE, style]) if style else DEFAULT_STYLE
    print_formatted_text(create_report_text(report), style=merged, file=out)
