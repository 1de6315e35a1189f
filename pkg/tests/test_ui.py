from __future__ import annotations

import io

import pytest

from qteleport.protocol import ProtocolConfig, ProtocolReport, run_teleportation
from qteleport.ui import create_report_text, format_value, print_report


@pytest.fixture(scope="module")
def report() -> ProtocolReport:
    return run_teleportation(ProtocolConfig(force_mode_match=True))


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (None, ("class:missing", "-")),
        (0.5, ("class:value", "0.5")),
        (1 / 3, ("class:value", "0.333333333333")),
        ("Plus", ("class:value", "Plus")),
    ],
)
def test_format_value(value: object, expected: tuple[str, str]):
    assert format_value(value) == expected


def test_report_text_highlights_outcome(report: ProtocolReport):
    """Test that the outcome line carries the success style."""
    fragments = list(create_report_text(report))
    assert fragments[0] == ("class:title", "Teleportation (analytic)")
    styles = {text: style for style, text in fragments}
    assert styles[report.outcome] == "class:success"
    keys = [text.strip() for style, text in fragments if style == "class:key"]
    assert keys == list(report.summary())


def test_plain_output_off_terminal(report: ProtocolReport):
    buffer = io.StringIO()
    print_report(report, file=buffer)
    assert buffer.getvalue() == report.to_text() + "\n"
