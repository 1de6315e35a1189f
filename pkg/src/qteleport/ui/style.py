"""Style definitions for the terminal report."""

from __future__ import annotations

from prompt_toolkit.styles import Style


DEFAULT_STYLE = Style.from_dict({
    "title": "bold",
    "key": "#00aa00",  # Green
    "value": "",
    "success": "bold #00aa00",
    "failure": "bold #ff0000",  # Red bold
    "missing": "#666666",
})
