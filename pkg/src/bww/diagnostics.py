"""Source spans and diagnostics shared by the front end and the validator."""
from __future__ import annotations

import enum
import os
import sys
from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True, order=True)
class SourceSpan:
    """A 1-based, inclusive-start region of a source file."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span ends before it starts: {self}")

    def to(self, other: "SourceSpan") -> "SourceSpan":
        return SourceSpan(self.file, self.start_line, self.start_col,
                          other.end_line, other.end_col)

    def __str__(self):
        return f"{self.file}:{self.start_line}:{self.start_col}"


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


# Fixed rank used when two diagnostics share a position.
CODE_ORDER = (
    "L1", "P1", "R1", "R2", "R3", "B1",
    "V1", "V2", "W1", "V3", "V4", "V5", "V6", "V7", "V8", "V9", "V10", "V11",
    "I2",
)


def _code_rank(code: str) -> int:
    try:
        return CODE_ORDER.index(code)
    except ValueError:
        return len(CODE_ORDER)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    message: str
    subject: Optional[str] = None
    span: Optional[SourceSpan] = None

    def sort_key(self):
        if self.span is None:
            pos = (1, "", 0, 0)
        else:
            pos = (0, self.span.file, self.span.start_line, self.span.start_col)
        return pos + (_code_rank(self.code), self.code, self.subject or "", self.message)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self, color: bool = False) -> str:
        where = str(self.span) if self.span else "<model>"
        sev = self.severity.value
        if color:
            sev = _COLORS[self.severity] + sev + "\x1b[0m"
        return f"{where}: {sev}[{self.code}]: {self.message}"

    def to_json(self) -> dict:
        span = self.span
        return {
            "code": self.code,
            "severity": self.severity.value,
            "subject": self.subject,
            "file": span.file if span else None,
            "line": span.start_line if span else None,
            "col": span.start_col if span else None,
            "endLine": span.end_line if span else None,
            "endCol": span.end_col if span else None,
            "message": self.message,
        }


_COLORS = {
    Severity.ERROR: "\x1b[31m",
    Severity.WARNING: "\x1b[33m",
    Severity.INFO: "\x1b[36m",
}


def sort_diagnostics(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=Diagnostic.sort_key)


def use_color(stream=None) -> bool:
    stream = stream or sys.stderr
    if os.environ.get("BWW_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


# JSON Schema for one element of `bww check --format json` output.
DIAGNOSTIC_JSON_SCHEMA = {
    "type": "object",
    "required": ["code", "severity", "subject", "file", "line", "col",
                 "endLine", "endCol", "message"],
    "additionalProperties": False,
    "properties": {
        "code": {"type": "string", "pattern": "^[A-Z][0-9]+$"},
        "severity": {"enum": ["error", "warning", "info"]},
        "subject": {"type": ["string", "null"]},
        "file": {"type": ["string", "null"]},
        "line": {"type": ["integer", "null"], "minimum": 1},
        "col": {"type": ["integer", "null"], "minimum": 1},
        "endLine": {"type": ["integer", "null"], "minimum": 1},
        "endCol": {"type": ["integer", "null"], "minimum": 1},
        "message": {"type": "string"},
    },
}
