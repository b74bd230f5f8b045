"""Deterministic markdown reports with a content digest."""
from __future__ import annotations

import hashlib

from . import __version__


class Report:
    """Ordered key/value rows plus named checks; the verdict is PASS iff all checks hold."""

    def __init__(self, title: str):
        self.title = title
        self.rows: list = []
        self.checks: list = []
        self.values: dict = {}
        self._verdict = None

    def add(self, key: str, value):
        self.rows.append((key, value))
        self.values[key] = value

    def check(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def verdict(self) -> str:
        if self._verdict is not None:
            return self._verdict
        return "PASS" if self.ok else "FAIL"

    @verdict.setter
    def verdict(self, value: str):
        self._verdict = value

    def body(self) -> str:
        lines = [f"# {self.title}", "", "| quantity | value |", "|---|---|"]
        for key, value in self.rows:
            text = str(value).replace("|", "\\|").replace("\n", " ")
            lines.append(f"| {key} | {text} |")
        if self.checks:
            lines += ["", "## Checks", ""]
            lines += [f"- {'PASS' if ok else 'FAIL'}: {name}" for name, ok in self.checks]
        lines += ["", f"**Verdict: {self.verdict}**", ""]
        return "\n".join(lines)

    def to_markdown(self) -> str:
        body = self.body()
        digest = hashlib.sha256(body.encode()).hexdigest()
        return f"{body}\n---\ntamcalc {__version__}, sha256 {digest}\n"
