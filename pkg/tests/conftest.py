"""Shared test plumbing: the acceptance-criteria result registry.

Each acceptance test records its verdict here before asserting, so the
terminal summary always shows one PASS/FAIL line per criterion — including
criteria whose assertions failed.
"""

from __future__ import annotations

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(num: int, name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[num] = (name, bool(ok), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[num]
        status = "PASS" if ok else "FAIL"
        line = f"ACCEPTANCE {num}: {status} - {name}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
