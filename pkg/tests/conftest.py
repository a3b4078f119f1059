# criterion number -> list of (part, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def acceptance_lines() -> list[str]:
    lines = []
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for _, p, _ in parts)
        detail = "; ".join(f"{name}: {'ok' if p else 'FAILED'} ({d})" for name, p, d in parts)
        lines.append(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    return lines


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines():
            terminalreporter.write_line(line)
