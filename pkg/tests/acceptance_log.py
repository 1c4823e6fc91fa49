"""PASS/FAIL lines collected by the acceptance suite, shown in the pytest summary."""

LINES: list[str] = []


def report(k: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    LINES.append(line)
    print(line, flush=True)
    assert ok, line
