"""Collects acceptance results and prints one line per criterion."""

from collections import defaultdict

RESULTS: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)
TITLES: dict[int, str] = {}


def record(criterion: int, title: str, part: str, ok: bool, detail: str = "") -> bool:
    TITLES[criterion] = title
    RESULTS[criterion].append((part, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(RESULTS):
        parts = RESULTS[c]
        ok = all(p[1] for p in parts)
        failed = [f"{name}: {detail}" if detail else name for name, good, detail in parts if not good]
        line = f"criterion {c:>2} {'PASS' if ok else 'FAIL'}  {TITLES[c]}  ({len(parts)} checks)"
        if failed:
            line += "  failing: " + "; ".join(failed)
        tr.write_line(line)
