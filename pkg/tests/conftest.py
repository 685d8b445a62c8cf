import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        verdict, note = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {verdict}  {note}")
