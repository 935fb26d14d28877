import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance")
    for key in sorted(results):
        verdict, title = results[key]
        terminalreporter.write_line(f"criterion {key}: {verdict}  {title}")
