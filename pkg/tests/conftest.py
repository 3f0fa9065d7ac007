import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion -> part -> (status, detail); status is PASS, FAIL or WARN
ACCEPTANCE: dict = {}


def record(criterion: int, part: str, status, detail: str) -> None:
    if isinstance(status, bool):
        status = "PASS" if status else "FAIL"
    ACCEPTANCE.setdefault(criterion, {})[part] = (status, detail.strip())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        statuses = {s for s, _ in parts.values()}
        status = "FAIL" if "FAIL" in statuses else "WARN" if "WARN" in statuses else "PASS"
        detail = "; ".join(f"{p}: {s} {d}" for p, (s, d) in parts.items())
        terminalreporter.write_line(f"criterion {crit}: {status} - {detail}")
