"""Shared test configuration: a deterministic hypothesis profile and the
acceptance summary table printed at the end of the run."""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")


# one row per acceptance criterion: (ident, label, status, seconds)
ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ident, label, status, secs in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(
            f"{status:4}  {ident:>3}  {label}  ({secs:.2f}s)")
