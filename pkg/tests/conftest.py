from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)

# filled by test_acceptance: number -> (title, status, seconds, limit)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, status, seconds, limit = ACCEPTANCE[n]
        bound = f", limit {limit:g} s" if limit else ""
        terminalreporter.write_line(f"criterion {n:2d}: {status}  ({seconds:.2f} s{bound})  {title}")
