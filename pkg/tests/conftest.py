import time

import pytest


@pytest.fixture
def accept(capsys):
    """Print one visible PASS/FAIL line for an acceptance criterion, then assert."""
    start = time.perf_counter()

    def report(number: int, title: str, ok: bool, detail: str = "", limit: float | None = None):
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\n[criterion {number}] {status}: {title} [{elapsed:.2f}s{budget}] {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"
        assert within, f"criterion {number} exceeded {limit}s ({elapsed:.2f}s)"

    return report
