from __future__ import annotations

import pytest

_RESULTS = pytest.StashKey[dict]()

CRITERIA = {
    1: "oracle equivalence on the small-graph suite",
    2: "named fixtures solve to the published optima in < 5 s",
    3: "decisions at b-1 (infeasible) and b (feasible)",
    4: "covering rows <= 50% of |V| and recount matches",
    5: "BFS runs bounded and < |V|",
    6: "monotonicity and both proposition directions",
    7: "50k-vertex random graph in < 5 min and < 2 GB",
    8: "same seed gives byte-identical reports",
}


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def acceptance(request):
    """``record(criterion, ok, detail)`` feeds the end-of-run acceptance table."""
    store = request.config.stash[_RESULTS]

    def record(criterion: int, ok: bool, detail: str) -> None:
        store.setdefault(criterion, []).append((ok, detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash[_RESULTS]
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for c, title in CRITERIA.items():
        rows = store.get(c)
        if rows is None:
            terminalreporter.write_line(f"NOT RUN  {c}. {title}")
            continue
        ok = all(r[0] for r in rows)
        passed = [d for good, d in rows if good]
        failed = [d for good, d in rows if not good]
        detail = "; ".join(passed)
        if failed:
            detail = f"{len(passed)}/{len(rows)} pass [{detail}]; failing: " + "; ".join(failed)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {c}. {title}: {detail}")
