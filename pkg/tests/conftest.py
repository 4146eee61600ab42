"""Shared test plumbing.

Every d=2 trace that ``simulate`` or ``validate`` produces during the run
is checked with ``check_properties`` as soon as it appears.  The collector
keeps a running total of the seconds it spends, so timed acceptance
criteria can leave that work out.  Acceptance tests carry a ``criterion``
marker; their outcome is summarised at the end of the session, one line
each.
"""

from __future__ import annotations

import time

import pytest

from growsched import schedule as sched

TRACE_BUDGET = 200_000


class TraceCollector:
    def __init__(self):
        self.where = "session"
        self.checked = 0
        self.sampled = 0
        self.seconds = 0.0
        self.violations: list[tuple[str, object]] = []

    def __call__(self, tr: sched.Trace) -> None:
        if tr.d != 2:
            return
        t0 = time.perf_counter()
        rep = sched.check_properties(tr, budget=TRACE_BUDGET)
        self.checked += 1
        self.sampled += not rep.exhaustive
        self.violations.extend((self.where, v) for v in rep.violations)
        self.seconds += time.perf_counter() - t0


COLLECTOR = TraceCollector()
RESULTS: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    sched.trace_listeners.append(COLLECTOR)


def pytest_collection_modifyitems(config, items):
    # the property-suite criterion must see every other test's traces
    last = [it for it in items if it.get_closest_marker("property_suite")]
    items[:] = [it for it in items if it not in last] + last


@pytest.fixture(autouse=True)
def _trace_origin(request):
    COLLECTOR.where = request.node.nodeid
    yield
    COLLECTOR.where = "session"


@pytest.fixture
def collector():
    return COLLECTOR


@pytest.fixture
def detail(request):
    """Callable attaching a one-line measurement to the criterion summary."""

    def put(text: str) -> None:
        request.node.user_properties.append(("detail", text))

    return put


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    text = "; ".join(v for k, v in item.user_properties if k == "detail")
    RESULTS[number] = (title, "PASS" if rep.passed else "FAIL", text)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, status, text = RESULTS[number]
        tr.write_line(f"criterion {number:2d} {status}  {title}" + (f"  [{text}]" if text else ""))
    tr.write_line(
        f"property suite: {COLLECTOR.checked} d=2 traces checked "
        f"({COLLECTOR.sampled} sampled), {len(COLLECTOR.violations)} violations"
    )
