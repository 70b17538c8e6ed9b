from __future__ import annotations

import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

# criterion number -> (title, passed, detail)
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def check(self, condition: bool, message: str) -> None:
        if not condition:
            self.notes.append(message)
            raise AssertionError(message)


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    c = Criterion(number, title)
    yield c
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    ACCEPTANCE[number] = (title, passed, "; ".join(c.notes))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
