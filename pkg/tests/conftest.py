from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)
small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), entries=small_ints):
    return rows.flatmap(lambda r: cols.flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def as_fracs(M):
    return [[Fraction(x) for x in row] for row in M]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
