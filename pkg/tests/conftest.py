from __future__ import annotations

from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def rationals(lo: int = -10, hi: int = 10, max_den: int = 16):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def positive_rationals(hi: int = 10, max_den: int = 16):
    return st.fractions(min_value=Fraction(1, max_den), max_value=hi, max_denominator=max_den)


small_ints = st.integers(min_value=-6, max_value=6)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
