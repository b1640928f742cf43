import pytest

from bmfeet.fields import tower_for_q
from bmfeet.plane import plane_for
from bmfeet.unital import Unital, iter_valid_params


def first_params(q, square=None, classical=False, conic=None):
    """First valid pair in enumeration order matching the filters."""
    F = tower_for_q(q)
    for p in iter_valid_params(F, classical=classical):
        if classical and not p.is_classical:
            continue
        if square is not None and p.alpha_nonzero_square != square:
            continue
        if conic is not None and p.is_conic_bm != conic:
            continue
        return p
    raise LookupError("no such parameters")


@pytest.fixture(scope="session")
def plane3():
    return plane_for(tower_for_q(3))


@pytest.fixture(scope="session")
def plane4():
    return plane_for(tower_for_q(4))


@pytest.fixture(scope="session")
def unital5_square():
    return Unital(first_params(5, square=True))


@pytest.fixture(scope="session")
def unital5_nonsquare():
    return Unital(first_params(5, square=False))


@pytest.fixture(scope="session")
def unital4():
    return Unital(first_params(4))


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> bool:
    """Log one acceptance line; printed in the terminal summary."""
    line = f"criterion {criterion:<14} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
