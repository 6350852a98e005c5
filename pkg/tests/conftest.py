import itertools

import pytest

from dold_milnor.manifolds import dimension
from dold_milnor.theorems import FAMILY_TAGS, enumerate_family_pairs


def brute_partitions(d):
    """Every multiset of positive integers summing to d, from all compositions."""
    found = set()
    for cuts in itertools.product((0, 1), repeat=max(d - 1, 0)):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        if d:
            parts.append(run)
        found.add(tuple(sorted(parts, reverse=True)))
    return found


def family_members(dim_cap):
    """Both sides of every family pair up to ``dim_cap``, deduplicated."""
    seen = {}
    for tag in FAMILY_TAGS:
        for pair in enumerate_family_pairs(tag, dim_cap):
            for M in (pair.milnor, pair.partner):
                seen.setdefault(str(M), M)
    return sorted(seen.values(), key=lambda M: (dimension(M), str(M)))


@pytest.fixture(scope="session")
def members_16():
    return family_members(16)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
