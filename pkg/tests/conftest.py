import pytest

from symfix.oracle import oracle_dominant
from symfix.search import PruneConfig, search


@pytest.fixture(scope="session")
def exhaustive_results():
    """Exhaustive-mode search results keyed by n, computed once per session."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = search(n, PruneConfig.exhaustive())
        return cache[n]

    return get


@pytest.fixture(scope="session")
def optimal_results():
    """Default optimal-complete search results keyed by n."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = search(n, PruneConfig())
        return cache[n]

    return get


@pytest.fixture(scope="session")
def oracle_reports():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = oracle_dominant(n)
        return cache[n]

    return get
