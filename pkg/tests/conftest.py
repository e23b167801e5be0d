import pytest

from rifle import catalog
from rifle.solver import SolverState, run


@pytest.fixture
def blocking_market():
    return catalog.blocking_pair_market()


@pytest.fixture
def weak_market():
    return catalog.weak_blocking_market()


@pytest.fixture
def auction_market():
    return catalog.auction_market()


@pytest.fixture
def degenerate_market():
    return catalog.degenerate_market()


@pytest.fixture(scope="session")
def auction_states():
    """Solver states along the worked auction run, keyed by their position in the trace."""
    recs = run(catalog.auction_market(), trace=True).trace
    return [SolverState(r.prices, r.proposal, frozenset(r.barred)) for r in recs]
