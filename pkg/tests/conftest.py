from __future__ import annotations

import pytest

from cyclolambda.bernoulli import BernoulliCache
from cyclolambda.dirichlet import char_group, enumerate_characters


@pytest.fixture(scope="session")
def trivial_char():
    return char_group(1).character(())


@pytest.fixture(scope="session")
def chi_m4():
    """The odd quadratic character of conductor 4."""
    return [c for c in enumerate_characters(4) if not c.is_trivial][0]


@pytest.fixture(scope="session")
def chi_3():
    """The odd quadratic character of conductor 3."""
    return [c for c in enumerate_characters(3) if not c.is_trivial][0]


@pytest.fixture(scope="session")
def chi_5():
    """The even quadratic character of conductor 5."""
    return [c for c in enumerate_characters(5) if c.order == 2][0]


@pytest.fixture()
def cache(tmp_path):
    return BernoulliCache(tmp_path)


@pytest.fixture(scope="session")
def session_cache(tmp_path_factory):
    return BernoulliCache(tmp_path_factory.mktemp("bern"))
