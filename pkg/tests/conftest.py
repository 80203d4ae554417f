import pytest

from orbirr.groups import catalog


@pytest.fixture(scope="session")
def catalog_groups():
    """The acceptance catalog, built once so character tables are shared."""
    return catalog()


@pytest.fixture(scope="session")
def small_catalog(catalog_groups):
    return [g for g in catalog_groups if g.order <= 24]
