import pytest

from wagefloor import datasets, indicators as ind


@pytest.fixture(scope="session")
def us_series():
    return ind.load_annual_csv(datasets.us_annual_path())


@pytest.fixture(scope="session")
def hungary_series():
    return ind.load_annual_csv(datasets.hungary_annual_path())
