import pytest

from ptwell.cli import run_table

# golden ground-level columns of the three reference tables
TABLE1_E0 = [5.55331, 20.67629, 46.94324, 84.78728, 134.43752, 196.03417]
TABLE2_E0 = [2.65128, 9.21477, 20.70525, 37.32010, 59.16865, 86.31766]
LABELS = [8.0, 18.0, 28.0, 38.0, 48.0, 58.0]


@pytest.fixture(scope="session")
def table1():
    return run_table(1)


@pytest.fixture(scope="session")
def table2():
    return run_table(2)


@pytest.fixture(scope="session")
def table3():
    return run_table(3)
