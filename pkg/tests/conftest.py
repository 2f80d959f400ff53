import pytest

from qnca.catalog import quantum_matrices
from qnca.poisson import poisson_matrices
from qnca.seeds import initial_seed


@pytest.fixture(scope="session")
def qm22():
    return quantum_matrices(2, 2)


@pytest.fixture(scope="session")
def qm23():
    return quantum_matrices(2, 3)


@pytest.fixture(scope="session")
def qm33():
    return quantum_matrices(3, 3)


@pytest.fixture(scope="session")
def pipe22(qm22):
    """(presentation-with-hstar, sequence, table, condition report, seed)."""
    return initial_seed(qm22.presentation)


@pytest.fixture(scope="session")
def pipe23(qm23):
    return initial_seed(qm23.presentation)


@pytest.fixture(scope="session")
def pipe33(qm33):
    return initial_seed(qm33.presentation)


@pytest.fixture(scope="session")
def pm22():
    return poisson_matrices(2, 2)
