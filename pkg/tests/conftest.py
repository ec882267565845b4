import pytest

from braidforge.dual import DualAlgebra, GradedQuotient
from braidforge.fixtures import block_sets, load_fixture
from braidforge.freealg import change_basis_deg2, hat_change
from braidforge.rtt import derive_all_cases


@pytest.fixture(scope="session")
def derivations():
    return derive_all_cases(cross_check=True)


@pytest.fixture(scope="session")
def blocks():
    return block_sets()


@pytest.fixture(scope="session")
def hat_relations(derivations):
    der = derivations["-+-"]
    return change_basis_deg2(der.relations_tilde, hat_change(), "hat")


@pytest.fixture(scope="session")
def quotient3(hat_relations):
    return GradedQuotient(hat_relations, 3)


@pytest.fixture(scope="session")
def dual3(quotient3):
    return DualAlgebra(quotient3)


@pytest.fixture(scope="session")
def dual_identities():
    return load_fixture("dual/identities").payload
