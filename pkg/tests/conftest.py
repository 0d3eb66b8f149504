import pytest

from latcheck.frame import make_chain, make_powerset, make_product
from latcheck.lset import LSubset
from latcheck.ltop import generate_topology


@pytest.fixture(scope="session")
def chain2():
    return make_chain(2)


@pytest.fixture(scope="session")
def chain3():
    return make_chain(3)


@pytest.fixture(scope="session")
def powerset2():
    return make_powerset(2)


@pytest.fixture(scope="session")
def sierpinski2(chain2):
    g = LSubset(chain2, ("x", "y"), (0, 1))
    return generate_topology(("x", "y"), chain2, [g], label="sierpinski")


@pytest.fixture(scope="session")
def sierpinski3(chain3):
    g = LSubset(chain3, ("x", "y"), (0, 2))
    return generate_topology(("x", "y"), chain3, [g], label="sierpinski")
