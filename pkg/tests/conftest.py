import pytest

from flatconn.complexes import BaseComplex, Edge
from flatconn.connections import Voltage
from flatconn.groups import catalog_group


@pytest.fixture(scope="session")
def s3():
    return catalog_group("S3")


@pytest.fixture(scope="session")
def z2():
    return catalog_group("Z2")


@pytest.fixture(scope="session")
def z4():
    return catalog_group("Z4")


@pytest.fixture()
def wedge():
    return BaseComplex(1, [Edge(0, 0, 0), Edge(1, 0, 0)])


@pytest.fixture()
def circle():
    return BaseComplex(1, [Edge(0, 0, 0)])


@pytest.fixture()
def torus():
    rel = ((0, 1), (1, 1), (0, -1), (1, -1))
    return BaseComplex(1, [Edge(0, 0, 0), Edge(1, 0, 0)], relators=[rel])


@pytest.fixture()
def wedge_s3_voltage(wedge, s3):
    # a -> (01), b -> (012): the running example
    return Voltage(wedge, s3, {0: 1, 1: 2})
