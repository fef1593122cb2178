import pytest

from comgraph.constructors import build_group, fixture_table


@pytest.fixture(scope="session")
def s3():
    return build_group("symmetric:3")


@pytest.fixture(scope="session")
def s4():
    return build_group("symmetric:4")


@pytest.fixture(scope="session")
def a4():
    return build_group("alternating:4")


@pytest.fixture(scope="session")
def q8():
    return build_group("quaternion:8")


@pytest.fixture(scope="session")
def d8():
    return build_group("dihedral:8")


@pytest.fixture(scope="session")
def sl23():
    return build_group("sl2:3")


@pytest.fixture(scope="session")
def centrefree6():
    return fixture_table("centrefree6")
