import pytest

from latmirror import load_cy3_fixture, load_k3_fixture


@pytest.fixture(scope="session")
def quintic():
    return load_cy3_fixture("quintic")


@pytest.fixture(scope="session")
def bicubic():
    return load_cy3_fixture("bicubic")


@pytest.fixture(scope="session")
def k3_quartic():
    return load_k3_fixture("k3_quartic")


@pytest.fixture(scope="session")
def k3_elliptic():
    return load_k3_fixture("k3_elliptic")


@pytest.fixture(scope="session")
def k3_reflective():
    return load_k3_fixture("k3_reflective")
