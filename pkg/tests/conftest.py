from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from modules.class_set import build_class_set  # noqa: E402
from modules.hecke import eigenforms  # noqa: E402

_built = {}


def _class_set(n1: int, n2: int):
    if (n1, n2) not in _built:
        _built[(n1, n2)] = build_class_set(n1, n2)
    return _built[(n1, n2)]


@pytest.fixture(scope="session")
def cs11():
    return _class_set(11, 1)


@pytest.fixture(scope="session")
def cs17():
    return _class_set(17, 1)


@pytest.fixture(scope="session")
def cs23():
    return _class_set(23, 1)


@pytest.fixture(scope="session")
def cs27():
    return _class_set(27, 1)


@pytest.fixture(scope="session")
def cs32():
    return _class_set(32, 1)


@pytest.fixture(scope="session")
def cs50():
    return _class_set(2, 25)


@pytest.fixture(scope="session")
def cs73():
    return _class_set(73, 1)


@pytest.fixture(scope="session")
def cs143_11():
    return _class_set(11, 13)


@pytest.fixture(scope="session")
def cs143_13():
    return _class_set(13, 11)


@pytest.fixture(scope="session")
def dec11(cs11):
    return eigenforms(cs11, 20)


@pytest.fixture(scope="session")
def dec73(cs73):
    return eigenforms(cs73, 20)


@pytest.fixture(scope="session")
def phi11(cs11):
    """The level 11 cusp form: 3 on the class of weight 3, -2 on the class of weight 2."""
    return tuple(3 if w == 3 else -2 for w in cs11.weights)
