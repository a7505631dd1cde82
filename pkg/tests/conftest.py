import random

import pytest

from htgroups import RationalSet, Space, canonical_point, make_element

V21 = Space(2, 1)


def pt(root, pre, per):
    return canonical_point(root, pre, per)


ONE = pt(1, (), (1,))
TWO = pt(1, (), (2,))


@pytest.fixture
def g0():
    return make_element(V21, [((1, 1), (1, 1, 1)), ((1, 2, 1), (1, 1, 2)), ((1, 2, 2), (1, 2))])


@pytest.fixture
def swap3():
    """n = 3: swap 1:1 and 1:2, fix 1:3."""
    return make_element(Space(3, 1), [((1, 1), (1, 2)), ((1, 2), (1, 1)), ((1, 3), (1, 3))])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def S12():
    return RationalSet.of(V21, [ONE, TWO])
