import random

import pytest

from weilchar.action import gen_supersingular_instance, make_instance


@pytest.fixture(scope="session")
def oc24():
    return make_instance(7, 2, random.Random(1))


@pytest.fixture(scope="session")
def oc40():
    return make_instance(11, 2, random.Random(1))


@pytest.fixture(scope="session")
def oc56():
    return make_instance(23, 6, random.Random(1))


@pytest.fixture(scope="session")
def oc59():
    return make_instance(17, 3, random.Random(1))


@pytest.fixture(scope="session")
def oc120():
    return make_instance(31, 2, random.Random(1))


@pytest.fixture(scope="session")
def oc420():
    return make_instance(2221, 92, random.Random(0))


@pytest.fixture(scope="session")
def oc52():
    return gen_supersingular_instance(13)


@pytest.fixture(scope="session")
def oc56_chi7():
    # same discriminant as oc56, but over F_239 where t = 30 makes the
    # chi_7 pairing tower degree exactly 7 and the walk primes cheap
    return make_instance(239, 30, random.Random(1))
