import pytest
from hypothesis import settings

from cfrank import Schedule, affine, build_levels, const, explicit

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def sched_r3z1():
    """h0 = 1, r = 3, z = 1: the small worked schedule used throughout."""
    return Schedule("r3z1", 1, const(3), const(1))


@pytest.fixture(scope="session")
def levels_r3z1(sched_r3z1):
    return build_levels(sched_r3z1, 5)


@pytest.fixture(scope="session")
def sched_r3_zramp():
    """h0 = 1, r = 3, z = (1, 2, 3, ...): h_1 = 9, h_2 = 36."""
    return Schedule("r3zramp", 1, const(3), affine(1, 1))


@pytest.fixture(scope="session")
def levels_r3_zramp(sched_r3_zramp):
    return build_levels(sched_r3_zramp, 5)


@pytest.fixture(scope="session")
def sched_partial():
    """Partially-high stage 0: d_0 = 1, r = 3, z = 4, then high staircase."""
    return Schedule("partial", 6, const(3), const(4), d=explicit([1], tail=const(0)))


@pytest.fixture(scope="session")
def levels_partial(sched_partial):
    return build_levels(sched_partial, 5)
