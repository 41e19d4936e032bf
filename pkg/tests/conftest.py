import time

import pytest

from sl2forge import FormSpec, RunStrategy, minimal_generating_set


def timed_run(degrees, mode, strategy=RunStrategy.MULTIDEGREE):
    spec = FormSpec(degrees)
    start = time.perf_counter()
    gset = minimal_generating_set(spec, mode, strategy=strategy)
    return gset, time.perf_counter() - start


@pytest.fixture(scope="session")
def quartic_run():
    return timed_run((4,), "invariants")


@pytest.fixture(scope="session")
def cubic_quartic_run():
    return timed_run((3, 4), "invariants")


@pytest.fixture(scope="session")
def linear2_quadratic_run():
    return timed_run((1, 1, 2), "semi")


@pytest.fixture(scope="session")
def linear_cubic_kernel_run():
    return timed_run((1, 3), "kernel")


@pytest.fixture(scope="session")
def linear3_quadratic2_run():
    return timed_run((1, 1, 1, 2, 2), "invariants", strategy=RunStrategy.TOTAL_DEGREE)
