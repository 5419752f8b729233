import random

import pytest

from toricoh import (
    Fan,
    MonomialIdeal,
    cox_data,
    ideal_from_supports,
    minimalize,
)


@pytest.fixture(scope="session")
def p2():
    return cox_data(Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2))))


def make_scroll(e):
    return cox_data(
        Fan(2, ((1, 0), (0, 1), (-1, e), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0)))
    )


@pytest.fixture(scope="session")
def scroll1():
    return make_scroll(1)


@pytest.fixture(scope="session")
def scroll0():
    return make_scroll(0)


@pytest.fixture(scope="session")
def halfplane_fan():
    return Fan(2, ((1, 0), (0, 1)), ((0, 1),))


@pytest.fixture(scope="session")
def noncomplete():
    # upper half plane glued from two quadrants; irrelevant ideal (x1, x3)
    return cox_data(Fan(2, ((1, 0), (0, 1), (-1, 0)), ((0, 1), (1, 2))))


@pytest.fixture(scope="session")
def quad():
    # complete surface where {1,3,4} passes finiteness yet supports nothing
    return cox_data(Fan(2, ((1, 1), (-1, 2), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0))))


def make_multiproj():
    rays = (
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1),
        (-3, -3, -3, -1, -1),
        (-1, -1, -1, 0, 0),
    )
    cones = [tuple(i for i in range(6) if i != j) for j in (3, 4, 5)]
    for i in (0, 1, 2):
        for j in (3, 4, 5):
            cones.append(tuple(sorted(set(range(6)) - {i, j})) + (6,))
    return cox_data(Fan(5, rays, tuple(cones)))


@pytest.fixture(scope="session")
def multiproj():
    return make_multiproj()


def random_square_free_ideal(rng: random.Random, n_max=7, gens_max=6) -> MonomialIdeal:
    """Nonzero proper square-free ideal with a bounded number of minimal
    generators; deterministic given the Random instance."""
    while True:
        n = rng.randint(2, n_max)
        k = rng.randint(1, gens_max)
        sups = []
        for _ in range(k):
            size = rng.randint(1, n)
            sups.append(frozenset(rng.sample(range(n), size)))
        ideal = ideal_from_supports(n, sups)
        if not ideal.is_zero and not ideal.is_unit:
            return ideal


def pad(seq, length):
    return tuple(seq) + (0,) * (length - len(seq))
