import random

import pytest
from hypothesis import strategies as st

from core.loopmod import LParams
from core.pbw import Level, VacuumSpec
from core.profiles import TruncationProfile
from core.sampling import random_loop_element, random_module_element
from core.scalars import ratio

SPECS = (
    VacuumSpec.verma(1),
    VacuumSpec.verma(-1),
    VacuumSpec(1, (1, 1)),
    VacuumSpec(1, (0, 1)),
)

rationals = st.builds(ratio, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)
small_indices = st.integers(-4, 4)
specs = st.sampled_from(SPECS)
seeds = st.integers(0, 2 ** 32 - 1)


def loop_elements(spec, dmax=3, bmax=2, window=(-3, 3), level=Level.W):
    return seeds.map(lambda s: random_loop_element(random.Random(s), spec, dmax, bmax, window, level=level))


def module_elements(spec, dmax=3, bmax=2, level=Level.W):
    return seeds.map(lambda s: random_module_element(random.Random(s), spec, dmax, bmax, level=level))


@pytest.fixture
def verma_one():
    return VacuumSpec.verma(1)


@pytest.fixture
def charge_spec():
    return VacuumSpec(1, (0, 1))


@pytest.fixture
def generic_module(verma_one):
    return LParams(verma_one, 2, 0, 0)


@pytest.fixture
def profile():
    return TruncationProfile(dmax=3, bmax=2, window=(-3, 3), fuel=4, kmax=3)


@pytest.fixture
def rng():
    return random.Random(2013)
