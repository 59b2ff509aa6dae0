import pytest
from hypothesis import given, settings, strategies as st

from conftest import rationals
from core.algebra import (
    CENTRAL,
    SubalgebraKind,
    SubalgebraSpec,
    VirasoroElement,
    bracket,
    bracket_elements,
    central_element,
    commutator_word,
    generator,
    in_subalgebra,
    jacobi_sum,
    x_word,
)
from core.errors import InvalidParameterError
from core.scalars import ratio, scalar

virasoro_elements = st.dictionaries(
    st.one_of(st.integers(-6, 6), st.just(CENTRAL)), rationals, max_size=4
).map(VirasoroElement)


def test_bracket_examples():
    assert bracket(0, 5) == generator(5, 5)
    assert bracket(1, -1) == generator(0, -2)
    assert bracket(2, -2) == VirasoroElement({0: -4, CENTRAL: ratio(1, 2)})


def test_bracket_sign_convention():
    assert bracket(0, -1) == generator(-1, -1)


def test_bracket_elements_examples():
    assert not bracket_elements(central_element(), generator(5))
    assert bracket_elements(generator(0) + generator(1), generator(0)) == generator(1, -1)


@given(virasoro_elements, virasoro_elements)
@settings(max_examples=50, deadline=None)
def test_antisymmetry(x, y):
    assert not bracket_elements(x, x)
    assert bracket_elements(x, y) == -bracket_elements(y, x)


@given(virasoro_elements, virasoro_elements, virasoro_elements)
@settings(max_examples=50, deadline=None)
def test_jacobi(x, y, w):
    assert not jacobi_sum(x, y, w)


def test_jacobi_on_generator_triples():
    for m in range(-6, 7):
        for n in range(-6, 7):
            for k in range(-6, 7):
                assert not jacobi_sum(generator(m), generator(n), generator(k))


def test_in_subalgebra_examples():
    assert not in_subalgebra(generator(-1), SubalgebraSpec(SubalgebraKind.BOREL))
    assert in_subalgebra(generator(3) + generator(7), SubalgebraSpec(SubalgebraKind.TAIL, 3))
    assert not in_subalgebra(central_element(), SubalgebraSpec(SubalgebraKind.WITT))


def test_quotient_membership_is_bounded():
    spec = SubalgebraSpec(SubalgebraKind.QUOTIENT, 2)
    assert in_subalgebra(generator(0) + generator(2), spec)
    assert not in_subalgebra(generator(3), spec)


def test_negative_level_rejected():
    with pytest.raises(InvalidParameterError):
        SubalgebraSpec(SubalgebraKind.TAIL, -1)


def test_x_word_examples():
    assert list(x_word(10, 1)) == [
        (scalar(1), (6, 4)),
        (scalar(-3), (7, 3)),
        (scalar(3), (8, 2)),
        (scalar(-1), (9, 1)),
    ]
    assert list(x_word(0, 0))[0] == (scalar(1), (-3, 3))
    assert list(x_word(0, 0))[-1] == (scalar(-1), (0, 0))


@given(st.integers(-10, 10), st.integers(-10, 10))
def test_x_word_coefficients_sum_to_zero(l, m):
    assert not x_word(l, m).coefficient_sum()


def test_commutator_word():
    assert list(commutator_word(2, -1)) == [(scalar(1), (2, -1)), (scalar(-1), (-1, 2))]
