import pytest
from hypothesis import given, settings, strategies as st

from conftest import rationals
from core.errors import ExtractionError, InvalidParameterError
from core.linalg import EchelonSpan, matrix_rank, solve, span_rank
from core.scalars import ONE, ZERO, ratio, scalar
from core.seqcalc import (
    X,
    ExpPolySequence,
    annihilator_check,
    cascade_extract,
    extract_components,
    linear_factor,
    shift_act,
    shift_polynomial,
)

LAMBDAS = [2, 3]


def _sample_sequence():
    return ExpPolySequence.basic(2, 1, (1, 0)) + ExpPolySequence.basic(3, 0, (0, 1))


EXPECTED = [(scalar(2), 1, (ONE, ZERO)), (scalar(3), 0, (ZERO, ONE))]


def test_sequence_evaluation():
    T = _sample_sequence()
    assert T(0) == (ZERO, ONE)
    assert T(2) == (scalar(8), scalar(9))
    assert T(-1) == (ratio(-1, 2), ratio(1, 3))


def test_shift_act_closed_form():
    T = ExpPolySequence.basic(2, 1, (1,))
    assert shift_act(X, T) == ExpPolySequence(1, {2: {1: (2,), 0: (2,)}})
    assert shift_act(linear_factor(2) ** 2, T).is_zero()
    assert not shift_act(linear_factor(2), T).is_zero()


@given(st.lists(rationals, min_size=1, max_size=4), st.integers(-4, 4))
@settings(max_examples=40, deadline=None)
def test_shift_act_matches_pointwise(coefficients, m):
    p = shift_polynomial(coefficients)
    T = _sample_sequence() + ExpPolySequence.basic(ratio(1, 2), 2, (3, -1))
    expected = (ZERO, ZERO)
    for i, c in enumerate(coefficients):
        expected = tuple(e + scalar(c) * x for e, x in zip(expected, T(m + i)))
    assert shift_act(p, T)(m) == expected


def test_annihilator_check():
    assert annihilator_check(linear_factor(2) ** 2, 2, 1)
    assert not annihilator_check(linear_factor(2), 2, 1)
    assert annihilator_check(linear_factor(2) ** 2 * linear_factor(3), 3, 0)
    assert not annihilator_check(shift_polynomial([1, 1]), 2, 0)


def test_annihilator_check_zero_lambda():
    with pytest.raises(InvalidParameterError):
        annihilator_check(X, 0, 0)


def test_extract_components():
    T = _sample_sequence()
    samples = [(m, T(m)) for m in range(-1, 6)]
    assert extract_components(samples, LAMBDAS, 1) == EXPECTED


def test_cascade_extract():
    assert cascade_extract(_sample_sequence(), LAMBDAS, 1) == EXPECTED


@given(st.lists(rationals, min_size=6, max_size=6))
@settings(max_examples=30, deadline=None)
def test_extraction_methods_agree(values):
    T = ExpPolySequence(1, {
        2: {0: (values[0],), 1: (values[1],)},
        -1: {0: (values[2],), 1: (values[3],)},
        ratio(1, 2): {0: (values[4],), 1: (values[5],)},
    })
    lambdas = [2, -1, ratio(1, 2)]
    samples = [(m, T(m)) for m in range(0, 6)]
    assert extract_components(samples, lambdas, 1) == cascade_extract(T, lambdas, 1)


def test_extract_insufficient_samples():
    T = _sample_sequence()
    with pytest.raises(ExtractionError, match="insufficient"):
        extract_components([(m, T(m)) for m in range(3)], LAMBDAS, 1)
    with pytest.raises(ExtractionError, match="insufficient"):
        extract_components([(m, T(m)) for m in (0, 1, 3, 4, 6)], LAMBDAS, 1)


def test_extract_rejects_bad_lambdas():
    T = _sample_sequence()
    samples = [(m, T(m)) for m in range(6)]
    with pytest.raises(ExtractionError, match="duplicate"):
        extract_components(samples, [2, 2], 1)
    with pytest.raises(ExtractionError):
        extract_components(samples, [2, 0], 1)


def test_extract_detects_components_above_bound():
    T = ExpPolySequence.basic(2, 2, (1,))
    with pytest.raises(ExtractionError):
        extract_components([(m, T(m)) for m in range(5)], [2], 1)
    with pytest.raises(ExtractionError):
        cascade_extract(T, [2], 1)


def test_cascade_rejects_unlisted_base():
    with pytest.raises(ExtractionError):
        cascade_extract(_sample_sequence(), [2], 1)


def test_echelon_span():
    span = EchelonSpan()
    assert span.add({0: ONE, 1: ONE})
    assert span.add({1: ONE})
    assert not span.add({0: scalar(3), 1: scalar(5)})
    assert span.rank == 2
    assert {0: ONE} in span
    assert {2: ONE} not in span
    assert span.pivots() == [0, 1]


def test_dense_helpers():
    rows = [[ONE, scalar(2)], [scalar(2), scalar(4)]]
    assert matrix_rank(rows, 2) == 1
    assert span_rank([{0: ONE}, {0: scalar(2)}, {1: ONE}]) == 2
    assert solve([[scalar(2), ZERO], [ZERO, scalar(4)]], [[scalar(2)], [ONE]]) == [[ONE], [ratio(1, 4)]]
