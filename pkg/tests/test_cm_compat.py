import pytest
from hypothesis import given, settings, strategies as st

from core.cm_compat import (
    EParams,
    TBasisElement,
    cm_act,
    dual_map,
    e_dual,
    e_to_l,
    example3_act,
    level1_act,
    level1_spec,
    from_loop,
    t_basis,
    to_loop,
    validate_level1_degeneration,
)
from core.errors import GammaZeroError, InvalidParameterError
from core.loopmod import LParams, l_act, loop_monomial
from core.pbw import VacuumSpec
from core.scalars import ratio, scalar
from core.suite import crosscheck_cm, crosscheck_level1

E_MODULES = [
    EParams(2, 0, 1, 1),
    EParams(-1, ratio(1, 3), ratio(1, 2), 0),
    EParams(ratio(1, 2), 0, -2, 3),
    EParams((0, 1), ratio(1, 2), 1, -1),
]


def test_e_to_l():
    assert e_to_l(EParams(2, 0, 1, 1)) == LParams(VacuumSpec.verma(-1), 2, 0, 2)


def test_e_to_l_gamma_zero():
    with pytest.raises(GammaZeroError):
        e_to_l(EParams(2, 0, 0, 1))


def test_e_params_validation():
    with pytest.raises(InvalidParameterError):
        EParams(0, 0, 1, 1)


def test_e_dual():
    assert e_dual(EParams(2, 0, 1, 1)) == EParams(ratio(1, 2), 0, -1, 1)
    E = EParams(ratio(1, 3), ratio(1, 2), ratio(2, 5), 4)
    assert e_dual(e_dual(E)) == E


def test_t_basis_dictionary():
    assert to_loop(t_basis(1, 2)) == loop_monomial((-1,), 2, -1)
    assert to_loop(t_basis(2, 0, 3)) == loop_monomial((-1, -1), 0, 3)
    v = t_basis(0, 1) + t_basis(3, -2, ratio(1, 2))
    assert from_loop(to_loop(v)) == v


def test_from_loop_rejects_non_verma_words():
    with pytest.raises(InvalidParameterError):
        from_loop(loop_monomial((0,), 0))


def test_t_basis_rejects_negative_degree():
    with pytest.raises(InvalidParameterError):
        t_basis(-1, 0)


@pytest.mark.parametrize("E", E_MODULES)
def test_cm_act_weight(E):
    for k in range(4):
        for i in range(-3, 4):
            assert cm_act(E, 0, t_basis(k, i)) == t_basis(k, i, E.b + i)


def test_cm_act_example():
    E = EParams(2, 0, 1, 1)
    # d_1 T_0^0 = (1 - 2) T_1^1 + (0 + 2 + 0 + 2 * (-1)) T_1^0
    assert cm_act(E, 1, t_basis(0, 0)) == TBasisElement({(1, 1): -1})


@pytest.mark.parametrize("E", E_MODULES)
def test_crosscheck_cm(E):
    assert crosscheck_cm(E, kmax=3, span=3) == 4 * 7 * 7


@pytest.mark.parametrize("E", E_MODULES)
@given(n=st.integers(-3, 3), k=st.integers(0, 3), i=st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_dual_map_intertwines(E, n, k, i):
    t = t_basis(k, i)
    assert dual_map(E, cm_act(E, n, t)) == cm_act(e_dual(E), n, dual_map(E, t))


def test_level1_degeneration():
    for i in range(3):
        for j in range(3):
            validate_level1_degeneration(0, 1, 2, ratio(1, 3), 1, i, j, 2)
            got = level1_act(0, 1, 2, ratio(1, 3), 1, 0, (i, j, 2))
            assert got == loop_monomial((-1,) * i + (0,) * j, 2, ratio(1, 3) + 2)


@pytest.mark.parametrize("mu, lam, a, b", [
    ((0, 1), 2, ratio(1, 3), 1),
    ((1, 1), ratio(1, 2), 0, 2),
    ((3, -2), -1, ratio(1, 2), 0),
])
def test_level1_agrees_with_engine(mu, lam, a, b):
    P = LParams(level1_spec(*mu), lam, a, b)
    assert crosscheck_level1(P, degree=2, span=2) > 0
    v = loop_monomial((-1, 0), 1)
    assert level1_act(*mu, lam, a, b, 2, (1, 1, 1)) == l_act(P, 2, v)


def test_level1_needs_level_one():
    with pytest.raises(InvalidParameterError):
        crosscheck_level1(LParams(VacuumSpec.verma(1), 2, 0, 0))


def test_level1_spec():
    assert level1_spec(0, 1) == VacuumSpec(1, (scalar(0), scalar(1)))


def test_example3_act_is_the_level1_formula():
    assert example3_act is level1_act
    assert example3_act(0, 1, 2, 0, 0, 1, (0, 0, 0)) == level1_act(0, 1, 2, 0, 0, 1, (0, 0, 0))
