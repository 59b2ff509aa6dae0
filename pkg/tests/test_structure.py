import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import loop_elements, small_indices
from core.errors import InvalidParameterError, NotInImageError, ProfileBoundsError, RequiresSimpleError
from core.loopmod import LoopElement, LParams, l_act, loop_monomial, n_act
from core.pbw import VacuumSpec, b_words
from core.profiles import TruncationProfile
from core.sampling import random_loop_element
from core.scalars import ratio, scalar
from core.structure import (
    cyclic_slice_dims,
    in_filtration,
    in_lprime,
    is_simple_L,
    layer_action,
    layer_params,
    lprime_quotient,
    non_simplicity_witness,
    omega3_on_A,
    parity_decompose,
    parity_of,
    quotient_params,
    slice_dimension,
    tau,
    tau_inverse,
    top_descent_component,
    x_leading_coefficient,
    x_probe,
)

VERMA = VacuumSpec.verma(1)
CHARGE = VacuumSpec(1, (0, 1))


# ─── Filtration (lambda = 1) ─────────────────────────────────────────────────

def test_filtration_examples():
    P = LParams(VERMA, 1, 0, 0)
    assert in_filtration(P, 0, loop_monomial((), 3))
    assert not in_filtration(P, 0, loop_monomial((-1,), 3))


@pytest.mark.parametrize("spec", [VERMA, CHARGE])
@given(n=st.integers(0, 3), k=small_indices, data=st.data())
@settings(max_examples=25, deadline=None)
def test_filtration_invariance(spec, n, k, data):
    P = LParams(spec, 1, ratio(1, 3), 2)
    v = data.draw(loop_elements(spec, dmax=n))
    assert in_filtration(P, n, l_act(P, k, v))


@pytest.mark.parametrize("spec", [VERMA, CHARGE])
def test_layer_action_matches_n_module(spec):
    P = LParams(spec, 1, ratio(1, 3), 2)
    for n in range(4):
        N = layer_params(P, n)
        assert N.twist == scalar(2 - n)
        for word in b_words(spec.r, 2):
            for j in range(-3, 4):
                w = loop_monomial(word, j)
                for k in range(-4, 5):
                    assert layer_action(P, n, k, w) == n_act(N, k, w)


def test_layer_action_needs_lambda_one():
    with pytest.raises(InvalidParameterError):
        layer_action(LParams(VERMA, 2, 0, 0), 0, 1, loop_monomial((), 0))


# ─── L' and tau (b = 1) ──────────────────────────────────────────────────────

def test_tau_examples():
    assert tau(LParams(VERMA, 2, 0, 1), loop_monomial((), 0)) == loop_monomial((-1,), 0)
    expected = loop_monomial((-1,), 2) + loop_monomial((), 2, -3)
    assert tau(LParams(VERMA, 2, 1, 1), loop_monomial((), 2)) == expected


def test_in_lprime_examples():
    P = LParams(VERMA, 2, 0, 1)
    assert not in_lprime(P, loop_monomial((), 0))
    assert in_lprime(P, loop_monomial((-1, -1), 2) + loop_monomial((), 2, -4))


@pytest.mark.parametrize("spec", [VERMA, CHARGE])
@given(k=small_indices, data=st.data())
@settings(max_examples=25, deadline=None)
def test_tau_intertwines(spec, k, data):
    P = LParams(spec, 2, ratio(1, 3), 1)
    P0 = P.with_b(0)
    v = data.draw(loop_elements(spec))
    u = tau(P, v)
    assert in_lprime(P, u)
    assert tau_inverse(P, u) == v
    assert l_act(P, k, u) == tau(P, l_act(P0, k, v))
    assert in_lprime(P, l_act(P, k, u))


def test_tau_inverse_outside_image():
    with pytest.raises(NotInImageError):
        tau_inverse(LParams(VERMA, 2, 0, 1), loop_monomial((), 0))


@given(k=small_indices, data=st.data())
@settings(max_examples=25, deadline=None)
def test_lprime_quotient(k, data):
    P = LParams(CHARGE, ratio(1, 2), 0, 1)
    Q = quotient_params(P)
    w = data.draw(loop_elements(CHARGE))
    assert not lprime_quotient(P, tau(P, w))
    assert lprime_quotient(P, l_act(P, k, w)) == n_act(Q, k, lprime_quotient(P, w))


# ─── Parity (lambda = -1, b = b' + 1) ────────────────────────────────────────

def test_parity_examples(profile):
    a = ratio(1, 3)
    P = LParams(VERMA, -1, a, 2)
    even = loop_monomial((), 0)
    odd = loop_monomial((), 1)
    assert parity_decompose(P, even, profile) == (even, LoopElement({}))
    assert parity_decompose(P, odd, profile) == (LoopElement({}), odd)
    half = (a + 1) * ratio(1, 2)
    v0, v1 = parity_decompose(P, loop_monomial((-1,), 1), profile)
    assert v0 == loop_monomial((-1,), 1) - loop_monomial((), 1, half)
    assert v1 == loop_monomial((), 1, half)
    assert parity_of(P, even, profile) == 0
    assert parity_of(P, even + odd, profile) is None


@pytest.mark.parametrize("bprime", [1, -2])
@given(k=st.integers(-3, 3), data=st.data())
@settings(max_examples=25, deadline=None)
def test_parity_parts_are_invariant(bprime, k, data):
    profile = TruncationProfile(dmax=5, bmax=0, window=(-5, 5))
    P = LParams(VacuumSpec.verma(bprime), -1, 0, bprime + 1)
    v = data.draw(loop_elements(P.spec, dmax=4, bmax=0, window=(-2, 2)))
    v0, v1 = parity_decompose(P, v, profile)
    assert v0 + v1 == v
    for part, parity in ((v0, 0), (v1, 1)):
        image = l_act(P, k, part)
        if image:
            assert parity_of(P, image, profile) == parity


def test_parity_requirements(profile):
    with pytest.raises(InvalidParameterError):
        parity_decompose(LParams(VERMA, 2, 0, 2), loop_monomial((), 0), profile)
    with pytest.raises(RequiresSimpleError):
        parity_decompose(LParams(CHARGE, -1, 0, 2), loop_monomial((), 0), profile)
    with pytest.raises(ProfileBoundsError):
        parity_decompose(LParams(VERMA, -1, 0, 2), loop_monomial((), 9), profile)


# ─── Simplicity ──────────────────────────────────────────────────────────────

def test_is_simple_examples():
    assert is_simple_L(LParams(VERMA, 2, 0, 0))
    assert not is_simple_L(LParams(VERMA, -1, 0, 2))
    assert is_simple_L(LParams(CHARGE, -1, 0, 0))
    assert not is_simple_L(LParams(CHARGE, 1, 0, 0))
    assert not is_simple_L(LParams(CHARGE, 2, 0, 1))


def test_is_simple_needs_simple_w():
    with pytest.raises(RequiresSimpleError):
        is_simple_L(LParams(VacuumSpec.verma(0), 2, 0, 0))


def test_cyclic_scan_simple_module():
    profile = TruncationProfile(dmax=1, bmax=0, window=(-2, 2), fuel=4, kmax=3)
    P = LParams(VERMA, 2, 0, 0)
    scan = cyclic_slice_dims(P, [loop_monomial((), 0)], profile)
    assert scan.full_rank()
    assert all(full == 2 for _, full in scan.dims.values())
    assert slice_dimension(P, profile) == 2


def test_cyclic_scan_trapped_in_bottom_layer():
    profile = TruncationProfile(dmax=1, bmax=0, window=(-2, 2), fuel=4, kmax=3)
    scan = cyclic_slice_dims(LParams(VERMA, 1, 0, 0), [loop_monomial((), 0)], profile)
    assert scan.max_attained() <= 1
    assert not scan.full_rank()


SCAN = TruncationProfile(dmax=2, bmax=2, window=(-3, 3), fuel=4, kmax=3)


@pytest.mark.parametrize("P", [
    LParams(VERMA, 2, 0, 0),
    LParams(VERMA, 2, 0, 2),
    LParams(VacuumSpec.verma(-1), ratio(1, 2), 0, 0),
    LParams(CHARGE, -1, 0, 0),
    LParams(CHARGE, 2, 0, 2),
])
def test_cyclic_scan_reaches_full_slices_from_random_generators(P):
    assert is_simple_L(P)
    rng = random.Random(11)
    generators = [
        random_loop_element(rng, P.spec, SCAN.dmax, SCAN.bmax, SCAN.window, index=rng.randint(*SCAN.window))
        for _ in range(5)
    ]
    scan = cyclic_slice_dims(P, generators, SCAN)
    assert scan.full_rank(), scan.dims


def test_cyclic_scan_needs_cancellation_through_higher_degrees():
    # a top-degree generator: every lower slice vector needs a round above dmax
    P = LParams(VERMA, 2, 0, 0)
    profile = TruncationProfile(dmax=2, bmax=0, window=(-1, 1), fuel=4, kmax=3)
    scan = cyclic_slice_dims(P, [loop_monomial((-1, -1), 0)], profile)
    assert scan.full_rank(), scan.dims


def test_cyclic_scan_from_tau_images_stays_in_lprime():
    P = LParams(VERMA, 2, 0, 1)
    profile = TruncationProfile(dmax=2, bmax=0, window=(-2, 2), fuel=3, kmax=2)
    generators = [tau(P, loop_monomial((), 0)), tau(P, loop_monomial((-1,), 1))]
    scan = cyclic_slice_dims(P, generators, profile)
    assert not scan.full_rank()
    full = slice_dimension(P, profile)
    for rows in scan.basis.values():
        assert len(rows) <= full - 1
        assert all(in_lprime(P, row) for row in rows)
    assert scan.dims[0][0] == full - 1


@pytest.mark.parametrize("P, kind", [
    (LParams(VERMA, 1, 0, 0), "filtration"),
    (LParams(CHARGE, 2, 0, 1), "lprime"),
    (LParams(VERMA, -1, 0, 2), "parity"),
])
def test_non_simplicity_witness(P, kind, profile):
    witness = non_simplicity_witness(P, profile, 2, random.Random(7))
    assert witness["kind"] == kind
    assert witness["outside"]
    assert witness["checked"] > 0


def test_no_witness_for_simple_module(profile):
    assert non_simplicity_witness(LParams(VERMA, 2, 0, 0), profile) is None


# ─── Descent and probes ──────────────────────────────────────────────────────

def test_top_descent_component_on_vacuum():
    P = LParams(VERMA, 2, 0, 0)
    assert top_descent_component(P, loop_monomial((), 0), 0) == loop_monomial((), 0)


def test_top_descent_component_mixed_degree():
    P = LParams(CHARGE, ratio(1, 2), ratio(1, 3), 2)
    v = loop_monomial((-1, 0), 1) + loop_monomial((0,), 1, 3)
    top_descent_component(P, v, 2)


def test_x_leading_coefficient():
    assert x_leading_coefficient(2, 10, 1) == scalar(62)
    assert not x_leading_coefficient(2, 9, 3)
    assert not x_leading_coefficient(1, 10, 1)


@pytest.mark.parametrize("l, m", [(10, 1), (7, 2), (5, 1)])
def test_x_probe_on_socle_inputs(l, m):
    P = LParams(VERMA, 2, 0, 0)
    _, leading = x_probe(P, l, m, loop_monomial((), 0))
    assert leading == x_leading_coefficient(2, l, m)


def test_x_probe_lambda_one():
    _, leading = x_probe(LParams(CHARGE, 1, 0, 0), 10, 1, loop_monomial((0,), 0))
    assert not leading


def test_omega3_examples():
    assert not omega3_on_A(0, 0, 10, 1, 0)
    assert not omega3_on_A(ratio(1, 2), 3, 7, 2, -4)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_omega3_vanishes(l, m, n):
    assert not omega3_on_A(ratio(1, 2), 3, l, m, n)
