import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SPECS, loop_elements, seeds, specs
from core.algebra import VirasoroElement, central_element, generator
from core.classify import A, L, ModuleDescriptor, Parity
from core.cm_compat import EParams
from core.errors import GrammarError
from core.grammar import (
    parse_descriptor,
    parse_element,
    parse_profile,
    parse_spec,
    parse_virasoro,
    render_descriptor,
    render_element,
    render_profile,
    render_spec,
    render_virasoro,
)
from core.loopmod import LoopElement, NParams, loop_monomial
from core.pbw import VacuumSpec, monomial
from core.profiles import TruncationProfile
from core.sampling import random_virasoro
from core.scalars import I, format_scalar, parse_scalar, ratio, scalar

CHARGE = VacuumSpec(1, (0, 1))


# ─── Scalars ─────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("text, value", [
    ("3", scalar(3)),
    ("-3/2", ratio(-3, 2)),
    ("i", I),
    ("-i", -I),
    ("3/4*i", ratio(3, 4) * I),
    ("1/2-3*i", ratio(1, 2) - 3 * I),
])
def test_scalar_literals(text, value):
    assert parse_scalar(text) == value
    assert format_scalar(value) == text


@pytest.mark.parametrize("text", ["0.5", "1/", "2i3", ""])
def test_scalar_literal_rejected(text):
    with pytest.raises(GrammarError):
        parse_scalar(text)


def test_scalar_alternative_spellings():
    assert parse_scalar("(1/2)i") == ratio(1, 2) * I
    assert parse_scalar("2+i") == 2 + I


def test_format_scalar_round_trip():
    for re in range(-3, 4):
        for im in range(-3, 4):
            c = ratio(re, 2) + ratio(im, 3) * I
            assert parse_scalar(format_scalar(c)) == c


# ─── Elements ────────────────────────────────────────────────────────────────

def test_parse_loop_element():
    v = parse_element("2*d(-1)|vac> (x) t^1 - 1/2*|vac> (x) t^0")
    assert v == loop_monomial((-1,), 1, 2) + loop_monomial((), 0, ratio(-1, 2))
    assert render_element(v) == "-1/2*|vac> (x) t^0 + 2*d(-1)|vac> (x) t^1"


def test_parse_powers_and_complex_coefficients():
    v = parse_element("(1/2-3*i)*d(-1)^2d(0)|vac> (x) t^-2")
    assert v == loop_monomial((-1, -1, 0), -2, ratio(1, 2) - 3 * I)
    assert render_element(v) == "(1/2-3*i)*d(-1)^2d(0)|vac> (x) t^-2"


def test_parse_module_element():
    assert parse_element("d(-1)|vac> + 3|vac>") == monomial((-1,)) + monomial((), c=3)


def test_parse_zero():
    assert parse_element("0") == LoopElement({})
    assert render_element(LoopElement({})) == "0"


def test_parse_normalizes_with_spec():
    v = parse_element("d(0)d(-1)|vac>", CHARGE)
    assert v == monomial((-1, 0)) + monomial((-1,))


def test_parse_element_errors():
    with pytest.raises(GrammarError, match="normal order"):
        parse_element("d(0)d(-1)|vac>")
    with pytest.raises(GrammarError, match="not a PBW generator"):
        parse_element("d(1)|vac>", CHARGE)
    with pytest.raises(GrammarError, match="not a PBW generator"):
        parse_element("d(-2)|vac>")
    with pytest.raises(GrammarError, match="mixes"):
        parse_element("|vac> + |vac> (x) t^1")
    with pytest.raises(GrammarError) as info:
        parse_element("d(-1)|vac (x) t^1")
    assert info.value.position is not None


@given(spec=specs, data=st.data())
@settings(max_examples=50, deadline=None)
def test_render_parse_round_trip(spec, data):
    v = data.draw(loop_elements(spec))
    assert parse_element(render_element(v)) == v


# ─── Virasoro elements ───────────────────────────────────────────────────────

def test_parse_virasoro():
    x = parse_virasoro("d(2) - 1/2*d(-1) + 3*z")
    assert x == generator(2) + generator(-1, ratio(-1, 2)) + central_element(3)
    assert render_virasoro(x) == "-1/2*d(-1) + d(2) + 3*z"
    assert parse_virasoro("0") == VirasoroElement({})


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_virasoro_round_trip(seed):
    x = random_virasoro(random.Random(seed))
    assert parse_virasoro(render_virasoro(x)) == x


# ─── Specs and descriptors ───────────────────────────────────────────────────

@pytest.mark.parametrize("spec", SPECS + (VacuumSpec.trivial_spec(), VacuumSpec(2, ((1, 1), 0, ratio(1, 2)))))
def test_spec_round_trip(spec):
    assert parse_spec(render_spec(spec)) == spec


def test_spec_text():
    assert parse_spec("vac(r=1; 0, 1)") == CHARGE
    assert render_spec(VacuumSpec.verma(-1)) == "vac(r=0; -1)"
    with pytest.raises(GrammarError):
        parse_spec("vac(r=1; 0)")


@pytest.mark.parametrize("text, desc", [
    ("L(vac(r=0; 1); lambda=2; a=0; b=0)", L(VacuumSpec.verma(1), 2, 0, 0)),
    ("L(vac(r=1; 0, 1); lambda=i; a=1/3; b=-1)", L(CHARGE, I, ratio(1, 3), -1)),
    ("N(vac(r=1; 0, 1); a=0; twist=1)", ModuleDescriptor.of(NParams(CHARGE, 0, 1))),
    ("A(a=1/2; b=3)", A(ratio(1, 2), 3)),
    ("L0(a=1/3; bprime=1)", Parity(0, ratio(1, 3), 1)),
    ("L1(a=0; bprime=-2)", Parity(1, 0, -2)),
    ("E(lambda=2; b=0; gamma=1; p=1)", EParams(2, 0, 1, 1)),
])
def test_descriptor_round_trip(text, desc):
    assert parse_descriptor(text) == desc
    assert render_descriptor(desc) == text


@pytest.mark.parametrize("text", [
    "L(lambda=2; a=0; b=0)",
    "A(vac(r=0; 1); a=0; b=0)",
    "A(a=0)",
    "A(a=0; b=0; b=1)",
    "L(vac(r=0; 1); lambda=0; a=0; b=0)",
    "Q(a=0; b=0)",
])
def test_descriptor_errors(text):
    with pytest.raises(GrammarError):
        parse_descriptor(text)


# ─── Profiles ────────────────────────────────────────────────────────────────

def test_parse_profile():
    base = TruncationProfile()
    profile = parse_profile("dmax=2,win=3", base)
    assert profile == TruncationProfile(dmax=2, window=(-3, 3))
    assert parse_profile("win=-2..4,kmax=1", base).window == (-2, 4)


def test_profile_round_trip():
    profile = TruncationProfile(dmax=1, bmax=0, window=(-5, 2), fuel=2, kmax=4)
    assert parse_profile(render_profile(profile)) == profile


@pytest.mark.parametrize("text", ["win=3..1", "dmax=-1", "depth=2"])
def test_profile_errors(text):
    with pytest.raises(GrammarError):
        parse_profile(text)
