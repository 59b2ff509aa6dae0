# grammar.py

"""Text forms of elements, vacuum specs, module descriptors and profiles.

Elements::

    element := term (('+' | '-') term)*
    term    := coeff '*'? monomial '|vac>' ('(x)' 't^' int)?
    coeff   := p | p/q | '(' gaussian literal ')'
    monomial:= ('d(' int ')' ('^' nat)?)*

Specs ``vac(r=1; 0, 1)`` or ``vac(trivial)``. Descriptors ``L(vac(r=0; 1);
lambda=2; a=0; b=0)``, ``N(vac(..); a=..; twist=..)``, ``A(a=..; b=..)``,
``L0(a=..; bprime=..)``, ``L1(..)`` and ``E(lambda=..; b=..; gamma=..; p=..)``.
Profiles ``dmax=3,bmax=2,win=-3..3,fuel=4,kmax=3`` (``win=3`` means -3..3).

Rendering is canonical: terms sorted by loop index then word, coefficient 1
omitted, zero written ``0``.
"""

from typing import Dict, Optional, Union

import pyparsing as pp

from core.algebra import CENTRAL, VirasoroElement
from core.classify import Family, ModuleDescriptor, ParityParams
from core.cm_compat import EParams
from core.errors import GrammarError, VirasoroError
from core.linear import accumulate
from core.loopmod import AParams, LoopElement, LParams, NParams
from core.pbw import Level, ModuleElement, VacuumSpec, act, vacuum
from core.profiles import DEFAULT_PROFILE, TruncationProfile
from core.scalars import ONE, SCALAR_LITERAL, Scalar, format_scalar, is_real, scalar

_INT = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
_NAT = pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0]))
_RATIONAL = pp.Regex(r"\d+(?:/\d+)?").set_parse_action(lambda t: scalar(t[0]))

_COEFF = (pp.Suppress("(") + SCALAR_LITERAL + pp.Suppress(")")) | _RATIONAL

_FACTOR = pp.Group(
    pp.Suppress("d(") + _INT + pp.Suppress(")") + pp.Optional(pp.Suppress("^") + _NAT, default=1)
)
_MONOMIAL = pp.Group(pp.ZeroOrMore(_FACTOR))
_LOOP = pp.Suppress(pp.Literal("(x)")) + pp.Suppress(pp.Literal("t^")) + _INT

_TERM = pp.Group(
    pp.Group(pp.Optional(_COEFF + pp.Optional(pp.Suppress("*")), default=ONE))("coeff")
    + _MONOMIAL("word")
    + pp.Suppress(pp.Literal("|vac>"))
    + pp.Optional(pp.Group(_LOOP)("loop"))
)
_SIGN = pp.one_of("+ -")
ELEMENT = (
    pp.Optional(_SIGN, default="+") + _TERM + pp.ZeroOrMore(_SIGN + _TERM)
) | pp.Literal("0")


def _syntax_error(kind: str, text: str, e: pp.ParseBaseException) -> GrammarError:
    return GrammarError(f"syntax error in {kind} at position {e.loc}: {text!r}", e.loc)


def _parse(expr, kind: str, text: str):
    try:
        return expr.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise _syntax_error(kind, text, e) from e


# ─── Elements ────────────────────────────────────────────────────────────────

def _expand_factors(factors) -> list:
    indices = []
    for index, power in factors:
        indices.extend([index] * power)
    return indices


def _word_value(indices: list, spec: Optional[VacuumSpec], text: str) -> Dict:
    """The monomial as a normal-form {word: coeff} dict."""
    if spec is None:
        if indices != sorted(indices):
            raise GrammarError(f"monomial {indices} is not in PBW normal order (give a spec to normalize): {text!r}")
        if indices and indices[0] < -1:
            raise GrammarError(f"index {indices[0]} not a PBW generator: {text!r}")
        return {tuple(indices): ONE}
    upper = spec.r - 1
    for index in indices:
        if index < -1 or index > upper:
            raise GrammarError(f"index {index} not a PBW generator: {text!r}")
    v = vacuum(Level.W)
    for index in reversed(indices):
        v = act(spec, index, v)
    return v.terms


def parse_element(text: str, spec: Optional[VacuumSpec] = None) -> Union[LoopElement, ModuleElement]:
    """
    Parse an element. Terms carrying ``(x) t^n`` give a LoopElement, bare terms
    a W-level ModuleElement; mixing the two is an error. ``0`` is the zero loop
    element.

    With a spec, monomials in any order are rewritten into normal form and
    every index must be a PBW generator (-1 .. r-1).
    """
    tokens = _parse(ELEMENT, "element", text)
    if list(tokens) == ["0"]:
        return LoopElement({})
    parts = list(tokens)
    loops = set()
    acc = {}
    for sign, term in zip(parts[0::2], parts[1::2]):
        c = term["coeff"][0]
        if sign == "-":
            c = -c
        loop = list(term["loop"]) if "loop" in term else []
        loops.add(bool(loop))
        for word, c2 in _word_value(_expand_factors(term["word"]), spec, text).items():
            key = (word, loop[0]) if loop else word
            accumulate(acc, key, c * c2)
    if len(loops) > 1:
        raise GrammarError(f"element mixes loop and module terms: {text!r}")
    if loops == {True}:
        return LoopElement._raw(acc)
    return ModuleElement._raw(acc, Level.W)


def _render_word(word) -> str:
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        power = j - i
        out.append(f"d({word[i]})" + (f"^{power}" if power > 1 else ""))
        i = j
    return "".join(out)


def _render_terms(pieces) -> str:
    """``pieces``: (coefficient, body) pairs in output order."""
    if not pieces:
        return "0"
    out = []
    for c, body in pieces:
        sign = "+"
        if is_real(c) and c.x < 0:
            sign, c = "-", -c
        if c == ONE:
            coeff = ""
        elif is_real(c):
            coeff = f"{format_scalar(c)}*"
        else:
            coeff = f"({format_scalar(c)})*"
        out.append((sign, f"{coeff}{body}"))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def render_element(v: Union[LoopElement, ModuleElement]) -> str:
    if isinstance(v, LoopElement):
        keys = sorted(v.keys(), key=lambda key: (key[1], key[0]))
        return _render_terms([(v.coefficient(key), f"{_render_word(key[0])}|vac> (x) t^{key[1]}") for key in keys])
    return _render_terms([(v.coefficient(word), f"{_render_word(word)}|vac>") for word in sorted(v.keys())])


# ─── Virasoro elements ───────────────────────────────────────────────────────

_GENERATOR = (pp.Suppress("d(") + _INT + pp.Suppress(")")) | pp.Literal(CENTRAL)
_VIR_TERM = pp.Group(pp.Optional(_COEFF + pp.Optional(pp.Suppress("*")), default=ONE) + _GENERATOR)
VIRASORO = (pp.Optional(_SIGN, default="+") + _VIR_TERM + pp.ZeroOrMore(_SIGN + _VIR_TERM)) | pp.Literal("0")


def parse_virasoro(text: str) -> VirasoroElement:
    """``d(2) - 1/2*d(-1) + 3*z``."""
    tokens = list(_parse(VIRASORO, "Virasoro element", text))
    if tokens == ["0"]:
        return VirasoroElement({})
    acc = {}
    for sign, (c, key) in zip(tokens[0::2], tokens[1::2]):
        accumulate(acc, key, -c if sign == "-" else c)
    return VirasoroElement._raw(acc)


def render_virasoro(x: VirasoroElement) -> str:
    keys = sorted(x.generator_terms())
    pieces = [(x.coefficient(k), f"d({k})") for k in keys]
    if x.central:
        pieces.append((x.central, CENTRAL))
    return _render_terms(pieces)


# ─── Specs ───────────────────────────────────────────────────────────────────

_VALUE = (pp.Suppress("(") + SCALAR_LITERAL + pp.Suppress(")")) | SCALAR_LITERAL
_SPEC_BODY = (
    pp.Keyword("trivial")
    | pp.Group(pp.Suppress("r") + pp.Suppress("=") + _NAT + pp.Suppress(";") + pp.Group(pp.DelimitedList(_VALUE)))
)
SPEC = pp.Suppress("vac(") + _SPEC_BODY + pp.Suppress(")")


def _spec_from(token) -> VacuumSpec:
    if isinstance(token, str):
        return VacuumSpec.trivial_spec()
    r, charges = token
    return VacuumSpec(r, tuple(charges))


def parse_spec(text: str) -> VacuumSpec:
    token = _parse(SPEC, "vacuum spec", text)[0]
    try:
        return _spec_from(token)
    except VirasoroError as e:
        raise GrammarError(f"{e}: {text!r}") from e


def render_spec(spec: VacuumSpec) -> str:
    if spec.trivial:
        return "vac(trivial)"
    return f"vac(r={spec.r}; {', '.join(format_scalar(c) for c in spec.charges)})"


# ─── Descriptors ─────────────────────────────────────────────────────────────

_NAME = pp.Word(pp.alphas, pp.alphanums)
_KEYVALUE = pp.Group(_NAME + pp.Suppress("=") + _VALUE)
_ARGS = pp.Optional(pp.Group(SPEC)("spec") + pp.Suppress(";")) + pp.Group(pp.DelimitedList(_KEYVALUE, delim=";"))("kwargs")
DESCRIPTOR = pp.one_of("L0 L1 L N A E")("family") + pp.Suppress("(") + _ARGS + pp.Suppress(")")

_KEYS = {
    "L": ("lambda", "a", "b"),
    "N": ("a", "twist"),
    "A": ("a", "b"),
    "L0": ("a", "bprime"),
    "L1": ("a", "bprime"),
    "E": ("lambda", "b", "gamma", "p"),
}
_NEEDS_SPEC = {"L", "N"}


def parse_descriptor(text: str) -> Union[ModuleDescriptor, EParams]:
    tokens = _parse(DESCRIPTOR, "module descriptor", text)
    family = tokens["family"]
    kwargs: Dict[str, Scalar] = {}
    for name, value in tokens["kwargs"]:
        if name in kwargs:
            raise GrammarError(f"duplicate parameter {name!r}: {text!r}")
        kwargs[name] = value
    expected = _KEYS[family]
    if set(kwargs) != set(expected):
        raise GrammarError(f"{family} needs parameters {', '.join(expected)}: {text!r}")
    has_spec = "spec" in tokens
    if has_spec != (family in _NEEDS_SPEC):
        raise GrammarError(f"{family} {'needs' if family in _NEEDS_SPEC else 'takes no'} vacuum spec: {text!r}")
    try:
        spec = _spec_from(tokens["spec"][0]) if has_spec else None
        if family == "L":
            return ModuleDescriptor.of(LParams(spec, kwargs["lambda"], kwargs["a"], kwargs["b"]))
        if family == "N":
            return ModuleDescriptor.of(NParams(spec, kwargs["a"], kwargs["twist"]))
        if family == "A":
            return ModuleDescriptor.of(AParams(kwargs["a"], kwargs["b"]))
        if family == "E":
            return EParams(kwargs["lambda"], kwargs["b"], kwargs["gamma"], kwargs["p"])
        return ModuleDescriptor.of(ParityParams(int(family[1]), kwargs["a"], kwargs["bprime"]))
    except VirasoroError as e:
        raise GrammarError(f"{e}: {text!r}") from e


def render_descriptor(desc: Union[ModuleDescriptor, EParams]) -> str:
    f = format_scalar
    if isinstance(desc, EParams):
        return f"E(lambda={f(desc.lam)}; b={f(desc.b)}; gamma={f(desc.gamma)}; p={f(desc.p)})"
    P = desc.params
    if desc.family is Family.L:
        return f"L({render_spec(P.spec)}; lambda={f(P.lam)}; a={f(P.a)}; b={f(P.b)})"
    if desc.family is Family.N:
        return f"N({render_spec(P.spec)}; a={f(P.a)}; twist={f(P.twist)})"
    if desc.family is Family.A:
        return f"A(a={f(P.a)}; b={f(P.b)})"
    return f"L{P.index}(a={f(P.a)}; bprime={f(P.bprime)})"


# ─── Profiles ────────────────────────────────────────────────────────────────

_WINDOW = pp.Group(_INT + pp.Suppress("..") + _INT) | _NAT
_PROFILE_ITEM = pp.Group(
    pp.one_of("dmax bmax fuel kmax") + pp.Suppress("=") + _NAT
    | pp.Literal("win") + pp.Suppress("=") + _WINDOW
)
PROFILE = pp.DelimitedList(_PROFILE_ITEM, delim=",")


def parse_profile(text: str, base: TruncationProfile = DEFAULT_PROFILE) -> TruncationProfile:
    values = base.model_dump()
    for name, value in _parse(PROFILE, "profile", text):
        if name == "win":
            values["window"] = tuple(value) if isinstance(value, pp.ParseResults) else (-value, value)
        else:
            values[name] = value
    try:
        return TruncationProfile(**values)
    except ValueError as e:
        raise GrammarError(f"invalid profile {text!r}: {e}") from e


def render_profile(profile: TruncationProfile) -> str:
    lo, hi = profile.window
    return f"dmax={profile.dmax},bmax={profile.bmax},win={lo}..{hi},fuel={profile.fuel},kmax={profile.kmax}"
