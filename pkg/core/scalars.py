# scalars.py

"""Exact Gaussian-rational scalars.

Every coefficient in the package is an element of sympy's ``QQ_I`` domain.
``QQ_I`` elements compare equal only to other ``QQ_I`` elements, so zero tests
always go through ``bool(c)`` and every foreign value is passed through
:func:`scalar` first.
"""

from math import factorial

import pyparsing as pp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from core.errors import GrammarError

Scalar = GaussianRational

ZERO = QQ_I.zero
ONE = QQ_I.one
I = QQ_I.imag_unit


def scalar(value) -> Scalar:
    """
    Coerce ``value`` into ``QQ_I``.

    Accepts ints, QQ_I / QQ elements, ``(re, im)`` pairs and exact literal
    strings such as ``"3/2"`` or ``"1/2-3*i"``.
    """
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, tuple):
        re, im = value
        return QQ_I(_rational(re), _rational(im))
    if isinstance(value, float):
        raise TypeError("Floating point values are not exact scalars")
    if isinstance(value, int) or QQ.of_type(value):
        return QQ_I(QQ.convert(value), QQ(0))
    return QQ_I.convert(value)


def _rational(value):
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return QQ(int(num), int(den or 1))
    return QQ.convert(value)


def ratio(p: int, q: int = 1) -> Scalar:
    return QQ_I(QQ(p, q), QQ(0))


def inverse_factorial(n: int) -> Scalar:
    return ratio(1, factorial(n))


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def real_floor(c: Scalar) -> int:
    """Integer part (floor) of the real part of ``c``."""
    re = c.x
    return int(re.numerator) // int(re.denominator)


def is_real(c: Scalar) -> bool:
    return not c.y


# ─── Literal grammar ──────────────────────────────────────────────────────────
# Real literals: 3, 3/2, (-3/2). Imaginary literals: i, 2*i, (1/2)i, 3/4*i.
# A Gaussian literal is a signed real and/or a signed imaginary part.

def _to_rational(tokens):
    num = int(tokens["num"])
    den = int(tokens.get("den") or 1)
    if den == 0:
        raise pp.ParseFatalException("zero denominator")
    return QQ(num, den)


_NUMBER = pp.Regex(r"(?P<num>\d+)(?:/(?P<den>\d+))?").set_parse_action(_to_rational)
_SIGNED_NUMBER = pp.Regex(r"(?P<num>[+-]?\d+)(?:/(?P<den>\d+))?").set_parse_action(_to_rational)
_SIGN = pp.one_of("+ -")

MAGNITUDE = (pp.Suppress("(") + _SIGNED_NUMBER + pp.Suppress(")")) | _NUMBER

_IMAGINARY = (
    pp.Optional(MAGNITUDE + pp.Optional(pp.Suppress("*")), default=QQ(1))
    + pp.Suppress(pp.Literal("i"))
)


def _gaussian(tokens):
    parts = list(tokens)
    sign = 1
    if isinstance(parts[0], str) and parts[0] in ("+", "-"):
        sign = -1 if parts[0] == "-" else 1
        parts = parts[1:]
    if isinstance(parts[0], str):  # imaginary marker
        return QQ_I(QQ(0), sign * parts[1])
    re = sign * parts[0]
    im = QQ(0)
    if len(parts) > 1:
        im = parts[2] if parts[1] == "+" else -parts[2]
    return QQ_I(re, im)


_PURE_IMAGINARY = (pp.Empty().set_parse_action(lambda: "imag") + _IMAGINARY)
_WITH_REAL = MAGNITUDE + pp.Optional(_SIGN + _IMAGINARY)

SCALAR_LITERAL = (
    pp.Optional(_SIGN) + (_PURE_IMAGINARY | _WITH_REAL)
).set_parse_action(_gaussian)


def parse_scalar(text: str) -> Scalar:
    try:
        return SCALAR_LITERAL.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise GrammarError(f"syntax error in scalar literal at position {e.loc}: {text!r}", e.loc) from e


def _format_rational(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return f"{num}" if den == 1 else f"{num}/{den}"


def format_scalar(c: Scalar) -> str:
    """Canonical literal text: ``p``, ``p/q``, ``r/s*i`` or ``p/q+r/s*i``."""
    c = scalar(c)
    re, im = c.x, c.y
    if not im:
        return _format_rational(re)
    if im == QQ(1):
        imag = "i"
    elif im == QQ(-1):
        imag = "-i"
    else:
        imag = f"{_format_rational(im)}*i"
    if not re:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_format_rational(re)}{sign}{imag}"
