# classify.py

"""Module descriptors, normalization, the duality map phi, isomorphism
verdicts and the structure table of the modules E(lambda, b, gamma, p)."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Union

from core.errors import InvalidParameterError, RequiresSimpleError
from core.linear import accumulate
from core.loopmod import AParams, LoopElement, LParams, NParams
from core.pbw import VacuumSpec, d_minus_one_degree
from core.scalars import ONE, Scalar, binomial, ratio, real_floor, scalar
from core.structure import is_simple_L


class Family(Enum):
    L = "L"
    N = "N"
    A = "A"
    PARITY = "Parity"


@dataclass(frozen=True)
class ParityParams:
    """The parity summand L_index(a, b') of L(Verma b', -1, a, b' + 1)."""
    index: int
    a: Scalar
    bprime: Scalar

    def __post_init__(self):
        if self.index not in (0, 1):
            raise InvalidParameterError(f"parity index must be 0 or 1, got {self.index}")
        bprime = scalar(self.bprime)
        if not bprime:
            raise InvalidParameterError("parity summands need highest weight b' != 0")
        object.__setattr__(self, "a", scalar(self.a))
        object.__setattr__(self, "bprime", bprime)

    def ambient(self) -> LParams:
        return LParams(VacuumSpec.verma(self.bprime), -ONE, self.a, self.bprime + 1)


Params = Union[LParams, NParams, AParams, ParityParams]

_FAMILY_OF = {LParams: Family.L, NParams: Family.N, AParams: Family.A, ParityParams: Family.PARITY}


@dataclass(frozen=True)
class ModuleDescriptor:
    family: Family
    params: Params

    @classmethod
    def of(cls, params: Params) -> "ModuleDescriptor":
        try:
            return cls(_FAMILY_OF[type(params)], params)
        except KeyError:
            raise InvalidParameterError(f"no module family for {type(params).__name__}") from None


def L(spec: VacuumSpec, lam, a, b) -> ModuleDescriptor:
    return ModuleDescriptor.of(LParams(spec, lam, a, b))


def A(a, b) -> ModuleDescriptor:
    return ModuleDescriptor.of(AParams(a, b))


def Parity(index: int, a, bprime) -> ModuleDescriptor:
    return ModuleDescriptor.of(ParityParams(index, a, bprime))


# ─── Normalization ───────────────────────────────────────────────────────────

def normalize(desc: ModuleDescriptor) -> ModuleDescriptor:
    """
    Shift a into 0 <= Re a < 1 (L, N and A are invariant under a -> a + n).

    Parity summands use L_1(a, b') = L_0(a + 1, b') and the period 2 of L_0 in a,
    then come back into the window as L_0(a', b') or L_1(a' - 1, b').
    """
    P = desc.params
    if desc.family is Family.PARITY:
        a = P.a + 1 if P.index == 1 else P.a
        a = a - 2 * (real_floor(a) // 2)
        if real_floor(a) == 0:
            return Parity(0, a, P.bprime)
        return Parity(1, a - 1, P.bprime)
    shift = real_floor(P.a)
    if not shift:
        return desc
    if desc.family is Family.L:
        return L(P.spec, P.lam, P.a - shift, P.b)
    if desc.family is Family.N:
        return ModuleDescriptor.of(NParams(P.spec, P.a - shift, P.twist))
    return A(P.a - shift, P.b)


# ─── Duality map ─────────────────────────────────────────────────────────────

def dual_pair(lam, a, bprime, bprime0):
    """Source L(Verma b', lambda, a, b'_0 + 1) and target L(Verma b'_0, 1/lambda, a, b' + 1) of phi."""
    lam = scalar(lam)
    source = LParams(VacuumSpec.verma(bprime), lam, a, scalar(bprime0) + 1)
    target = LParams(VacuumSpec.verma(bprime0), ONE / lam, a, scalar(bprime) + 1)
    return source, target


def phi(lam, a, bprime, bprime0, v: LoopElement) -> LoopElement:
    """
    (d_{-1}^k w) (x) t^l -> lambda^(-l) ((a + l - d_{-1})^k w_0) (x) t^l.

    ``bprime`` and ``bprime0`` only fix the source and target modules; the map
    itself depends on lambda and a.
    """
    lam, a = scalar(lam), scalar(a)
    dual_pair(lam, a, bprime, bprime0)  # validates the parameters
    acc = {}
    for (word, l), c in v.items():
        k = d_minus_one_degree(word)
        if k != len(word):
            raise InvalidParameterError(f"word {word} is not a Verma monomial")
        shift = a + l
        scale_l = c * lam ** (-l)
        for j in range(k + 1):
            coeff = scale_l * ratio(binomial(k, j) * (-1) ** j) * shift ** (k - j)
            accumulate(acc, ((-1,) * j, l), coeff)
    return LoopElement._raw(acc)


# ─── Isomorphism ─────────────────────────────────────────────────────────────

class Witness(Enum):
    EQUAL_PARAMETERS = "equal-parameters"
    DUAL_MAP = "dual-map"
    NONE = "none"

    @classmethod
    def _missing_(cls, value):
        # older label of the phi witness
        if value == "lemma13-dual":
            return cls.DUAL_MAP
        return None


class IsoVerdict(NamedTuple):
    iso: bool
    witness: Witness


def _is_dual(P: LParams, Q: LParams) -> bool:
    if not (P.spec.is_verma and Q.spec.is_verma):
        return False
    return (
        Q.lam == ONE / P.lam
        and P.a == Q.a
        and P.b == Q.spec.highest_weight + 1
        and Q.b == P.spec.highest_weight + 1
    )


def are_isomorphic(d1: ModuleDescriptor, d2: ModuleDescriptor) -> IsoVerdict:
    """
    Decide isomorphism of two descriptors after normalization.

    L-descriptors must be simple: equal parameters or the phi pattern. N, A and
    parity summands: equal normalized parameters. Different families are never
    isomorphic.

    Raises:
        RequiresSimpleError: for an L-descriptor that is not simple.
    """
    for d in (d1, d2):
        if d.family is Family.L and not is_simple_L(d):
            raise RequiresSimpleError(f"isomorphism test needs simple L-modules, got {d.params}")
    n1, n2 = normalize(d1), normalize(d2)
    if n1.family is not n2.family:
        return IsoVerdict(False, Witness.NONE)
    if n1.params == n2.params:
        return IsoVerdict(True, Witness.EQUAL_PARAMETERS)
    if n1.family is Family.L and _is_dual(n1.params, n2.params):
        return IsoVerdict(True, Witness.DUAL_MAP)
    return IsoVerdict(False, Witness.NONE)


# ─── Structure of E(lambda, b, gamma, p) ─────────────────────────────────────

@dataclass
class EClassification:
    """
    Case number (None when no case applies), simplicity, the module as an
    L-descriptor, and the composition data: proper submodules from the largest
    down and the successive quotients.
    """
    case: Optional[int]
    simple: bool
    module: ModuleDescriptor
    submodules: List[ModuleDescriptor] = field(default_factory=list)
    quotients: List[ModuleDescriptor] = field(default_factory=list)
    note: str = ""


def _eq(c: Scalar, value) -> bool:
    return c == scalar(value)


def classify_E(lam, b, gamma, p, layers: int = 3) -> EClassification:
    """
    Structure of E(lambda, b, gamma, p) = L(Verma -gamma, lambda, b, gamma + p).

    For gamma = 0 the highest weight is 0 and the Verma module has the
    submodule d_{-1} W, itself a Verma module of weight -1, with the trivial
    module as quotient; the cases below describe that situation.
    """
    lam, b, gamma, p = scalar(lam), scalar(b), scalar(gamma), scalar(p)
    if not lam:
        raise InvalidParameterError("lambda must be nonzero")
    module = L(VacuumSpec.verma(-gamma), lam, b, gamma + p)
    plus_one, minus_one = _eq(lam, 1), _eq(lam, -1)
    generic = not plus_one and not minus_one
    logging.debug(f"Classifying E(lambda={lam}, b={b}, gamma={gamma}, p={p})")

    if gamma:
        if (generic and gamma != 1 - p) or (minus_one and gamma not in (1 - p, (1 - p) * ratio(1, 2))):
            return EClassification(1, True, module, note="simple")
        if plus_one:
            # layer n is N(B, b) with twist gamma + p - n, i.e. A(b, p - n)
            quotients = [A(b, p - n) for n in range(layers)]
            return EClassification(2, False, module, quotients=quotients,
                                   note="filtration by d_(-1)-degree; layer n is A(b, p - n)")
        if p == 1 - gamma:
            return EClassification(3, False, module,
                                   submodules=[L(VacuumSpec.verma(-gamma), lam, b, 0)],
                                   quotients=[A(b, 1 - gamma)],
                                   note="unique proper submodule")
        # lambda = -1, p = 1 - 2 gamma
        return EClassification(4, False, module,
                               submodules=[Parity(0, b, -gamma), Parity(1, b, -gamma)],
                               note="direct sum of two simple submodules")

    v_minus = VacuumSpec.verma(-1)
    if plus_one:
        return EClassification(None, False, module, note="lambda = 1 and gamma = 0: no case applies")
    if minus_one and _eq(p, 1):
        return EClassification(5, False, module,
                               submodules=[L(v_minus, lam, b, 1), Parity(0, b, -1), Parity(1, b, -1)],
                               quotients=[A(b, 0), A(b, 1)],
                               note="M2 = L(V(-1), -1, b, 0) splits into two parity summands")
    if minus_one and not p:
        return EClassification(6, False, module,
                               submodules=[Parity(0, b, -1), Parity(1, b, -1)],
                               quotients=[A(b, 0)],
                               note="M = L(V(-1), -1, b, 0) splits into two parity summands")
    if generic and _eq(p, 1):
        return EClassification(8, False, module,
                               submodules=[L(v_minus, lam, b, 1), L(v_minus, lam, b, 0)],
                               quotients=[A(b, 0), A(b, 1)],
                               note="composition series of length 3")
    return EClassification(7, False, module,
                           submodules=[L(v_minus, lam, b, p)],
                           quotients=[A(b, p)],
                           note="unique proper submodule")
