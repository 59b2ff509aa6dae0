# cm_compat.py

"""Closed-form actions used as independent oracles for the rewriting engine.

* the T-basis action on E(lambda, b, gamma, p), with T_i^k = (-1)^k d_{-1}^k w_0 (x) t^i
* the parameter dictionary E(lambda, b, gamma, p) = L(Verma -gamma, lambda, b, gamma + p)
* the direct formula for the charge module at level r = 1, over C[d_{-1}, d_0]
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring

from core.classify import dual_pair, phi
from core.errors import ConsistencyError, GammaZeroError, InvalidParameterError
from core.linear import Combination, accumulate
from core.loopmod import LoopElement, LParams
from core.pbw import VacuumSpec, d_minus_one_degree
from core.scalars import ONE, Scalar, binomial, ratio, scalar

ChargeRing, Y, Z = ring("y,z", QQ_I)


@dataclass(frozen=True)
class EParams:
    lam: Scalar
    b: Scalar
    gamma: Scalar
    p: Scalar

    def __post_init__(self):
        lam = scalar(self.lam)
        if not lam:
            raise InvalidParameterError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        for name in ("b", "gamma", "p"):
            object.__setattr__(self, name, scalar(getattr(self, name)))

    @property
    def bprime(self) -> Scalar:
        return -self.gamma

    @property
    def twist(self) -> Scalar:
        """The L-module parameter b = gamma + p."""
        return self.gamma + self.p


class TBasisElement(Combination):
    """Keys are (k, i) for T_i^k."""
    __slots__ = ()


def t_basis(k: int, i: int, c=ONE) -> TBasisElement:
    if k < 0:
        raise InvalidParameterError(f"T-basis degree must be nonnegative, got {k}")
    return TBasisElement({(k, i): c})


# ─── T-basis action ──────────────────────────────────────────────────────────

def cm_act(E: EParams, n: int, v: TBasisElement) -> TBasisElement:
    """
    d_n . T_i^k = lambda^n n b' sum_{j<k} C(k,j) n^(k-j) T_{i+n}^j
                - lambda^n sum_{j<k-1} C(k,j) n^(k-j) T_{i+n}^(j+1)
                + (1 - lambda^n) T_{i+n}^(k+1)
                + (a + n b + i + lambda^n n b' - lambda^n n k) T_{i+n}^k

    with b' = -gamma, a = E.b and b = gamma + p.
    """
    ln = E.lam ** n
    a, b, bprime = E.b, E.twist, E.bprime
    acc = {}
    for (k, i), c in v.items():
        target = i + n
        for j in range(k):
            accumulate(acc, (j, target), c * ln * n * bprime * ratio(binomial(k, j) * n ** (k - j)))
        for j in range(k - 1):
            accumulate(acc, (j + 1, target), -c * ln * ratio(binomial(k, j) * n ** (k - j)))
        accumulate(acc, (k + 1, target), c * (ONE - ln))
        accumulate(acc, (k, target), c * (a + n * b + i + ln * n * bprime - ln * n * k))
    return TBasisElement._raw(acc)


def to_loop(v: TBasisElement) -> LoopElement:
    """T_i^k -> (-1)^k d_{-1}^k w_0 (x) t^i."""
    return LoopElement._raw({((-1,) * k, i): c if k % 2 == 0 else -c for (k, i), c in v.items()})


def from_loop(v: LoopElement) -> TBasisElement:
    acc = {}
    for (word, i), c in v.items():
        k = d_minus_one_degree(word)
        if k != len(word):
            raise InvalidParameterError(f"word {word} is not in C[d_(-1)] w_0")
        acc[(k, i)] = c if k % 2 == 0 else -c
    return TBasisElement._raw(acc)


# ─── Parameter dictionary ────────────────────────────────────────────────────

def e_to_l(E: EParams) -> LParams:
    if not E.gamma:
        raise GammaZeroError("gamma = 0: the weight-0 Verma module is not simple; use classify_E")
    return LParams(VacuumSpec.verma(E.bprime), E.lam, E.b, E.twist)


def e_dual(E: EParams) -> EParams:
    """(lambda, b, gamma, p) -> (1/lambda, b, 1 - gamma - p, p)."""
    return EParams(ONE / E.lam, E.b, ONE - E.gamma - E.p, E.p)


def dual_map(E: EParams, v: TBasisElement) -> TBasisElement:
    """phi read in T-bases, from E into e_dual(E)."""
    source, _ = dual_pair(E.lam, E.b, E.bprime, e_dual(E).bprime)
    if source != e_to_l(E):
        raise ConsistencyError("dual pair source differs from the E-module dictionary")
    return from_loop(phi(E.lam, E.b, E.bprime, e_dual(E).bprime, to_loop(v)))


# ─── Charge module at level 1 ────────────────────────────────────────────────

def _to_loop_element(poly, n: int) -> LoopElement:
    acc = {}
    for (p, q), c in poly.terms():
        accumulate(acc, ((-1,) * p + (0,) * q, n), c)
    return LoopElement._raw(acc)


def level1_poly(mu1, mu2, lam, a, b, m: int, i: int, j: int, k: int):
    """
    d_m . (d_{-1}^i d_0^j (x) t^k) as a polynomial in y = d_{-1}, z = d_0
    (monomials y^p z^q read as normal-ordered words), landing at t^(k+m).
    """
    mu1, mu2, lam, a, b = (scalar(x) for x in (mu1, mu2, lam, a, b))
    if not lam:
        raise InvalidParameterError("lambda must be nonzero")
    inner = (
        Y * Z ** j
        + m * Z ** (j + 1)
        + (Z - 1) ** j * (ratio(m ** 2, 2) * mu1)
        + (Z - 2) ** j * (ratio(m ** 3, 6) * mu2)
    )
    # ring elements stay on the left: QQ_I * ground polynomial collapses to a scalar
    return (Y - m) ** i * inner * lam ** m + (-Y + a + k + b * m) * Y ** i * Z ** j


def level1_act(mu1, mu2, lam, a, b, m: int, indices: Tuple[int, int, int]) -> LoopElement:
    i, j, k = indices
    return _to_loop_element(level1_poly(mu1, mu2, lam, a, b, m, i, j, k), k + m)


example3_act = level1_act


def level1_spec(mu1, mu2) -> VacuumSpec:
    return VacuumSpec(1, (scalar(mu1), scalar(mu2)))


def validate_level1_degeneration(mu1, mu2, lam, a, b, i: int, j: int, k: int) -> None:
    """
    At m = 0 the formula must reduce to (a + k) d_{-1}^i d_0^j (x) t^k: the
    d_{-1} d_0^j summand cancels against -d_{-1}.

    Raises:
        ConsistencyError: if the degeneration fails.
    """
    got = level1_poly(mu1, mu2, lam, a, b, 0, i, j, k)
    expected = Y ** i * Z ** j * (scalar(a) + k)
    if got != expected:
        logging.error(f"m = 0 degeneration failed at (i, j, k) = {(i, j, k)}")
        raise ConsistencyError("charge-module formula does not reduce to the weight action at m = 0")
