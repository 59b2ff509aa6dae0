# loopmod.py

"""Loop modules over the Virasoro algebra.

* L(W, lambda, a, b) = W (x) C[t, t^-1] with
  d_k . (w (x) t^j) = (lambda^k sum_i k^i/i! d_{i-1} w - d_{-1} w + (a + kb + j) w) (x) t^{k+j}
* N(B, a) with B twisted by b: d_0 acts on B as d_0 + b
* A_{a,b}: d_m v_n = (a + n + bm) v_{n+m}

Each parameter object is also a module handle: ``handle.act(k, v)`` and
``handle.weight(n)``. The central element acts as zero everywhere.
"""

from dataclasses import dataclass, replace
from math import factorial
from typing import Dict, Protocol, Tuple

from core.algebra import OperatorWord, VirasoroElement
from core.errors import InvalidParameterError, NotHomogeneousError, ZeroElementError
from core.linear import Combination, accumulate
from core.pbw import (
    Level,
    ModuleElement,
    VacuumSpec,
    Word,
    act_on_word,
    d_minus_one_degree,
)
from core.scalars import ONE, Scalar, ratio, scalar


class LoopElement(Combination):
    """Keys are (word, n): the PBW word applied to the vacuum, tensored with t^n."""
    __slots__ = ()

    def indices(self) -> list:
        return sorted({n for _, n in self.keys()})

    def component(self, n: int, level: Level = Level.W) -> ModuleElement:
        return ModuleElement._raw({word: c for (word, m), c in self.items() if m == n}, level)

    def homogeneous_parts(self) -> Dict[int, "LoopElement"]:
        parts: Dict[int, Dict] = {}
        for (word, n), c in self.items():
            parts.setdefault(n, {})[(word, n)] = c
        return {n: LoopElement._raw(terms) for n, terms in sorted(parts.items())}

    def words(self) -> set:
        return {word for word, _ in self.keys()}


class SeriesElement(Combination):
    """Element of A_{a,b}; keys are the basis indices n of v_n."""
    __slots__ = ()


def tensor(v: ModuleElement, n: int) -> LoopElement:
    return LoopElement._raw({(word, n): c for word, c in v.items()})


def loop_monomial(word: Word, n: int, c=ONE) -> LoopElement:
    return LoopElement({(tuple(word), n): c})


def series_vector(n: int, c=ONE) -> SeriesElement:
    return SeriesElement({n: c})


# ─── Parameters / module handles ─────────────────────────────────────────────

class LoopModule(Protocol):
    a: Scalar

    def act(self, k: int, v): ...

    def weight(self, n: int) -> Scalar: ...


@dataclass(frozen=True)
class LParams:
    spec: VacuumSpec
    lam: Scalar
    a: Scalar
    b: Scalar

    def __post_init__(self):
        lam = scalar(self.lam)
        if not lam:
            raise InvalidParameterError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", scalar(self.a))
        object.__setattr__(self, "b", scalar(self.b))

    def act(self, k: int, v: LoopElement) -> LoopElement:
        return l_act(self, k, v)

    def weight(self, n: int) -> Scalar:
        return self.a + n

    def with_b(self, b) -> "LParams":
        return replace(self, b=scalar(b))


@dataclass(frozen=True)
class NParams:
    spec: VacuumSpec
    a: Scalar
    twist: Scalar

    def __post_init__(self):
        object.__setattr__(self, "a", scalar(self.a))
        object.__setattr__(self, "twist", scalar(self.twist))

    def act(self, k: int, v: LoopElement) -> LoopElement:
        return n_act(self, k, v)

    def weight(self, n: int) -> Scalar:
        return self.a + n


@dataclass(frozen=True)
class AParams:
    a: Scalar
    b: Scalar

    def __post_init__(self):
        object.__setattr__(self, "a", scalar(self.a))
        object.__setattr__(self, "b", scalar(self.b))

    def act(self, k: int, v: SeriesElement) -> SeriesElement:
        acc = {}
        for n, c in v.items():
            coeff, target = a_act(self.a, self.b, k, n)
            accumulate(acc, target, c * coeff)
        return SeriesElement._raw(acc)

    def weight(self, n: int) -> Scalar:
        return self.a + n


def degenerate_params(a, b, lam=ONE) -> LParams:
    """L(trivial W, lambda, a, b), which realizes A_{a,b}."""
    return LParams(VacuumSpec.trivial_spec(), lam, a, b)


# ─── Actions ─────────────────────────────────────────────────────────────────

def l_act(P: LParams, k: int, v: LoopElement) -> LoopElement:
    spec = P.spec
    lk = P.lam ** k
    acc: Dict = {}
    for (word, j), c in v.items():
        target = j + k
        # d_{i-1} word vanishes for i - 1 > 2r + (d_{-1}-exponent)
        top = 2 * spec.r + d_minus_one_degree(word) + 1
        for i in range(top + 1):
            coeff = lk * ratio(k ** i, factorial(i))
            if not coeff:
                continue
            for w, c2 in act_on_word(spec, i - 1, word):
                accumulate(acc, (w, target), c * coeff * c2)
        for w, c2 in act_on_word(spec, -1, word):
            accumulate(acc, (w, target), -c * c2)
        accumulate(acc, (word, target), c * (P.a + k * P.b + j))
    return LoopElement._raw(acc)


def a_act(a, b, m: int, n: int) -> Tuple[Scalar, int]:
    """d_m v_n = (a + n + bm) v_{n+m}."""
    return scalar(a) + n + scalar(b) * m, n + m


def n_act(N: NParams, k: int, v: LoopElement) -> LoopElement:
    spec = N.spec
    acc: Dict = {}
    for (word, n), c in v.items():
        if word and word[0] < 0:
            raise InvalidParameterError("N-module elements must be B-level")
        target = n + k
        accumulate(acc, (word, target), c * (N.a + n + k * N.twist))
        if k:
            for w, c2 in act_on_word(spec, 0, word):
                accumulate(acc, (w, target), c * k * c2)
        for j in range(2, 2 * spec.r + 2):
            coeff = ratio(k ** j, factorial(j))
            if not coeff:
                continue
            for w, c2 in act_on_word(spec, j - 1, word):
                accumulate(acc, (w, target), c * coeff * c2)
    return LoopElement._raw(acc)


def weight_of(module: LoopModule, v) -> Scalar:
    if not v:
        raise ZeroElementError("weight of the zero element is undefined")
    if isinstance(v, SeriesElement):
        indices = set(v.keys())
    else:
        indices = {n for _, n in v.keys()}
    if len(indices) != 1:
        raise NotHomogeneousError(f"not homogeneous: loop indices {sorted(indices)}")
    return module.weight(indices.pop())


def act_element(module: LoopModule, x: VirasoroElement, v):
    """Apply a Virasoro element; z acts as zero."""
    result = v.zero()
    for k, c in x.generator_terms().items():
        result = result + module.act(k, v).scale(c)
    return result


def apply_word(word: OperatorWord, module: LoopModule, v):
    """Sum over summands of coefficient * composed action, rightmost index first."""
    result = v.zero()
    for coeff, indices in word:
        w = v
        for k in reversed(indices):
            w = module.act(k, w)
            if not w:
                break
        result = result + w.scale(coeff)
    return result
