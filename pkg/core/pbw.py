# pbw.py

"""Induced Witt-algebra modules realized on PBW monomials.

A vacuum spec (r; mu_r, ..., mu_{2r}) is a one-dimensional module over the
tail subalgebra V^(r). Inducing up to the Borel subalgebra gives B (monomials
in d_0 .. d_{r-1}); inducing further gives W = C[d_{-1}] (x) B.

Monomials are stored as nondecreasing index tuples (``words``), so
``(-1, -1, 0)`` is d_{-1}^2 d_0 |vac>. The action of a single generator on a
word is computed by commuting it rightward until it is absorbed into the
word or reaches the vacuum; those results are cached per (spec, j, word).
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Tuple

from core.errors import (
    ConsistencyError,
    InvalidParameterError,
    LevelError,
    RequiresSimpleError,
    VacuumIndexError,
    ZeroElementError,
)
from core.linalg import EchelonSpan
from core.linear import Combination, accumulate
from core.scalars import ONE, ZERO, Scalar, ratio, scalar

Word = Tuple[int, ...]

# (spec, j, word) rewrites kept between clears; least recently used go first
ACT_CACHE_SIZE = 1 << 16


@dataclass(frozen=True)
class VacuumSpec:
    """Base level r and the charges mu_r, ..., mu_{2r} (r + 1 entries)."""
    r: int
    charges: Tuple[Scalar, ...]
    trivial: bool = False

    def __post_init__(self):
        if self.r < 0:
            raise InvalidParameterError(f"vacuum level must be nonnegative, got r={self.r}")
        charges = tuple(scalar(c) for c in self.charges)
        if len(charges) != self.r + 1:
            raise InvalidParameterError(
                f"vacuum spec at level r={self.r} needs {self.r + 1} charges, got {len(charges)}"
            )
        if self.trivial and (self.r != 0 or any(charges)):
            raise InvalidParameterError("the trivial spec is r=0 with zero charge")
        object.__setattr__(self, "charges", charges)

    @classmethod
    def verma(cls, bprime) -> "VacuumSpec":
        """Highest-weight spec: r = 0, d_0 acts on the vacuum by ``bprime``."""
        return cls(0, (scalar(bprime),))

    @classmethod
    def trivial_spec(cls) -> "VacuumSpec":
        return cls(0, (ZERO,), trivial=True)

    @property
    def is_verma(self) -> bool:
        return self.r == 0 and not self.trivial

    @property
    def highest_weight(self) -> Scalar:
        return self.charges[0]

    def charge(self, j: int) -> Scalar:
        return self.charges[j - self.r]


class Level(Enum):
    B = 0    # indices 0 .. r-1
    W = -1   # indices -1 .. r-1

    @property
    def lo(self) -> int:
        return self.value


class ModuleElement(Combination):
    """Sparse combination of PBW words applied to the vacuum, at level B or W."""
    __slots__ = ("level",)

    def __init__(self, terms=None, level: Level = Level.W):
        super().__init__(terms)
        self.level = level
        for word in self._terms:
            if word and word[0] < level.lo:
                raise LevelError(f"word {word} is below the {level.name}-level bound")

    @classmethod
    def _raw(cls, terms, level: Level = Level.W):
        obj = super()._raw(terms)
        obj.level = level
        return obj

    def _like(self, terms):
        return ModuleElement._raw(terms, self.level)

    def _check_kind(self, other):
        super()._check_kind(other)
        if other.level is not self.level:
            raise TypeError("cannot combine elements of different levels")

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.level is other.level and self._terms == other._terms

    __hash__ = Combination.__hash__


def vacuum(level: Level = Level.W) -> ModuleElement:
    return ModuleElement._raw({(): ONE}, level)


def monomial(word: Iterable[int], level: Level = Level.W, c=ONE) -> ModuleElement:
    word = tuple(word)
    if list(word) != sorted(word):
        raise InvalidParameterError(f"word {word} is not in PBW normal order")
    return ModuleElement({word: c}, level)


def d_minus_one_degree(word: Word) -> int:
    e = 0
    while e < len(word) and word[e] == -1:
        e += 1
    return e


def split_word(word: Word) -> Tuple[int, Word]:
    """Split a W-level word into its d_{-1}-exponent and its B-level tail."""
    e = d_minus_one_degree(word)
    return e, word[e:]


def b_degree(word: Word) -> int:
    return len(word) - d_minus_one_degree(word)


def top_degree(v: ModuleElement) -> int:
    return max(d_minus_one_degree(word) for word in v.keys())


def b_words(r: int, bmax: int) -> List[Word]:
    """All B-level words of length <= bmax over d_0 .. d_{r-1}."""
    if r == 0:
        return [()]
    words = []
    for length in range(bmax + 1):
        words.extend(itertools.combinations_with_replacement(range(r), length))
    return words


def w_words(r: int, dmax: int, bmax: int) -> List[Word]:
    return [(-1,) * e + tail for e in range(dmax + 1) for tail in b_words(r, bmax)]


# ─── Single-generator action ─────────────────────────────────────────────────

def vacuum_charge(spec: VacuumSpec, j: int) -> Scalar:
    if j < spec.r:
        raise VacuumIndexError(f"index {j} is not a vacuum-level index (r={spec.r})")
    if spec.trivial or j > 2 * spec.r:
        return ZERO
    return spec.charge(j)


@lru_cache(maxsize=ACT_CACHE_SIZE)
def _act_word(spec: VacuumSpec, j: int, word: Word) -> Tuple[Tuple[Word, Scalar], ...]:
    if spec.trivial:
        return ()
    if not word:
        if j >= spec.r:
            c = vacuum_charge(spec, j)
            return (((), c),) if c else ()
        return (((j,), ONE),)
    g = word[0]
    if j <= g:
        return (((j,) + word, ONE),)
    # d_j d_g = d_g d_j + (g - j) d_{g+j}
    rest = word[1:]
    acc: Dict[Word, Scalar] = {}
    for w, c in _act_word(spec, j, rest):
        for w2, c2 in _act_word(spec, g, w):
            accumulate(acc, w2, c * c2)
    shift = ratio(g - j)
    for w, c in _act_word(spec, g + j, rest):
        accumulate(acc, w, shift * c)
    return tuple(acc.items())


def act_on_word(spec: VacuumSpec, j: int, word: Word) -> Tuple[Tuple[Word, Scalar], ...]:
    """d_j applied to one PBW word, as (word, coefficient) pairs. No level checks."""
    # Condition A: d_j kills a word once j exceeds 2r + its d_{-1}-exponent
    if j > 2 * spec.r + d_minus_one_degree(word):
        return ()
    return _act_word(spec, j, word)


def act(spec: VacuumSpec, j: int, v: ModuleElement) -> ModuleElement:
    """Return d_j . v in PBW normal form."""
    if j < v.level.lo:
        raise LevelError(f"d_{j} does not act on {v.level.name}-level elements")
    acc: Dict[Word, Scalar] = {}
    for word, c in v.items():
        for w, c2 in act_on_word(spec, j, word):
            accumulate(acc, w, c * c2)
    return ModuleElement._raw(acc, v.level)


def act_cache_info():
    return _act_word.cache_info()


def clear_caches() -> None:
    info = _act_word.cache_info()
    logging.debug(f"Clearing PBW action cache ({info.currsize} entries, {info.hits} hits)")
    _act_word.cache_clear()


def annihilation_bound(spec: VacuumSpec, v: ModuleElement) -> int:
    """N such that d_j v = 0 for every j > N."""
    return 2 * spec.r + (top_degree(v) if v else 0)


# ─── Order and socle ─────────────────────────────────────────────────────────

def order(spec: VacuumSpec, v: ModuleElement) -> int:
    """Minimal n >= 0 with d_{n+i} v = 0 for all i >= 1."""
    if not v:
        raise ZeroElementError("order undefined for zero")
    for j in range(annihilation_bound(spec, v), 0, -1):
        if act(spec, j, v):
            return j
    return 0


def is_in_socle(v: ModuleElement) -> bool:
    return all(d_minus_one_degree(word) == 0 for word in v.keys())


def is_simple_induced(spec: VacuumSpec) -> bool:
    if spec.trivial:
        return False
    if spec.r == 0:
        return bool(spec.highest_weight)
    return bool(spec.charge(2 * spec.r)) or bool(spec.charge(2 * spec.r - 1))


def require_simple(spec: VacuumSpec) -> None:
    if not is_simple_induced(spec):
        raise RequiresSimpleError(f"requires simple W, got {spec}")


def socle_order(spec: VacuumSpec) -> int:
    return order(spec, vacuum(Level.W))


def socle_component(v: ModuleElement, e: int) -> ModuleElement:
    """The B-level coefficient w_e of d_{-1}^e in v = sum_e d_{-1}^e w_e."""
    acc = {}
    for word, c in v.items():
        deg, tail = split_word(word)
        if deg == e:
            acc[tail] = c
    return ModuleElement._raw(acc, Level.B)


def raise_by(v: ModuleElement, e: int) -> ModuleElement:
    """d_{-1}^e v for a B-level (or socle) element, returned at W-level."""
    return ModuleElement._raw({(-1,) * e + word: c for word, c in v.items()}, Level.W)


def essential_descent(spec: VacuumSpec, v: ModuleElement) -> ModuleElement:
    """
    Compute d_{r+s} v for v with top d_{-1}-degree s and r the socle order,
    checking it against (-1)^s (r+s+1)!/(r+1)! d_r w_s.

    Raises:
        ConsistencyError: if the two computations disagree.
    """
    if not v:
        raise ZeroElementError("descent undefined for zero")
    r = socle_order(spec)
    s = top_degree(v)
    lhs = act(spec, r + s, v)
    w_s = socle_component(v, s)
    factor = ratio((-1) ** s * factorial(r + s + 1), factorial(r + 1))
    rhs = raise_by(act(spec, r, w_s), 0).scale(factor)
    if lhs != rhs:
        raise ConsistencyError(f"essential descent mismatch for d_{r + s} on {v!r}")
    return lhs


def socle_operator_injective(spec: VacuumSpec, degree: int) -> bool:
    """Rank check: d_{ord(vac)} is injective on B-level words of length <= degree."""
    require_simple(spec)
    r = socle_order(spec)
    span = EchelonSpan(sort_key=lambda word: (len(word), word))
    words = b_words(spec.r, degree)
    for word in words:
        image = act(spec, r, ModuleElement._raw({word: ONE}, Level.B))
        if not span.add(image.terms):
            logging.debug(f"d_{r} is not injective on B-level slice of degree {degree}")
            return False
    return True
