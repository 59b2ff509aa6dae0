# sampling.py

"""Seeded random elements for the check suite and property tests."""

import random
from typing import Optional

from core.algebra import VirasoroElement
from core.loopmod import LoopElement
from core.pbw import Level, ModuleElement, VacuumSpec, b_words, w_words
from core.scalars import Scalar, ratio

_NUMERATORS = (-3, -2, -1, 1, 2, 3)
_DENOMINATORS = (1, 1, 1, 2, 3)


def random_scalar(rng: random.Random) -> Scalar:
    """Small nonzero rational."""
    return ratio(rng.choice(_NUMERATORS), rng.choice(_DENOMINATORS))


def _pick_words(rng: random.Random, words, terms: int):
    return rng.sample(words, min(terms, len(words)))


def random_module_element(rng: random.Random, spec: VacuumSpec, dmax: int, bmax: int,
                          level: Level = Level.W, terms: int = 3) -> ModuleElement:
    if spec.trivial:
        words = [()]
    elif level is Level.B:
        words = b_words(spec.r, bmax)
    else:
        words = w_words(spec.r, dmax, bmax)
    return ModuleElement({word: random_scalar(rng) for word in _pick_words(rng, words, terms)}, level)


def random_loop_element(rng: random.Random, spec: VacuumSpec, dmax: int, bmax: int,
                        window=(-3, 3), terms: int = 3, index: Optional[int] = None,
                        level: Level = Level.W) -> LoopElement:
    """Random loop element; homogeneous at ``index`` when given."""
    if spec.trivial:
        words = [()]
    elif level is Level.B:
        words = b_words(spec.r, bmax)
    else:
        words = w_words(spec.r, dmax, bmax)
    lo, hi = window
    acc = {}
    for word in _pick_words(rng, words, terms):
        n = index if index is not None else rng.randint(lo, hi)
        acc[(word, n)] = random_scalar(rng)
    return LoopElement(acc)


def random_virasoro(rng: random.Random, span: int = 4, terms: int = 3, central: bool = True) -> VirasoroElement:
    acc = {rng.randint(-span, span): random_scalar(rng) for _ in range(terms)}
    if central and rng.random() < 0.5:
        acc["z"] = random_scalar(rng)
    return VirasoroElement(acc)
