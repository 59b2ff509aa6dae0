# linear.py

"""Sparse linear combinations with exact coefficients.

Every element type of the package (Virasoro elements, PBW module elements,
loop elements, T-basis elements, intermediate-series vectors) is a
:class:`Combination`: a mapping from hashable basis keys to nonzero
``QQ_I`` coefficients. Zero coefficients are never stored, so two
combinations are equal exactly when their dictionaries are equal.
"""

from typing import Dict, Hashable, Iterable, Iterator, Tuple

from core.scalars import ZERO, Scalar, scalar


def accumulate(acc: Dict, key: Hashable, c: Scalar) -> None:
    """Add ``c`` to ``acc[key]`` in place, dropping the key if it cancels."""
    if not c:
        return
    total = acc.get(key, ZERO) + c
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


class Combination:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for key, c in dict(terms or {}).items():
            accumulate(clean, key, scalar(c))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict):
        """Wrap an already-canonical dict (QQ_I values, no zeros)."""
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    def _like(self, terms: Dict):
        """A combination of the same kind as ``self`` over ``terms``."""
        return type(self)._raw(terms)

    # ─── Mapping protocol ─────────────────────────────────────────────────────

    @property
    def terms(self) -> Dict:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Hashable, Scalar]]:
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key) -> Scalar:
        return self._terms.get(key, ZERO)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ─── Vector space operations ──────────────────────────────────────────────

    def _check_kind(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._check_kind(other)
        acc = dict(self._terms)
        for key, c in other.items():
            accumulate(acc, key, c)
        return self._like(acc)

    def __sub__(self, other):
        self._check_kind(other)
        acc = dict(self._terms)
        for key, c in other.items():
            accumulate(acc, key, -c)
        return self._like(acc)

    def __neg__(self):
        return self._like({key: -c for key, c in self._terms.items()})

    def scale(self, c) -> "Combination":
        c = scalar(c)
        if not c:
            return self._like({})
        return self._like({key: c * v for key, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def zero(self):
        return self._like({})

    def map_keys(self, fn) -> "Combination":
        """Relabel basis keys; colliding keys are summed."""
        acc = {}
        for key, c in self._terms.items():
            accumulate(acc, fn(key), c)
        return self._like(acc)

    def filter(self, predicate) -> "Combination":
        return self._like({key: c for key, c in self._terms.items() if predicate(key)})

    # ─── Equality ─────────────────────────────────────────────────────────────

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{key!r}: {c}" for key, c in sorted(self._terms.items(), key=lambda kv: repr(kv[0])))
        return f"{type(self).__name__}({{{body}}})"


def linear_sum(items: Iterable[Combination], start: Combination) -> Combination:
    """Sum combinations of one kind, starting from ``start`` (usually a zero)."""
    acc = dict(start.terms)
    for item in items:
        for key, c in item.items():
            accumulate(acc, key, c)
    return start._like(acc)
