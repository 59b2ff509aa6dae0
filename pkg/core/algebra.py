# algebra.py

"""Structure constants of the Virasoro algebra and its standard subalgebras.

Sign convention: [d_m, d_n] = (n - m) d_{m+n} + delta_{m,-n} (m^3 - m)/12 z,
so that [d_0, d_{-1}] = -d_{-1}.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Tuple

from core.errors import InvalidParameterError
from core.linear import Combination, accumulate
from core.scalars import ONE, ZERO, Scalar, ratio, scalar

CENTRAL = "z"


class VirasoroElement(Combination):
    """Finite combination of generators d_k (keys: int) and the central z (key: ``"z"``)."""
    __slots__ = ()

    @property
    def central(self) -> Scalar:
        return self.coefficient(CENTRAL)

    def generator_terms(self) -> dict:
        return {k: c for k, c in self.items() if k != CENTRAL}

    def indices(self) -> list:
        return sorted(k for k in self.keys() if k != CENTRAL)


def generator(k: int, c=ONE) -> VirasoroElement:
    return VirasoroElement({k: c})


def central_element(c=ONE) -> VirasoroElement:
    return VirasoroElement({CENTRAL: c})


def bracket(m: int, n: int) -> VirasoroElement:
    """Return [d_m, d_n] including the central term."""
    acc = {}
    if n != m:
        acc[m + n] = ratio(n - m)
    if m + n == 0 and m ** 3 != m:
        acc[CENTRAL] = ratio(m ** 3 - m, 12)
    return VirasoroElement._raw(acc)


def bracket_elements(x: VirasoroElement, y: VirasoroElement) -> VirasoroElement:
    """Bilinear extension of :func:`bracket`; central components contribute nothing."""
    acc = {}
    for m, cx in x.generator_terms().items():
        for n, cy in y.generator_terms().items():
            for key, c in bracket(m, n).items():
                accumulate(acc, key, cx * cy * c)
    return VirasoroElement._raw(acc)


def jacobi_sum(x: VirasoroElement, y: VirasoroElement, w: VirasoroElement) -> VirasoroElement:
    """[x,[y,w]] + [y,[w,x]] + [w,[x,y]]; zero for a Lie algebra."""
    return (bracket_elements(x, bracket_elements(y, w))
            + bracket_elements(y, bracket_elements(w, x))
            + bracket_elements(w, bracket_elements(x, y)))


# ─── Subalgebras ─────────────────────────────────────────────────────────────

class SubalgebraKind(Enum):
    WITT = "witt"            # d_i, i >= -1
    BOREL = "borel"          # d_i, i >= 0
    TAIL = "tail"            # d_i, i >= r
    QUOTIENT = "quotient"    # b / V^(r+1), represented by d_0 .. d_r


@dataclass(frozen=True)
class SubalgebraSpec:
    kind: SubalgebraKind
    r: int = 0

    def __post_init__(self):
        if self.kind in (SubalgebraKind.TAIL, SubalgebraKind.QUOTIENT) and self.r < 0:
            raise InvalidParameterError(f"subalgebra level must be nonnegative, got r={self.r}")

    def contains_index(self, k: int) -> bool:
        if self.kind is SubalgebraKind.WITT:
            return k >= -1
        if self.kind is SubalgebraKind.BOREL:
            return k >= 0
        if self.kind is SubalgebraKind.TAIL:
            return k >= self.r
        return 0 <= k <= self.r


def in_subalgebra(x: VirasoroElement, s: SubalgebraSpec) -> bool:
    # z lies in none of the subalgebras
    if x.central:
        return False
    return all(s.contains_index(k) for k in x.generator_terms())


# ─── Degree-2 operator words ─────────────────────────────────────────────────

@dataclass(frozen=True)
class OperatorWord:
    """Sum of coefficient * d_{i_1} d_{i_2} ... ; each product acts right to left."""
    summands: Tuple[Tuple[Scalar, Tuple[int, ...]], ...] = field(default=())

    def __post_init__(self):
        clean = []
        for coeff, indices in self.summands:
            indices = tuple(int(i) for i in indices)
            if not indices:
                raise InvalidParameterError("operator word summand has no generators")
            clean.append((scalar(coeff), indices))
        object.__setattr__(self, "summands", tuple(clean))

    def coefficient_sum(self) -> Scalar:
        total = ZERO
        for coeff, _ in self.summands:
            total += coeff
        return total

    def __iter__(self) -> Iterable[Tuple[Scalar, Tuple[int, ...]]]:
        return iter(self.summands)


def x_word(l: int, m: int) -> OperatorWord:
    """d_{l-m-3}d_{m+3} - 3 d_{l-m-2}d_{m+2} + 3 d_{l-m-1}d_{m+1} - d_{l-m}d_m."""
    return OperatorWord(tuple(
        (ratio(c), (l - m - 3 + j, m + 3 - j))
        for j, c in enumerate((1, -3, 3, -1))
    ))


def commutator_word(m: int, n: int) -> OperatorWord:
    """d_m d_n - d_n d_m as an operator word."""
    return OperatorWord(((ONE, (m, n)), (-ONE, (n, m))))
