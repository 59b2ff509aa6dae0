# seqcalc.py

"""Shift-operator calculus on exponential-polynomial sequences.

A sequence m -> sum_i lambda_i^m f_i(m) v_i with values in a finite
dimensional coefficient space P (vectors are tuples of scalars) is kept in
canonical form {lambda: {degree j: vector}}, i.e. as a combination of the
basic sequences lambda^m m^j. A polynomial p(x) = sum p_i x^i acts by
(p . T)(m) = sum_i p_i T(m + i).
"""

import logging
from math import factorial
from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring

from core.errors import ConsistencyError, ExtractionError, InvalidParameterError
from core.linalg import solve
from core.scalars import ONE, ZERO, Scalar, binomial, ratio, scalar

ShiftRing, X = ring("x", QQ_I)

Vector = Tuple[Scalar, ...]


def shift_polynomial(coefficients: Sequence) -> "ShiftRing.dtype":
    """Polynomial from coefficients listed from the constant term upward."""
    return ShiftRing.from_dict({(i,): scalar(c) for i, c in enumerate(coefficients) if scalar(c)})


def linear_factor(lam) -> "ShiftRing.dtype":
    """x - lambda."""
    return X - scalar(lam)


def _add_vec(u: Vector, v: Vector, c: Scalar = ONE) -> Vector:
    return tuple(a + c * b for a, b in zip(u, v))


def _is_zero(v: Vector) -> bool:
    return not any(v)


class ExpPolySequence:
    """Exponential-polynomial sequence in canonical {lambda: {j: vector}} form."""
    __slots__ = ("dim", "components")

    def __init__(self, dim: int, components: Dict[Scalar, Dict[int, Vector]] = None):
        self.dim = dim
        clean: Dict[Scalar, Dict[int, Vector]] = {}
        for lam, by_degree in (components or {}).items():
            lam = scalar(lam)
            if not lam:
                raise InvalidParameterError("exponential base must be nonzero")
            for j, vec in by_degree.items():
                vec = tuple(scalar(c) for c in vec)
                if len(vec) != dim:
                    raise InvalidParameterError(f"vector of length {len(vec)} in a space of dimension {dim}")
                if not _is_zero(vec):
                    clean.setdefault(lam, {})[j] = vec
        self.components = clean

    @classmethod
    def from_terms(cls, dim: int, terms: Sequence[Tuple]) -> "ExpPolySequence":
        """Build from (lambda, polynomial f, vector v) triples meaning lambda^m f(m) v."""
        acc: Dict[Scalar, Dict[int, Vector]] = {}
        for lam, f, vec in terms:
            lam = scalar(lam)
            vec = tuple(scalar(c) for c in vec)
            for (j,), c in f.terms():
                by_degree = acc.setdefault(lam, {})
                by_degree[j] = _add_vec(by_degree.get(j, (ZERO,) * dim), vec, c)
        return cls(dim, acc)

    @classmethod
    def basic(cls, lam, k: int, vec: Vector) -> "ExpPolySequence":
        """m -> lambda^m m^k vec."""
        return cls(len(vec), {scalar(lam): {k: tuple(vec)}})

    def terms(self) -> List[Tuple[Scalar, "ShiftRing.dtype", Vector]]:
        return [(lam, X ** j, vec) for lam, by_degree in self.components.items() for j, vec in sorted(by_degree.items())]

    def lambdas(self) -> List[Scalar]:
        return list(self.components)

    def __call__(self, m: int) -> Vector:
        total = (ZERO,) * self.dim
        for lam, by_degree in self.components.items():
            lm = lam ** m
            for j, vec in by_degree.items():
                total = _add_vec(total, vec, lm * ratio(m ** j))
        return total

    def is_zero(self) -> bool:
        return not self.components

    def _combine(self, other: "ExpPolySequence", c: Scalar) -> "ExpPolySequence":
        if other.dim != self.dim:
            raise InvalidParameterError("sequences live in spaces of different dimension")
        acc = {lam: dict(by_degree) for lam, by_degree in self.components.items()}
        for lam, by_degree in other.components.items():
            target = acc.setdefault(lam, {})
            for j, vec in by_degree.items():
                target[j] = _add_vec(target.get(j, (ZERO,) * self.dim), vec, c)
        return ExpPolySequence(self.dim, acc)

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def scale(self, c) -> "ExpPolySequence":
        c = scalar(c)
        return ExpPolySequence(self.dim, {
            lam: {j: tuple(c * x for x in vec) for j, vec in by_degree.items()}
            for lam, by_degree in self.components.items()
        })

    def __eq__(self, other):
        if not isinstance(other, ExpPolySequence):
            return NotImplemented
        return self.dim == other.dim and self.components == other.components

    def __repr__(self):
        return f"ExpPolySequence(dim={self.dim}, components={self.components!r})"


def shift_act(p, T: ExpPolySequence) -> ExpPolySequence:
    """(p . T)(m) = sum_i p_i T(m + i), computed termwise in closed form."""
    acc: Dict[Scalar, Dict[int, Vector]] = {}
    zero = (ZERO,) * T.dim
    for lam, by_degree in T.components.items():
        target = acc.setdefault(lam, {})
        for (i,), p_i in p.terms():
            weight = p_i * lam ** i
            for j, vec in by_degree.items():
                # (m + i)^j = sum_t C(j, t) i^(j-t) m^t
                for t in range(j + 1):
                    c = weight * ratio(binomial(j, t) * i ** (j - t))
                    if c:
                        target[t] = _add_vec(target.get(t, zero), vec, c)
    return ExpPolySequence(T.dim, acc)


def annihilator_check(p, lam, k: int) -> bool:
    """
    Whether p annihilates m -> lambda^m m^k.

    Computed once by applying p in closed form and once by testing
    (x - lambda)^(k+1) | p.

    Raises:
        ConsistencyError: if the two answers differ.
    """
    lam = scalar(lam)
    if not lam:
        raise InvalidParameterError("lambda must be nonzero")
    by_action = shift_act(p, ExpPolySequence.basic(lam, k, (ONE,))).is_zero()
    by_division = not p.rem(linear_factor(lam) ** (k + 1))
    if by_action != by_division:
        raise ConsistencyError(f"annihilator test disagrees for p={p}, lambda={lam}, k={k}")
    return by_action


# ─── Component extraction ────────────────────────────────────────────────────

def _consecutive_block(samples: Sequence[Tuple[int, Vector]], size: int) -> List[Tuple[int, Vector]]:
    by_m = {}
    for m, value in samples:
        by_m.setdefault(m, tuple(scalar(c) for c in value))
    ms = sorted(by_m)
    for start in range(len(ms)):
        block = ms[start:start + size]
        if len(block) == size and block[-1] - block[0] == size - 1:
            return [(m, by_m[m]) for m in block]
    raise ExtractionError(f"insufficient samples: need {size} consecutive integers, got {len(ms)} distinct points")


def _check_lambdas(lambdas) -> List[Scalar]:
    lambdas = [scalar(lam) for lam in lambdas]
    if any(not lam for lam in lambdas):
        raise ExtractionError("exponential bases must be nonzero")
    if len(set(lambdas)) != len(lambdas):
        raise ExtractionError("duplicate lambda in extraction basis")
    return lambdas


def extract_components(samples: Sequence[Tuple[int, Vector]], lambdas, k: int) -> List[Tuple[Scalar, int, Vector]]:
    """
    Recover v_{i,j} in T(m) = sum_{i,j} lambda_i^m m^j v_{i,j} (j <= k) from samples.

    Solves the generalized Vandermonde system on the first s(k+1) consecutive
    sample points, then checks every provided sample against the result.

    Returns:
        Nonzero components as (lambda_i, j, v_ij), ordered by lambda then j.
    """
    lambdas = _check_lambdas(lambdas)
    if not samples:
        raise ExtractionError("insufficient samples: none given")
    size = len(lambdas) * (k + 1)
    block = _consecutive_block(samples, size)
    dim = len(block[0][1])
    columns = [(lam, j) for lam in lambdas for j in range(k + 1)]
    matrix = [[lam ** m * ratio(m ** j) for lam, j in columns] for m, _ in block]
    rhs = [list(value) for _, value in block]
    solution = solve(matrix, rhs)
    logging.debug(f"Extracted {len(columns)} components of dimension {dim} from {len(samples)} samples")

    parts = {}
    for (lam, j), row in zip(columns, solution):
        parts.setdefault(lam, {})[j] = tuple(row)
    recovered = ExpPolySequence(dim, parts)
    for m, value in samples:
        if recovered(m) != tuple(scalar(c) for c in value):
            raise ExtractionError(f"inconsistent samples: reconstruction differs at m={m}")
    return [(lam, j, tuple(row)) for (lam, j), row in zip(columns, solution) if any(row)]


def cascade_extract(T: ExpPolySequence, lambdas, k: int) -> List[Tuple[Scalar, int, Vector]]:
    """
    Isolate components degree by degree with p_i(x) = p(x)/(x - lambda_i).

    For the current top degree d, p_i = (x - lambda_i)^d prod_{l != i} (x - lambda_l)^(d+1)
    kills every component except lambda_i^m m^d v_{i,d}, which it maps to
    d! lambda_i^(m+d) q_i(lambda_i) v_{i,d}. That component is then removed and
    the cascade continues with d - 1.
    """
    lambdas = _check_lambdas(lambdas)
    extra = set(T.lambdas()) - set(lambdas)
    if extra:
        raise ExtractionError(f"sequence has exponential bases outside the given list: {sorted(map(str, extra))}")
    found: Dict[Tuple[Scalar, int], Vector] = {}
    current = T
    for d in range(k, -1, -1):
        for i, lam in enumerate(lambdas):
            q = ShiftRing.one
            for l, other in enumerate(lambdas):
                if l != i:
                    q *= linear_factor(other) ** (d + 1)
            p_i = linear_factor(lam) ** d * q
            image = shift_act(p_i, current)
            scale = ratio(factorial(d)) * lam ** d * q(lam)
            vec = tuple(c / scale for c in image(0))
            if not _is_zero(vec):
                found[(lam, d)] = vec
        for (lam, j), vec in list(found.items()):
            if j == d:
                current = current - ExpPolySequence.basic(lam, d, vec)
    if not current.is_zero():
        raise ExtractionError("sequence has components above the degree bound")
    return [(lam, j, found[(lam, j)]) for lam in lambdas for j in range(k + 1) if (lam, j) in found]
