# linalg.py

"""Exact linear algebra over ``QQ_I``.

:class:`EchelonSpan` keeps an incrementally growing span of sparse vectors
in row-echelon form. Dense solves and ranks go through sympy's
``DomainMatrix`` so no entry ever leaves the Gaussian-rational domain.
"""

import logging
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from core.linear import accumulate
from core.scalars import ZERO, Scalar


class EchelonSpan:
    """
    A subspace of a sparse coordinate space, stored as row-echelon rows.

    Each row is keyed by its pivot, the smallest key of its support under
    ``sort_key``, and is normalized so the pivot coefficient is 1. Mutable,
    so the spans of new vectors can be added cheaply one at a time.
    """
    __slots__ = ["sort_key", "rows"]

    def __init__(self, sort_key: Optional[Callable] = None):
        self.sort_key = sort_key or (lambda key: key)
        self.rows: Dict[Hashable, Dict[Hashable, Scalar]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Dict) -> Dict:
        """Reduce ``vec`` against the stored rows; the result is zero iff vec is in the span."""
        vec = dict(vec)
        rows = self.rows
        while True:
            pivots = [key for key in vec if key in rows]
            if not pivots:
                return vec
            # eliminating the smallest pivot only introduces larger keys
            pivot = min(pivots, key=self.sort_key)
            c = vec[pivot]
            for key, rc in rows[pivot].items():
                accumulate(vec, key, -c * rc)

    def __contains__(self, vec: Dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Dict) -> bool:
        """Add ``vec`` to the span. Returns True if the rank grew."""
        rest = self.reduce(vec)
        if not rest:
            return False
        pivot = min(rest, key=self.sort_key)
        inv = QQ_I.one / rest[pivot]
        self.rows[pivot] = {key: c * inv for key, c in rest.items()}
        return True

    def extend(self, vecs) -> int:
        return sum(1 for vec in vecs if self.add(vec))

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self.sort_key)

    def basis(self) -> List[Dict]:
        return [dict(self.rows[p]) for p in self.pivots()]


def span_rank(vectors: Sequence[Dict]) -> int:
    span = EchelonSpan(sort_key=repr)
    return span.extend(vectors)


def to_domain_matrix(rows: Sequence[Sequence[Scalar]], ncols: int) -> DomainMatrix:
    """Build a dense ``DomainMatrix`` over ``QQ_I`` from rows of domain elements."""
    rows = [list(row) for row in rows]
    return DomainMatrix(rows, (len(rows), ncols), QQ_I)


def sparse_to_dense(vectors: Sequence[Dict], keys: Sequence[Hashable]) -> List[List[Scalar]]:
    return [[vec.get(key, ZERO) for key in keys] for vec in vectors]


def matrix_rank(rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return to_domain_matrix(rows, ncols).rank()


def solve(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """
    Solve ``matrix · X = rhs`` exactly for a square invertible ``matrix``.

    Raises:
        ZeroDivisionError / sympy's NonInvertibleMatrixError if ``matrix`` is singular.
    """
    n = len(matrix)
    width = len(rhs[0]) if rhs else 0
    logging.debug(f"Exact solve of size {n}x{n} with {width} right-hand sides")
    A = to_domain_matrix(matrix, n)
    B = to_domain_matrix(rhs, width)
    return A.lu_solve(B).to_list()
