"""Intersection matrices, exact rank and the three independent curve families."""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence

import numpy as np

from app.errors import ContractViolation
from app.divisors.classes import FCurve, intersect_BF
from app.divisors.cb import genus_of, intersect_cb_fcurve
from app.fusion.ranks import rank_1t

FAMILY_LABELS = ("C1", "C2", "C3")


def bareiss_rank(matrix: np.ndarray) -> int:
    """Exact rank by fraction-free elimination.

    Rows are scaled to integers first; every division in the elimination is exact.
    """
    if matrix.size == 0:
        return 0
    rows = []
    for row in matrix:
        values = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in values)) if values else 1
        rows.append([int(v * scale) for v in values])
    A = np.array(rows, dtype=object)
    m, cols = A.shape
    rank, previous = 0, 1
    for col in range(cols):
        if rank == m:
            break
        pivot_rows = [r for r in range(rank, m) if A[r, col] != 0]
        if not pivot_rows:
            continue
        p = pivot_rows[0]
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        pivot = A[rank, col]
        for r in range(rank + 1, m):
            A[r, col + 1:] = (pivot * A[r, col + 1:] - A[r, col] * A[rank, col + 1:]) // previous
            A[r, col] = 0
        previous = pivot
        rank += 1
    return rank


def intersection_matrix(curves: Sequence[FCurve], n: int) -> np.ndarray:
    """Rows are curves, columns B_2..B_{n//2}; entries B_j . curve."""
    columns = range(2, n // 2 + 1)
    for curve in curves:
        if curve.n != n:
            raise ContractViolation("fcurve", f"{curve.label()} does not live on M_0,{n}")
    data = [[Fraction(intersect_BF(j, curve)) for j in columns] for curve in curves]
    return np.array(data, dtype=object).reshape(len(curves), len(columns))


def independence_rank(curves: Sequence[FCurve], n: int) -> int:
    return bareiss_rank(intersection_matrix(curves, n))


def combination_row(combination: Dict[FCurve, int], n: int) -> List[int]:
    """B_2..B_{n//2} intersected with a formal integer combination of F-curves."""
    matrix = intersection_matrix(list(combination), n)
    weights = list(combination.values())
    return [int(sum(w * row[j] for w, row in zip(weights, matrix))) for j in range(matrix.shape[1])]


# C3 spans g-1 dimensions; for odd g past n = 8 its g curves carry one relation
C3_RELATIONS: Dict[int, Dict[FCurve, int]] = {
    12: {
        FCurve.of(9, 1, 1, 1): -1, FCurve.of(7, 3, 1, 1): 3,
        FCurve.of(5, 3, 3, 1): -3, FCurve.of(3, 3, 3, 3): 1,
    },
    16: {
        FCurve.of(13, 1, 1, 1): -1, FCurve.of(11, 3, 1, 1): 3, FCurve.of(9, 5, 1, 1): -1,
        FCurve.of(7, 7, 1, 1): 1, FCurve.of(9, 3, 3, 1): -3, FCurve.of(7, 3, 3, 3): 2,
        FCurve.of(5, 5, 3, 3): -1,
    },
}


@dataclass
class CurveFamily:
    label: str
    n: int
    curves: List[FCurve]

    def __len__(self) -> int:
        return len(self.curves)


def curve_family(label: str, n: int) -> CurveFamily:
    """C1 = F_{1,1,i}; C2 = F_{2,2,i}; C3 = F_{3,3,odd} together with F_{1,1,odd}.

    C3 has rank g-1 at every even n and is independent only for g even or n = 8.
    """
    g = (n - 2) // 2
    if label == "C1":
        curves = [FCurve.with_tail(n, 1, 1, i) for i in range(1, g + 1)]
    elif label == "C2":
        curves = [FCurve.with_tail(n, 2, 2, i) for i in range(1, g)]
    elif label == "C3":
        if n % 2:
            raise ContractViolation("family", "C3 is defined for even n only")
        k = (g + 1) // 2
        curves = [FCurve.with_tail(n, 3, 3, 2 * i + 1) for i in range(k - 1)]
        curves += [FCurve.with_tail(n, 1, 1, 2 * i + 1) for i in range(k)]
    else:
        raise ContractViolation("family", f"Unknown curve family {label!r}")
    # F_{3,3,1} and F_{1,1,3} are one class at n = 8
    distinct = list(dict.fromkeys(curves))
    return CurveFamily(label, n, distinct)


@dataclass
class CBBasisReport:
    """D_level . F_{n-i-2,i,1,1} for 1 <= level, i <= g, and its triangularity."""
    n: int
    matrix: List[List[int]]
    lower_triangular: bool
    diagonal_nonzero: bool
    diagonal_matches_ranks: bool

    @property
    def ok(self) -> bool:
        return self.lower_triangular and self.diagonal_nonzero and self.diagonal_matches_ranks

    def entry(self, level: int, i: int) -> int:
        return self.matrix[level - 1][i - 1]


def cb_basis_matrix(n: int) -> CBBasisReport:
    g = genus_of(n)
    matrix = [
        [intersect_cb_fcurve(level, n, FCurve.with_tail(n, 1, 1, i)) for i in range(1, g + 1)]
        for level in range(1, g + 1)
    ]
    lower = all(matrix[level][i] == 0 for level in range(g) for i in range(level))
    nonzero = all(matrix[level][level] != 0 for level in range(g))
    matches = all(
        matrix[level - 1][level - 1] == rank_1t(level, level, level) * rank_1t(level, n - level - 2, level)
        for level in range(1, g + 1)
    )
    return CBBasisReport(n, matrix, lower, nonzero, matches)


def family_ranks(n: int) -> Dict[str, int]:
    """Rank of every family defined at n."""
    labels = FAMILY_LABELS if n % 2 == 0 else FAMILY_LABELS[:2]
    return {label: independence_rank(curve_family(label, n).curves, n) for label in labels}
