"""Exact ranks of sl2 conformal blocks bundles in genus zero.

Four independent routes are provided for the (1^j, t) family: the Pascal
recurrence (``rank_1t``), the binomial closed form (``rank_closed_form``),
reflections of the level-free table (``rank_by_reflection``) and the numeric
Verlinde sum in ``app.fusion.verlinde``. General weight vectors are fused
channel by channel in ``rank``, with the result memoized.
"""

from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

from app.errors import ContractViolation, IntegralityError
from app.config import validate_level
from app.fusion.cache import fusion_cache


def choose(n: int, k: int) -> int:
    """Binomial coefficient, zero for k < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def check_weights(level: int, weights: Sequence[int]) -> None:
    """Raise unless every weight lies in [0, level]."""
    validate_level(level)
    for w in weights:
        if not 0 <= w <= level:
            raise ContractViolation("weight-bound", f"Weight {w} outside [0, {level}]")


def canonical_weights(weights: Sequence[int]) -> Tuple[int, ...]:
    """Drop zero weights (propagation) and sort weakly decreasing."""
    return tuple(sorted((w for w in weights if w != 0), reverse=True))


def three_point_rank(level: int, a: int, b: int, c: int) -> int:
    """sl2 fusion rule for three weights."""
    total = a + b + c
    if total % 2 or total > 2 * level:
        return 0
    half = total // 2
    return int(a <= half and b <= half and c <= half)


def fusion_rank_small(level: int, weights: Sequence[int]) -> int:
    """Rank for one, two or three marked points."""
    n = len(weights)
    if not 1 <= n <= 3:
        raise ContractViolation("fusion-small", f"Fusion rules cover 1 to 3 weights, got {n}")
    check_weights(level, weights)
    if n == 1:
        return int(weights[0] == 0)
    if n == 2:
        return int(weights[0] == weights[1])
    return three_point_rank(level, *weights)


def _fusion_channels(level: int, a: int, b: int) -> range:
    return range(abs(a - b), min(a + b, 2 * level - a - b) + 1, 2)


def fuse_channels(level: int, weights: Sequence[int]) -> Dict[int, int]:
    """Multiplicity of every channel after fusing ``weights`` one at a time.

    Iterated factorization along a chain: the count left on channel 0 is the rank.
    """
    channels: Dict[int, int] = {0: 1}
    for w in weights:
        fused: Dict[int, int] = {}
        for alpha, count in channels.items():
            for beta in _fusion_channels(level, alpha, w):
                fused[beta] = fused.get(beta, 0) + count
        channels = fused
    return channels


def _rank_canonical(level: int, weights: Tuple[int, ...]) -> int:
    n = len(weights)
    if n == 0:
        return 1
    if n == 1:
        return 0
    if n == 2:
        return int(weights[0] == weights[1])
    total = sum(weights)
    # odd sum rule and generalized triangle inequality
    if total % 2 or weights[0] > total - weights[0]:
        return 0
    if n == 3:
        return three_point_rank(level, *weights)
    return fusion_cache.get_or_insert((level, weights), lambda: fuse_channels(level, weights).get(0, 0))


def rank(level: int, weights: Sequence[int]) -> int:
    """Rank of V(sl2, level, weights) by memoized factorization."""
    check_weights(level, weights)
    return _rank_canonical(level, canonical_weights(weights))


def _extend_level_rows(level: int):
    def extend(rows: List[List[int]], upto: int) -> None:
        if not rows:
            rows.append([1] + [0] * level)
        while len(rows) <= upto:
            prev = rows[-1]
            row = []
            for t in range(level + 1):
                left = prev[t - 1] if t >= 1 else 0
                right = prev[t + 1] if t + 1 <= level else 0
                row.append(left + right)
            rows.append(row)
    return extend


def rank_1t(level: int, j: int, t: int) -> int:
    """r_level(j, t), the rank of V(sl2, level, (1^j, t)), by the Pascal recurrence."""
    validate_level(level)
    if j < 0:
        raise ContractViolation("rank-1t", f"j must be nonnegative, got {j}")
    if t < 0 or t > level:
        return 0
    rows = fusion_cache.level_rows(level, j, _extend_level_rows(level))
    return rows[j][t]


def rank_infinity(j: int, t: int) -> int:
    """Level-free r_inf(j, t) from its closed formula."""
    if j < 0 or t < 0:
        raise ContractViolation("rank-infinity", f"Arguments must be nonnegative, got ({j}, {t})")
    if t > j or (j - t) % 2:
        return 0
    if j % 2 == 0:
        x, y = j // 2, t // 2
        value = Fraction(2 * y + 1, x + y + 1) * choose(2 * x, x - y)
    else:
        x, y = (j - 1) // 2, (t - 1) // 2
        value = Fraction(2 * y + 2, x + y + 2) * choose(2 * x + 1, x - y)
    if value.denominator != 1:
        raise IntegralityError(f"r_inf({j}, {t}) evaluated to {value}")
    return int(value)


def rank_infinity_table(max_j: int) -> List[List[int]]:
    """Rows 0..max_j of r_inf built from the defining recurrence and seeds."""
    rows = [[1]]
    for j in range(1, max_j + 1):
        prev = rows[-1]
        row = []
        for t in range(j + 1):
            left = prev[t - 1] if t >= 1 else 0
            right = prev[t + 1] if t + 1 <= j - 1 else 0
            row.append(left + right)
        rows.append(row)
    return rows


def _reflection_count(level: int, j: int) -> int:
    span = 2 * (level + 2)
    return -(-j // span)


def _check_column(level: int, t: int) -> None:
    validate_level(level)
    if not 0 <= t <= level:
        raise ContractViolation("column", f"t must lie in [0, {level}], got {t}")


def rank_closed_form(level: int, j: int, t: int) -> int:
    """r_level(j, t) from the alternating binomial sums."""
    _check_column(level, t)
    if (j - t) % 2:
        return 0
    h = level + 2
    total = Fraction(0)
    for k in range(_reflection_count(level, j) + 1):
        if j % 2 == 0:
            x, y = j // 2, t // 2
            b_k = Fraction(2 * y + 2 * k * h + 1, x + y + k * h + 1)
            c_k = Fraction((2 * k + 2) * h - 2 * y - 1, x + (k + 1) * h - y)
            total += b_k * choose(2 * x, x - y - k * h) - c_k * choose(2 * x, x - (k + 1) * h + y + 1)
        else:
            x, y = (j - 1) // 2, (t - 1) // 2
            b_k = Fraction(2 * y + 2 * k * h + 2, x + y + k * h + 2)
            c_k = Fraction(2 * (k + 1) * h - 2 * y - 2, x + (k + 1) * h - y)
            total += b_k * choose(2 * x + 1, x - y - k * h) - c_k * choose(2 * x + 1, x - (k + 1) * h + y + 2)
    if total.denominator != 1 or total < 0:
        raise IntegralityError(f"Closed form r_{level}({j}, {t}) evaluated to {total}")
    return int(total)


def reflection_terms(level: int, j: int, t: int) -> List[Tuple[int, int, int]]:
    """Signed summands (sign, column, r_inf value) of the reflection sum, zeros dropped."""
    _check_column(level, t)
    h = level + 2
    terms = []
    for k in range(_reflection_count(level, j) + 1):
        for sign, column in ((1, t + 2 * h * k), (-1, (2 * k + 2) * h - t - 2)):
            value = rank_infinity(j, column)
            if value:
                terms.append((sign, column, value))
    return terms


def rank_by_reflection(level: int, j: int, t: int) -> int:
    """r_level(j, t) as the alternating sum of reflected r_inf entries."""
    return sum(sign * value for sign, _, value in reflection_terms(level, j, t))


def nonvanishing_criterion(level: int, weights: Sequence[int]) -> bool:
    """True iff the rank is positive, tested over subset sizes only."""
    check_weights(level, weights)
    n = len(weights)
    total = sum(weights)
    if total % 2:
        return False
    ascending = sorted(weights)
    prefix = 0
    for m in range(n + 1):
        if (n - m) % 2 == 1 and total - (n - m - 1) * level > 2 * prefix:
            return False
        if m < n:
            prefix += ascending[m]
    return True
