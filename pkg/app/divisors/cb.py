"""Conformal blocks divisors D_{level,(1,...,1)} and their closed-form classes."""

import sys
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Sequence, Tuple

from app.config import validate_level
from app.errors import ContractViolation, IntegralityError
from app.fusion.ranks import check_weights, rank, rank_1t, three_point_rank
from app.divisors.classes import FCurve, SymDivisor

# dual Coxeter number of sl2
DUAL_COXETER = 2

CLOSED_FORM_TAGS = ("1", "2", "3", "4", "g-2", "g-1", "g")
_MIN_GENUS = {"1": 1, "2": 2, "3": 3, "4": 4, "g-2": 3, "g-1": 2, "g": 1}


def casimir(alpha: int) -> Fraction:
    """Casimir scalar alpha^2/2 + alpha of the weight alpha."""
    return Fraction(alpha * alpha, 2) + alpha


def genus_of(n: int) -> int:
    """g with n = 2(g+1); odd n are rejected."""
    if n % 2 or n < 4:
        raise ContractViolation("even-n", f"Expected even n >= 4, got {n}")
    return n // 2 - 1


@lru_cache(maxsize=None)
def _degree_sorted(level: int, mu: Tuple[int, int, int, int]) -> int:
    m1, m2, m3, m4 = mu
    r_mu = rank(level, mu)
    total = r_mu * sum(casimir(m) for m in mu)
    for alpha in range(level + 1):
        channels = (
            three_point_rank(level, m1, m2, alpha) * three_point_rank(level, m3, m4, alpha)
            + three_point_rank(level, m1, m3, alpha) * three_point_rank(level, m2, m4, alpha)
            + three_point_rank(level, m1, m4, alpha) * three_point_rank(level, m2, m3, alpha)
        )
        total -= casimir(alpha) * channels
    degree = total / (2 * (level + DUAL_COXETER))
    if degree.denominator != 1:
        raise IntegralityError(f"deg V(sl2, {level}, {mu}) evaluated to {degree}")
    return int(degree)


def degree_4pt(level: int, mu: Sequence[int]) -> int:
    """Degree of V(sl2, level, mu) on M_0,4."""
    if len(mu) != 4:
        raise ContractViolation("four-point", f"Need exactly four weights, got {len(mu)}")
    check_weights(level, mu)
    return _degree_sorted(level, tuple(sorted(mu, reverse=True)))


def intersect_cb_fcurve(level: int, n: int, curve: FCurve) -> int:
    """D_{level,(1,...,1)} . F by restricting the bundle to the F-curve."""
    validate_level(level)
    if curve.n != n:
        raise ContractViolation("fcurve", f"{curve.label()} does not live on M_0,{n}")
    if n % 2:
        return 0
    supports = []
    for part in curve.parts:
        support = [(m, rank_1t(level, part, m)) for m in range(level + 1)]
        supports.append([(m, r) for m, r in support if r])
    total = 0
    for choice in product(*supports):
        weights = tuple(m for m, _ in choice)
        multiplicity = 1
        for _, r in choice:
            multiplicity *= r
        total += degree_4pt(level, weights) * multiplicity
    return total


def _beta(level: int, i: int, n: int) -> Fraction:
    return sum((casimir(t) * rank_1t(level, i, t) * rank_1t(level, n - i, t) for t in range(level + 1)),
               Fraction(0))


def cb_divisor_class(level: int, n: int) -> SymDivisor:
    """Class of D_{level,(1,...,1)} in the B basis."""
    validate_level(level)
    if n % 2:
        note = f"n={n} is odd: every (1,...,1) bundle has rank zero"
        print(f"⚠️  {note}", file=sys.stderr)
        return SymDivisor.zero(n, diagnostic=note)
    beta_1 = Fraction(3, 2) * rank_1t(level, n, 0)
    scale = Fraction(1, 2 * (level + DUAL_COXETER))
    return SymDivisor.from_function(
        n, lambda i: scale * (Fraction(i * (n - i), n - 1) * beta_1 - _beta(level, i, n))
    )


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def tag_applies(tag: str, g: int) -> bool:
    return tag in CLOSED_FORM_TAGS and g >= _MIN_GENUS[tag]


def tag_level(tag: str, g: int) -> int:
    """Level named by a closed-form tag at genus g."""
    if tag not in CLOSED_FORM_TAGS:
        raise ContractViolation("closed-form-tag", f"Unknown tag {tag!r}; choose from {', '.join(CLOSED_FORM_TAGS)}")
    if g < _MIN_GENUS[tag]:
        raise ContractViolation("closed-form-tag", f"Tag {tag} needs g >= {_MIN_GENUS[tag]}, got g={g}")
    if tag.startswith("g"):
        return g - int(tag[2:] or 0)
    return int(tag)


def _level_one(n: int, g: int) -> Callable[[int], Fraction]:
    def coeff(k: int) -> Fraction:
        if k % 2 == 0:
            return Fraction(k * (n - k), 4 * (n - 1))
        return Fraction((k - 1) * (n - k - 1), 4 * (n - 1))
    return coeff


def _level_two(n: int, g: int) -> Callable[[int], Fraction]:
    lead = 3 * 2 ** (g - 1)

    def coeff(k: int) -> Fraction:
        if k % 2 == 0:
            return lead * (Fraction(k * (n - k), 8 * (n - 1)) - Fraction(1, 6))
        return lead * Fraction((k - 1) * (n - k - 1), 8 * (n - 1))
    return coeff


def _level_three(n: int, g: int) -> Callable[[int], Fraction]:
    F = fibonacci
    top = F(2 * g + 1)

    def coeff(k: int) -> Fraction:
        if k % 2:
            j = (k - 1) // 2
            return Fraction(1, 10) * (
                Fraction(3, 2) * Fraction(k * (n - k), n - 1) * top
                - Fraction(3, 2) * F(2 * j + 1) * F(2 * (g - j) + 1)
                - Fraction(15, 2) * F(2 * j) * F(2 * (g - j))
            )
        j = k // 2
        return Fraction(1, 10) * (
            Fraction(6 * j * (g - j + 1), 2 * g + 1) * top
            - 4 * F(2 * j) * F(2 * (g - j + 1))
        )
    return coeff


def _level_four(n: int, g: int) -> Callable[[int], Fraction]:
    top = 3 ** g + 1

    def coeff(k: int) -> Fraction:
        ratio = Fraction(k * (n - k), n - 1)
        if k % 2:
            a, b = 3 ** ((k - 1) // 2), 3 ** ((n - k - 1) // 2)
            return Fraction(1, 16) * (
                ratio * top - Fraction(1, 2) * (a + 1) * (b + 1) - Fraction(5, 2) * (a - 1) * (b - 1)
            )
        a, b = 3 ** ((k - 2) // 2), 3 ** ((n - k - 2) // 2)
        return Fraction(1, 12) * (
            ratio * Fraction(3, 4) * top - 4 * 3 ** ((n - 4) // 2) - 3 * (a - 1) * (b - 1)
        )
    return coeff


def _level_g_minus_two(n: int, g: int) -> Callable[[int], Fraction]:
    def coeff(k: int) -> Fraction:
        if k <= g - 1:
            return Fraction(4 * (n - 7) * (n - 2) * (k - 1) * k, 16 * (n - 1))
        if k == g:
            return Fraction(n ** 4 - 17 * n ** 3 + 90 * n ** 2 - 152 * n + 96, 16 * (n - 1))
        return Fraction(n ** 4 - 15 * n ** 3 + 60 * n ** 2 - 20 * n - 32, 16 * (n - 1))
    return coeff


def _level_g_minus_one(n: int, g: int) -> Callable[[int], Fraction]:
    def coeff(k: int) -> Fraction:
        if k <= g:
            return (g - 1) * Fraction((k - 1) * k, n - 1)
        return (g - 1) * Fraction(g * g - g - 1, n - 1)
    return coeff


def _level_g(n: int, g: int) -> Callable[[int], Fraction]:
    return lambda k: Fraction((k - 1) * k, 2 * (n - 1))


_CLOSED_FORMS: Dict[str, Callable[[int, int], Callable[[int], Fraction]]] = {
    "1": _level_one,
    "2": _level_two,
    "3": _level_three,
    "4": _level_four,
    "g-2": _level_g_minus_two,
    "g-1": _level_g_minus_one,
    "g": _level_g,
}


def closed_form_class(tag: str, n: int) -> SymDivisor:
    """Class of D_{level,(1,...,1)} from the explicit formula for ``tag``."""
    g = genus_of(n)
    tag_level(tag, g)
    return SymDivisor.from_function(n, _CLOSED_FORMS[tag](n, g))
