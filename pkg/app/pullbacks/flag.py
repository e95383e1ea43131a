"""F-divisor inequalities and the flag pullback program for the level 1, 2, g-1, g divisors."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from app.config import config
from app.errors import ContractViolation
from app.divisors.classes import fcurves
from app.divisors.cb import cb_divisor_class, tag_level
from app.pullbacks.maps import FLAG, GDivisor, build_script_D, default_script_parameters, flag_pullback

FLAG_TAGS = ("1", "2", "g-1", "g")
CONDITIONS = (1, 2, 3, 4, 5)


@dataclass
class FDivisorReport:
    """Outcome of the five F-divisor inequalities; ``witnesses`` holds the first violation per condition."""
    genus_h: int
    passed: Dict[int, bool] = field(default_factory=dict)
    witnesses: Dict[int, Tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def failed(self) -> List[int]:
        return [c for c in CONDITIONS if not self.passed.get(c, True)]


def condition5_value(divisor: GDivisor, parts: Tuple[int, int, int, int]) -> Fraction:
    """b_i+b_j+b_k+b_l - (b_{i+j}+b_{i+k}+b_{i+l}) with indices folded into 0..h/2."""
    i, j, k, l = parts
    return (sum(divisor.folded(p) for p in parts)
            - divisor.folded(i + j) - divisor.folded(i + k) - divisor.folded(i + l))


def _condition4_violation(divisor: GDivisor) -> Optional[Tuple[int, int]]:
    top = divisor.max_index
    for i in range(1, top + 1):
        for j in range(i, top + 1 - i):
            if divisor.coeff(i) + divisor.coeff(j) < divisor.coeff(i + j):
                return (i, j)
    return None


def f_divisor_check(divisor: GDivisor) -> FDivisorReport:
    """Run conditions (1)-(5) on a divisor of M_2(g+1)."""
    if divisor.context != FLAG:
        raise ContractViolation("f-divisor", "F-divisor inequalities apply in the flag context")
    report = FDivisorReport(divisor.genus_h)
    b = divisor.coeff
    indices = range(0, divisor.max_index + 1)

    def record(condition: int, witness) -> None:
        report.passed[condition] = witness is None
        if witness is not None:
            report.witnesses[condition] = witness

    record(1, None if divisor.a - 12 * b(0) + b(1) >= 0 else (divisor.a - 12 * b(0) + b(1),))
    record(2, next(((i,) for i in indices if b(i) < 0), None))
    record(3, next(((i,) for i in indices if i and 2 * b(0) - b(i) < 0), None))
    record(4, _condition4_violation(divisor))
    record(5, next((curve.parts for curve in fcurves(divisor.genus_h)
                    if condition5_value(divisor, curve.parts) < 0), None))
    return report


def displayed_constant(tag: str, g: int) -> Fraction:
    """The displayed c_level in front of D^level_{a,b}."""
    return {"1": Fraction(1, 4), "2": Fraction(4, 3), "g-1": Fraction(1, g - 1), "g": Fraction(1)}[tag]


def _boundary_part(tag: str, g: int) -> Dict[int, Fraction]:
    n = 2 * (g + 1)
    if tag == "1":
        return {i: Fraction(i % 2) for i in range(1, g + 2)}
    if tag == "2":
        return {i: Fraction(1) if i % 2 else Fraction(4, 3) for i in range(1, g + 2)}
    b = {i: Fraction(i * (n - 2 * i + 1), n - 1) for i in range(1, g + 2)}
    if tag == "g-1":
        b[g + 1] = Fraction(3 * g + 2, n - 1)
    return b


def _check_tag(tag: str, g: int) -> None:
    if tag not in FLAG_TAGS:
        raise ContractViolation("flag-tag", f"Flag program covers tags {', '.join(FLAG_TAGS)}, got {tag!r}")
    tag_level(tag, g)


def flag_bound_b(tag: str, g: int) -> Fraction:
    """Lower bound on b as displayed for each tag."""
    _check_tag(tag, g)
    if tag == "1":
        return Fraction(1, 2)
    if tag == "2":
        return Fraction(8, 3)
    boundary = _boundary_part(tag, g)
    top = g if tag == "g-1" else g + 1
    return max(boundary[i] for i in range(1, top + 1)) / 2


def minimal_flag_parameters(tag: str, g: int) -> Tuple[Fraction, Fraction]:
    """Smallest (a, b) meeting the displayed bounds and 2b >= b_i over every index."""
    boundary = _boundary_part(tag, g)
    b = max(flag_bound_b(tag, g), max(boundary.values()) / 2)
    return 12 * b - 1, b


def flag_divisor(tag: str, g: int, a, b) -> GDivisor:
    """c_level * D^level_{a,b} on M_2(g+1), after checking the bounds on a and b."""
    a, b = Fraction(a), Fraction(b)
    bound = flag_bound_b(tag, g)
    if b < bound:
        raise ContractViolation("flag-bounds", f"Tag {tag} needs b >= {bound}, got {b}")
    if a < 12 * b - 1:
        raise ContractViolation("flag-bounds", f"Tag {tag} needs a >= 12b - 1 = {12 * b - 1}, got {a}")
    coefficients = {0: b}
    coefficients.update(_boundary_part(tag, g))
    return GDivisor(2 * (g + 1), a, coefficients, FLAG)


def search_d(base: GDivisor, script: GDivisor, g: int,
             accept: Callable[[GDivisor], bool]) -> Optional[Fraction]:
    """Smallest d on the half-integer grid with ``accept(base + d*script)``."""
    cap = config.d_grid_cap_factor * (g + 1) ** 2
    for m in range(0, 2 * cap + 1):
        d = Fraction(m, 2)
        if accept(base + script.scale(d)):
            return d
    return None


@dataclass
class FlagProgramReport:
    tag: str
    g: int
    level: int
    a: Fraction
    b: Fraction
    d: Optional[Fraction]
    displayed_c: Fraction
    scale: Optional[Fraction]
    checks: Optional[FDivisorReport]
    d_searched: bool = False

    @property
    def pullback_matches(self) -> bool:
        """D_level is a positive multiple of f*(c D + d script_D)."""
        return self.scale is not None and self.scale > 0

    @property
    def ok(self) -> bool:
        return self.pullback_matches and self.d is not None and self.checks is not None and self.checks.ok


def verify_flag_program(tag: str, g: int, a=None, b=None, d=None,
                        alpha=None, beta=None) -> FlagProgramReport:
    """Build c D^level_{a,b} + d script_D, compare its pullback with D_level and run the F-divisor battery.

    With ``d`` omitted the tags g-1 and g search the smallest grid value making
    condition (4) pass; tags 1 and 2 use d = 0.
    """
    _check_tag(tag, g)
    if a is None or b is None:
        a, b = minimal_flag_parameters(tag, g)
    if alpha is None or beta is None:
        alpha, beta = default_script_parameters(g)
    base = flag_divisor(tag, g, a, b)
    script = build_script_D(alpha, beta, g)

    searched = False
    if d is None:
        if tag in ("g-1", "g"):
            searched = True
            d = search_d(base, script, g, lambda D: _condition4_violation(D) is None)
        else:
            d = Fraction(0)
    elif Fraction(d) < 0:
        raise ContractViolation("flag-bounds", f"d must be nonnegative, got {d}")

    level = tag_level(tag, g)
    if d is None:
        return FlagProgramReport(tag, g, level, Fraction(a), Fraction(b), None,
                                 displayed_constant(tag, g), None, None, searched)

    total = base + script.scale(d)
    scale = cb_divisor_class(level, 2 * (g + 1)).ratio_to(flag_pullback(total))
    return FlagProgramReport(tag, g, level, Fraction(a), Fraction(b), Fraction(d),
                             displayed_constant(tag, g), scale, f_divisor_check(total), searched)
