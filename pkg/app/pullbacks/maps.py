"""Divisors on M_h and their pullbacks to M_0,2(g+1)."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from app.errors import ContractViolation
from app.divisors.classes import SymDivisor
from app.divisors.cb import closed_form_class

HYPERELLIPTIC = "hyperelliptic"
FLAG = "flag"


@dataclass(frozen=True)
class GDivisor:
    """a*lambda - sum b_i delta_i on M_h.

    In the hyperelliptic context h = g and i runs over 0..h//2; in the flag
    context h = 2(g+1) and i runs over 0..g+1. Missing b_i are zero.
    """
    genus_h: int
    a: Fraction
    b: Dict[int, Fraction] = field(default_factory=dict)
    context: str = FLAG

    def __post_init__(self) -> None:
        if self.context not in (HYPERELLIPTIC, FLAG):
            raise ContractViolation("gdivisor-context", f"Unknown context {self.context!r}")
        if self.context == FLAG and self.genus_h % 2:
            raise ContractViolation("gdivisor-context", f"Flag context needs even h, got {self.genus_h}")
        top = self.max_index
        for i in self.b:
            if not 0 <= i <= top:
                raise ContractViolation("gdivisor-index", f"delta_{i} outside 0..{top} in the {self.context} context")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", {i: Fraction(v) for i, v in self.b.items()})

    @property
    def max_index(self) -> int:
        # floor(g/2) for M_g, g+1 for M_2(g+1)
        return self.genus_h // 2

    @property
    def g(self) -> int:
        """Genus of the hyperelliptic curves, or g with h = 2(g+1)."""
        return self.genus_h if self.context == HYPERELLIPTIC else self.genus_h // 2 - 1

    def coeff(self, i: int) -> Fraction:
        return self.b.get(i, Fraction(0))

    def folded(self, i: int) -> Fraction:
        """b_i with i > h/2 read as b_{h-i}."""
        return self.coeff(min(i, self.genus_h - i))

    def __add__(self, other: "GDivisor") -> "GDivisor":
        if (self.genus_h, self.context) != (other.genus_h, other.context):
            raise ContractViolation("gdivisor-context", "Cannot add divisors on different spaces")
        keys = set(self.b) | set(other.b)
        return GDivisor(self.genus_h, self.a + other.a,
                        {i: self.coeff(i) + other.coeff(i) for i in keys}, self.context)

    def scale(self, factor) -> "GDivisor":
        factor = Fraction(factor)
        return GDivisor(self.genus_h, factor * self.a, {i: factor * v for i, v in self.b.items()}, self.context)


def h_pullback(divisor: GDivisor) -> SymDivisor:
    """Pullback along the hyperelliptic double cover map."""
    if divisor.context != HYPERELLIPTIC:
        raise ContractViolation("h-pullback", "h_pullback needs a divisor in the hyperelliptic context")
    g = divisor.genus_h
    n = 2 * g + 2
    a = divisor.a

    def coeff(k: int) -> Fraction:
        if k % 2 == 0:
            return a * Fraction(k * (n - k), 8 * (n - 1)) - 2 * divisor.coeff(0)
        return a * Fraction((k - 1) * (n - k - 1), 8 * (n - 1)) - divisor.coeff((k - 1) // 2) / 2

    return SymDivisor.from_function(n, coeff)


def flag_pullback(divisor: GDivisor) -> SymDivisor:
    """Pullback along the flag map attaching an elliptic tail at every point."""
    if divisor.context != FLAG:
        raise ContractViolation("flag-pullback", "flag_pullback needs a divisor in the flag context")
    n = divisor.genus_h
    b_1 = divisor.coeff(1)
    return SymDivisor.from_function(n, lambda j: Fraction(j * (n - j), n - 1) * b_1 - divisor.coeff(j))


def default_script_parameters(g: int) -> Tuple[Fraction, Fraction]:
    """Smallest half-integral beta with 2*beta > (g+1)^2, and alpha = 12*beta - 2g."""
    beta = Fraction((g + 1) ** 2 + 1, 2)
    return 12 * beta - 2 * g, beta


def build_script_D(alpha, beta, g: int) -> GDivisor:
    """alpha*lambda - beta*delta_0 - sum i(n-i) delta_i on M_2(g+1)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not alpha > 12 * beta - (2 * g + 1):
        raise ContractViolation("script-D", f"Need alpha > 12*beta - (2g+1) = {12 * beta - (2 * g + 1)}, got {alpha}")
    if not 2 * beta > (g + 1) ** 2:
        raise ContractViolation("script-D", f"Need 2*beta > (g+1)^2 = {(g + 1) ** 2}, got beta={beta}")
    n = 2 * (g + 1)
    b = {0: beta}
    b.update({i: Fraction(i * (n - i)) for i in range(1, g + 2)})
    return GDivisor(n, alpha, b, FLAG)


def hodge_class(g: int) -> GDivisor:
    """lambda on M_g."""
    return GDivisor(g, Fraction(1), {}, HYPERELLIPTIC)


def twelve_lambda_minus_delta0(g: int) -> GDivisor:
    return GDivisor(g, Fraction(12), {0: Fraction(1)}, HYPERELLIPTIC)


def satake_identity_holds(g: int) -> bool:
    """2 h*(lambda) equals the level one class."""
    return h_pullback(hodge_class(g)).scale(2) == closed_form_class("1", 2 * g + 2)


def hyperelliptic_scalar(g: int) -> Optional[Fraction]:
    """s with D_2 = s * h*(12 lambda - delta_0), or None if they are not parallel."""
    return closed_form_class("2", 2 * g + 2).ratio_to(h_pullback(twelve_lambda_minus_delta0(g)))
