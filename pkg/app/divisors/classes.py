"""Symmetric divisors on M_0,n and their intersections with F-curves."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.errors import ContractViolation

Rational = Fraction


@dataclass(frozen=True)
class FCurve:
    """S_n-class of an F-curve, a partition of n into four positive parts."""
    parts: Tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if len(self.parts) != 4 or any(p < 1 for p in self.parts):
            raise ContractViolation("fcurve", f"F-curve needs four positive parts, got {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "FCurve":
        return cls(tuple(parts))

    @classmethod
    def with_tail(cls, n: int, a: int, b: int, c: int) -> "FCurve":
        """F_{a,b,c,n-a-b-c}."""
        return cls((a, b, c, n - a - b - c))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def label(self) -> str:
        return "F_{" + ",".join(str(p) for p in self.parts) + "}"


def fcurves(n: int) -> List[FCurve]:
    """Every F-curve class of M_0,n, parts weakly decreasing."""
    curves = []
    for d in range(1, n // 4 + 1):
        for c in range(d, (n - d) // 3 + 1):
            for b in range(c, (n - c - d) // 2 + 1):
                a = n - b - c - d
                if a >= b:
                    curves.append(FCurve((a, b, c, d)))
    return curves


def _fold(n: int, size: int) -> int:
    return min(size, n - size)


def intersect_BF(j: int, curve: FCurve) -> int:
    """Intersection number B_j . F."""
    n = curve.n
    if not 2 <= j <= n // 2:
        raise ContractViolation("basis-index", f"B_{j} is not in B_2..B_{n // 2}")
    p = curve.parts
    pairings = sum(1 for q in (1, 2, 3) if _fold(n, p[0] + p[q]) == j)
    cells = sum(1 for size in p if size >= 2 and _fold(n, size) == j)
    return pairings - cells


@dataclass(frozen=True)
class SymDivisor:
    """Exact coefficients over the basis B_2..B_{n//2}."""
    n: int
    coeffs: Tuple[Fraction, ...]
    diagnostic: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 4:
            raise ContractViolation("divisor-n", f"M_0,n needs n >= 4, got {self.n}")
        if len(self.coeffs) != self.n // 2 - 1:
            raise ContractViolation(
                "divisor-length",
                f"Expected {self.n // 2 - 1} coefficients for n={self.n}, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_function(cls, n: int, coefficient, diagnostic: Optional[str] = None) -> "SymDivisor":
        """Build a divisor from ``coefficient(i)`` for i = 2..n//2."""
        return cls(n, tuple(Fraction(coefficient(i)) for i in range(2, n // 2 + 1)), diagnostic)

    @classmethod
    def zero(cls, n: int, diagnostic: Optional[str] = None) -> "SymDivisor":
        return cls(n, (Fraction(0),) * (n // 2 - 1), diagnostic)

    @property
    def indices(self) -> range:
        return range(2, self.n // 2 + 1)

    def coeff(self, i: int) -> Fraction:
        if i not in self.indices:
            raise ContractViolation("basis-index", f"B_{i} is not in B_2..B_{self.n // 2}")
        return self.coeffs[i - 2]

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.indices, self.coeffs))

    def _same_space(self, other: "SymDivisor") -> None:
        if self.n != other.n:
            raise ContractViolation("divisor-n", f"Cannot combine divisors on M_0,{self.n} and M_0,{other.n}")

    def __add__(self, other: "SymDivisor") -> "SymDivisor":
        self._same_space(other)
        return SymDivisor(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SymDivisor") -> "SymDivisor":
        return self + other.scale(-1)

    def scale(self, factor) -> "SymDivisor":
        factor = Fraction(factor)
        return SymDivisor(self.n, tuple(factor * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def dot(self, curve: FCurve) -> Fraction:
        """Intersection with an F-curve by linearity in the B basis."""
        if curve.n != self.n:
            raise ContractViolation("fcurve", f"{curve.label()} does not live on M_0,{self.n}")
        return sum((c * intersect_BF(i, curve) for i, c in zip(self.indices, self.coeffs)), Fraction(0))

    def ratio_to(self, other: "SymDivisor") -> Optional[Fraction]:
        """The scalar s with self == s * other, or None if the vectors are not parallel."""
        self._same_space(other)
        scalar = None
        for a, b in zip(self.coeffs, other.coeffs):
            if b == 0:
                if a != 0:
                    return None
                continue
            if scalar is None:
                scalar = a / b
            elif a != scalar * b:
                return None
        return scalar if scalar is not None else (Fraction(0) if self.is_zero() else None)

    def render(self) -> str:
        return " + ".join(f"({c})B{i}" for i, c in zip(self.indices, self.coeffs))


def boundary_sum(n: int) -> SymDivisor:
    """Delta = sum of all B_i."""
    return SymDivisor.from_function(n, lambda i: 1)


def psi_class(n: int) -> SymDivisor:
    """Total psi class, coefficient i(n-i)/(n-1) on B_i."""
    return SymDivisor.from_function(n, lambda i: Fraction(i * (n - i), n - 1))


def canonical_class(n: int) -> SymDivisor:
    """K = Psi - 2 Delta."""
    return SymDivisor.from_function(n, lambda i: Fraction(i * (n - i), n - 1) - 2)


def psi_dot(curve: FCurve) -> Fraction:
    """Degree of the total psi class on an F-curve."""
    return psi_class(curve.n).dot(curve)


def dot_all(divisor: SymDivisor, curves: Sequence[FCurve]) -> Iterator[Tuple[FCurve, Fraction]]:
    for curve in curves:
        yield curve, divisor.dot(curve)
