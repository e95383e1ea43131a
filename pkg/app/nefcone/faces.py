"""F-nefness and the face of the nef cone cut out by vanishing F-curves."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from app.divisors.classes import FCurve, SymDivisor, fcurves
from app.nefcone.linalg import bareiss_rank, intersection_matrix


@dataclass
class FaceReport:
    n: int
    f_nef: bool
    witness: Optional[FCurve] = None
    witness_value: Optional[Fraction] = None
    zero_curves: List[FCurve] = field(default_factory=list)
    rho: int = 0

    @property
    def dimension(self) -> int:
        """Dimension of the symmetric Neron-Severi space, n//2 - 1."""
        return self.n // 2 - 1

    @property
    def extremal(self) -> bool:
        return self.f_nef and self.rho == self.dimension - 1

    def claim(self) -> str:
        if not self.f_nef:
            return f"not F-nef: {self.witness.label()} gives {self.witness_value}"
        return f"D lies on a face of codim >= {self.rho}"


def nef_face_report(divisor: SymDivisor) -> FaceReport:
    """Enumerate every F-curve, collect the vanishing ones and rank their span."""
    n = divisor.n
    zeros = []
    for curve in fcurves(n):
        value = divisor.dot(curve)
        if value < 0:
            return FaceReport(n, False, witness=curve, witness_value=value)
        if value == 0:
            zeros.append(curve)
    rho = bareiss_rank(intersection_matrix(zeros, n))
    return FaceReport(n, True, zero_curves=zeros, rho=rho)
