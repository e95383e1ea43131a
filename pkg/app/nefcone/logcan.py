"""Symmetric log canonical decompositions D = c(K + sum b_i B_i)."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.errors import ContractViolation
from app.divisors.classes import SymDivisor, canonical_class

Interval = Tuple[Optional[Fraction], Optional[Fraction]]


@dataclass
class LogCanCert:
    """Feasibility certificate.

    ``u_interval`` is the closed set of u = 1/c with u*D - K having B-coefficients
    in [0, 1]; a bound of None means unbounded. ``blocking`` names the first index
    pair whose constraints cannot hold together.
    """
    n: int
    feasible: bool
    u_interval: Interval = (None, None)
    witness_u: Optional[Fraction] = None
    witness_b: Dict[int, Fraction] = field(default_factory=dict)
    blocking: Optional[Tuple[int, int]] = None
    reason: str = ""

    @property
    def witness_c(self) -> Optional[Fraction]:
        return None if self.witness_u is None else 1 / self.witness_u

    @property
    def c_interval(self) -> Interval:
        lo, hi = self.u_interval
        return (None if hi is None else 1 / hi, None if lo is None or lo <= 0 else 1 / lo)

    @property
    def infeasible_index(self) -> Optional[int]:
        return None if self.blocking is None else self.blocking[0]

    @property
    def degenerate(self) -> bool:
        lo, hi = self.u_interval
        return self.feasible and lo is not None and lo == hi


def _index_interval(d: Fraction, kappa: Fraction) -> Optional[Interval]:
    """u with kappa <= d*u <= 1 + kappa; None when empty, (None, None) when all u work."""
    if d > 0:
        return kappa / d, (1 + kappa) / d
    if d < 0:
        return (1 + kappa) / d, kappa / d
    return (None, None) if -1 <= kappa <= 0 else None


def log_canonical_coefficients(divisor: SymDivisor, u: Fraction) -> Dict[int, Fraction]:
    """b_i = u*d_i - kappa_i, so that u*D = K + sum b_i B_i."""
    kappa = canonical_class(divisor.n)
    return {i: u * divisor.coeff(i) - kappa.coeff(i) for i in divisor.indices}


def check_log_canonical_scale(divisor: SymDivisor, u: Fraction) -> bool:
    """Does the multiplier u > 0 give coefficients in [0, 1]?"""
    u = Fraction(u)
    return u > 0 and all(0 <= b <= 1 for b in log_canonical_coefficients(divisor, u).values())


def log_canonical_feasibility(divisor: SymDivisor) -> LogCanCert:
    """Intersect the per-index constraint intervals for u = 1/c exactly."""
    if divisor.is_zero():
        raise ContractViolation("logcan-nonzero", "Log canonical test needs a nonzero divisor")
    n = divisor.n
    kappa = canonical_class(n)
    intervals: List[Tuple[int, Interval]] = []
    for i in divisor.indices:
        interval = _index_interval(divisor.coeff(i), kappa.coeff(i))
        if interval is None:
            return LogCanCert(n, False, blocking=(i, i),
                              reason=f"B{i} has zero coefficient but kappa={kappa.coeff(i)} is outside [-1, 0]")
        intervals.append((i, interval))

    # u > 0 is a standing constraint, recorded as index 0
    intervals.insert(0, (0, (Fraction(0), None)))
    blocked = []
    for i, (lo_i, _) in intervals:
        for j, (_, hi_j) in intervals:
            if lo_i is not None and hi_j is not None and (lo_i > hi_j or (i == 0 and hi_j <= 0)):
                blocked.append((tuple(sorted((i, j))), lo_i, hi_j, i, j))
    if blocked:
        pair, lo_i, hi_j, i, j = min(blocked, key=lambda item: item[0])
        source = "u > 0" if i == 0 else f"B{i}"
        return LogCanCert(n, False, blocking=pair,
                          reason=f"lower bound {lo_i} from {source} exceeds upper bound {hi_j} from B{j}")

    lowers = [lo for _, (lo, _) in intervals if lo is not None]
    uppers = [hi for _, (_, hi) in intervals if hi is not None]
    lo = max(lowers)
    hi = min(uppers) if uppers else None
    if hi is None:
        u = lo + 1
    elif lo == hi:
        u = lo
    else:
        u = (lo + hi) / 2
    return LogCanCert(n, True, u_interval=(lo, hi), witness_u=u,
                      witness_b=log_canonical_coefficients(divisor, u))
