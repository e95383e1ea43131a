"""Numeric Verlinde formula for sl2 at high precision."""

import sys
from typing import Optional, Sequence

import mpmath

from app.config import config
from app.errors import ContractViolation, PrecisionExhausted
from app.fusion.ranks import check_weights


def verlinde_sum(level: int, weights: Sequence[int], genus: int = 0) -> mpmath.mpf:
    """Evaluate the trigonometric Verlinde sum at the current mpmath precision."""
    h = level + 2
    exponent = 2 * genus + len(weights) - 2
    total = mpmath.mpf(0)
    for j in range(level + 1):
        angle = (j + 1) * mpmath.pi / h
        term = mpmath.mpf(1)
        for w in weights:
            term *= mpmath.sin((w + 1) * angle)
        total += term / mpmath.sin(angle) ** exponent
    return mpmath.power(mpmath.mpf(h) / 2, genus - 1) * total


def verlinde_rank_numeric(level: int, weights: Sequence[int], genus: int = 0,
                          prec_bits: Optional[int] = None) -> int:
    """Round the Verlinde sum to an integer, doubling precision until it is within tolerance."""
    check_weights(level, weights)
    if genus < 0:
        raise ContractViolation("genus", f"Genus must be nonnegative, got {genus}")

    bits = prec_bits or config.verlinde_prec_bits
    tolerance = mpmath.mpf(config.verlinde_tolerance)
    for attempt in range(config.verlinde_retries + 1):
        with mpmath.workprec(bits):
            value = verlinde_sum(level, weights, genus)
            nearest = mpmath.nint(value)
            if abs(value - nearest) < tolerance and nearest >= 0:
                return int(nearest)
        print(f"⚠️  Verlinde sum {mpmath.nstr(value, 12)} not integral at {bits} bits, retrying",
              file=sys.stderr)
        bits *= 2
    raise PrecisionExhausted(
        f"Verlinde sum for level {level}, weights {list(weights)} did not round after "
        f"{config.verlinde_retries} retries"
    )
