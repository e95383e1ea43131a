"""Configuration management for the conformal blocks toolkit."""

import os
from fractions import Fraction
from typing import List, Optional
from dotenv import load_dotenv

from app.errors import ContractViolation

# Load environment variables
load_dotenv()

OUTPUT_FORMATS = ("json", "csv", "pretty")


class Config:
    """Centralized configuration class with validation."""

    def __init__(self) -> None:
        """Initialize configuration with environment variables."""
        # Numeric Verlinde evaluation
        self.verlinde_prec_bits = int(os.getenv("CB_VERLINDE_PREC_BITS", "128"))
        self.verlinde_retries = int(os.getenv("CB_VERLINDE_RETRIES", "3"))
        self.verlinde_tolerance = float(os.getenv("CB_VERLINDE_TOLERANCE", "1e-6"))

        # CLI defaults
        self.output_format = os.getenv("CB_OUTPUT_FORMAT", "pretty")
        self.max_n = int(os.getenv("CB_MAX_N", "16"))
        self.cache_file: Optional[str] = os.getenv("CB_CACHE_FILE") or None

        # Flag pullback d-search stops at factor * (g+1)^2
        self.d_grid_cap_factor = int(os.getenv("CB_D_GRID_CAP_FACTOR", "10"))

    def validate(self) -> bool:
        """Validate configuration parameters."""
        if self.verlinde_prec_bits < 128:
            raise ValueError(f"CB_VERLINDE_PREC_BITS must be at least 128, got {self.verlinde_prec_bits}")
        if self.verlinde_retries < 0:
            raise ValueError(f"CB_VERLINDE_RETRIES must be nonnegative, got {self.verlinde_retries}")
        if not 0 < self.verlinde_tolerance < 0.5:
            raise ValueError(f"CB_VERLINDE_TOLERANCE must lie in (0, 0.5), got {self.verlinde_tolerance}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unsupported output format: {self.output_format}")
        if self.max_n < 4:
            raise ValueError(f"CB_MAX_N must be at least 4, got {self.max_n}")
        if self.d_grid_cap_factor < 1:
            raise ValueError(f"CB_D_GRID_CAP_FACTOR must be positive, got {self.d_grid_cap_factor}")
        return True


def parse_int_list(values_str: str) -> List[int]:
    """Parse comma-separated integers into a list."""
    if not values_str:
        return []
    try:
        return [int(v.strip()) for v in values_str.split(',') if v.strip()]
    except ValueError:
        raise ContractViolation("integer-list", f"Not a comma-separated integer list: {values_str!r}")


def parse_weights(weights_str: str) -> List[int]:
    """Parse a weight list, accepting ``WxK`` for weight W repeated K times (``1x15,3`` is 1^15 3)."""
    weights: List[int] = []
    for item in (w.strip() for w in weights_str.split(',')):
        if not item:
            continue
        try:
            if 'x' in item:
                value, count = item.split('x', 1)
                weights.extend([int(value)] * int(count))
            else:
                weights.append(int(item))
        except ValueError:
            raise ContractViolation("weight-list", f"Malformed weight entry: {item!r}")
    return weights


def parse_rational(value_str: str) -> Fraction:
    """Parse an exact rational such as ``5``, ``-1/2`` or ``8/3``."""
    try:
        return Fraction(value_str.strip())
    except (ValueError, ZeroDivisionError):
        raise ContractViolation("rational", f"Not an exact rational: {value_str!r}")


def parse_rational_list(values_str: str) -> List[Fraction]:
    """Parse comma-separated exact rationals."""
    return [parse_rational(v) for v in values_str.split(',') if v.strip()]


def validate_level(level: int) -> int:
    """Validate that a level is a positive integer."""
    if level < 1:
        raise ContractViolation("level", f"Level must be a positive integer, got {level}")
    return level


# Global configuration instance
config = Config()
config.validate()
