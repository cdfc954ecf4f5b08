"""Skew polynomial rings with inner derivations and the codes they generate."""

from .galois import GF, Frobenius, field_build, field_from_order
from .ring_rl import RlRing, idempotent_set
from .skew import SkewPoly, SkewRing, right_divide, is_right_divisor, enumerate_right_divisors
from .codec import (
    LinearCode,
    code_from_generator,
    min_distance,
    classify,
    rl_code_build,
    gray_matrix_check,
    gray_image,
)

__version__ = "0.1.0"
