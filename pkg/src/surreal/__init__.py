"""Finite surreal numbers as sign sequences, recursive definitions over them,
polynomial roots, and finite nimbers."""

from .core import (
    Cut,
    ExtendedBound,
    NEG_INF,
    ONE,
    Ordering,
    POS_INF,
    Sign,
    SignSequence,
    ZERO,
    all_sign_sequences,
    birthday,
    canonical_options,
    compare,
    concat,
    from_dyadic,
    inverse_cofinality_witness,
    is_perp,
    is_simpler,
    is_simpler_or_equal,
    negate_signs,
    parse_surreal,
    simplest_between,
    simplest_in_cut,
    surreal,
    to_dyadic,
)
from .dyadic import Dyadic
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
