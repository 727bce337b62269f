"""bmx: exact computation with simple binary matroids over GF(2)."""

from __future__ import annotations

from bmx.errors import CapacityError, FormatError, UsageError
from bmx.matroid import (
    LiftSpec,
    Matroid,
    ag,
    bb,
    chi,
    circuit,
    delete,
    free,
    from_bm1,
    from_compact,
    graphic,
    lift,
    pg,
    to_bm1,
    to_compact,
)
from bmx.morphism import canonical_key, contains, count_restrictions, isomorphic

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "FormatError",
    "UsageError",
    "LiftSpec",
    "Matroid",
    "ag",
    "bb",
    "chi",
    "circuit",
    "delete",
    "free",
    "from_bm1",
    "from_compact",
    "graphic",
    "lift",
    "pg",
    "to_bm1",
    "to_compact",
    "canonical_key",
    "contains",
    "count_restrictions",
    "isomorphic",
    "__version__",
]
