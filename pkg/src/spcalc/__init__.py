"""Computing small presheaves on enriched categories."""

from . import cones, smallness  # noqa: F401  (registers the family decisions)
from .config import DEFAULT_BOUNDS, Bounds
from .errors import SpcalcError

__all__ = ["Bounds", "DEFAULT_BOUNDS", "SpcalcError"]
