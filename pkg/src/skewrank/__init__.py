"""Sum-rank metric codes as quotients of skew polynomial rings over finite fields."""

__version__ = "0.1.0"

from .errors import SkewRankError
from .gf import Tower, build_tower
from .skew import SkewPoly
from .sumrank import LambdaContext, QuotientElem, make_context, weight
from .codes import Code, lrs, min_distance, twisted_lrs, tz_code, tz_mds

__all__ = [
    "SkewRankError",
    "Tower",
    "build_tower",
    "SkewPoly",
    "LambdaContext",
    "QuotientElem",
    "make_context",
    "weight",
    "Code",
    "lrs",
    "twisted_lrs",
    "tz_code",
    "tz_mds",
    "min_distance",
]
