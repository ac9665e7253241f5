"""Exhaustive search for maximal determinants of binary circulant matrices."""
from .bounds import hbe_floor_scaled, u01_bound, upm1_bound
from .engine import SearchConfig, SearchResult, Segment, search
from .spectral import Alphabet, CirculantSpec
from .words import Word, is_necklace, necklace_count, next_necklace

__all__ = [
    "Alphabet", "CirculantSpec", "SearchConfig", "SearchResult", "Segment", "Word",
    "hbe_floor_scaled", "is_necklace", "necklace_count", "next_necklace", "search",
    "u01_bound", "upm1_bound",
]
__version__ = "0.1.0"
