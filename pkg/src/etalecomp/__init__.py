"""Comparison, paradoxicality and invariant measures for ample groupoids
presented over one-sided subshifts."""

__version__ = "0.1.0"

from .symbolic import Clopen, Subshift, canonicalize  # noqa: E402
from .bisections import GroupoidPresentation, PrefixExchange  # noqa: E402

__all__ = ["Clopen", "Subshift", "canonicalize", "GroupoidPresentation", "PrefixExchange",
           "__version__"]
