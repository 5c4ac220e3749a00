"""Exact quantum link invariants of braid closures.

The Alexander-Conway polynomial comes from the sl(2) model at q = i, the
Links-Gould invariants LG^{n,1} at q = -1 from n commuting copies of it.
"""

from .braid import BraidWord, parse_braid, random_braid
from .engine import (
    InvariantResult,
    alexander,
    closure_trace,
    invariant,
    links_gould_qm1,
    verify_theorem,
)
from .laurent import LaurentPoly, parse_poly, unit_normalize
from .oracle import alexander_oracle
from .ribbon import RibbonData, build_lg_qm1_ribbon, build_sl2_ribbon

__all__ = [
    "BraidWord",
    "InvariantResult",
    "LaurentPoly",
    "RibbonData",
    "alexander",
    "alexander_oracle",
    "build_lg_qm1_ribbon",
    "build_sl2_ribbon",
    "closure_trace",
    "invariant",
    "links_gould_qm1",
    "parse_braid",
    "parse_poly",
    "random_braid",
    "unit_normalize",
    "verify_theorem",
]
__version__ = "0.1.0"
