"""Exact computation in Thompson's groups F and T.

The package is organized around one universal element representation,
the dyadic piecewise-linear map (`plmap.PLMap`), together with the
combinatorial tree-pair notation (`treepair.TreePair`) used for input,
output and the 2-core construction.  Higher layers provide group-level
queries (`groupcalc`), the Stallings 2-core and the generation criterion
for F (`core2`, `golan`), and executable versions of the constructive
arguments behind the generation theorems for T (`construct`).
"""

from .dyadic import CirclePoint, Dyadic, circ_between, circ_chain, circ_interp, dyadic

__all__ = [
    "Dyadic",
    "CirclePoint",
    "dyadic",
    "circ_between",
    "circ_chain",
    "circ_interp",
]
