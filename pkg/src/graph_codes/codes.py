"""Construct any supported graph code by name."""

from typing import Optional, Tuple

from .array_code import ArrayCode
from .base import GraphCode
from .double_erasure import DoubleErasureCode, Variant
from .exceptions import InvalidParametersError
from .mds_graph_code import FlatMdsCode, RowColumnCode

CODE_NAMES: Tuple[str, ...] = ("c1", "flat", "c2", "cu1", "cu2", "cg4")
DOUBLE_ERASURE_CODES = frozenset(v.value for v in Variant)


def build_code(name: str, n: int, rho: Optional[int] = None) -> GraphCode:
    """Build a code from its name, node count and erasure budget.

    Args:
        name: One of CODE_NAMES
        n: Number of nodes
        rho: Node failures to correct; required for c1, flat and c2, and
            fixed to 2 for cu1, cu2 and cg4

    Raises:
        InvalidParametersError: On an unknown name or an unsupported (n, rho)
    """
    if name not in CODE_NAMES:
        raise InvalidParametersError(f"unknown code {name!r}; choose from {', '.join(CODE_NAMES)}")
    if n < 1:
        raise InvalidParametersError(f"n must be positive, got {n}")
    if name in DOUBLE_ERASURE_CODES:
        if rho is not None and rho != 2:
            raise InvalidParametersError(f"{name} corrects exactly 2 node failures, got rho={rho}")
        return DoubleErasureCode(n, Variant(name))
    if rho is None:
        raise InvalidParametersError(f"{name} needs --rho")
    if name == "c1":
        return RowColumnCode(n, rho)
    if name == "flat":
        return FlatMdsCode(n, rho)
    return ArrayCode(n, rho)
