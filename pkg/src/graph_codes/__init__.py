"""Graph codes - node-erasure codes whose coordinates are the edges of a complete graph."""

from .array_code import ArrayCode, cover_weight, gabidulin_make
from .base import GraphCode
from .codes import CODE_NAMES, build_code
from .double_erasure import DoubleErasureCode, Variant, double_decode
from .exceptions import DecodingError, GraphCodeError, InvalidParametersError
from .gf2m import Field, field_make
from .graph import DirectedGraph, ErasedGraph, UndirectedGraph, erase_nodes
from .mds_graph_code import FlatMdsCode, RowColumnCode, flat_make
from .parser import GraphFileParser

__version__ = "0.1.0"
__all__ = [
    "ArrayCode",
    "cover_weight",
    "gabidulin_make",
    "GraphCode",
    "CODE_NAMES",
    "build_code",
    "DoubleErasureCode",
    "Variant",
    "double_decode",
    "DecodingError",
    "GraphCodeError",
    "InvalidParametersError",
    "Field",
    "field_make",
    "DirectedGraph",
    "ErasedGraph",
    "UndirectedGraph",
    "erase_nodes",
    "FlatMdsCode",
    "RowColumnCode",
    "flat_make",
    "GraphFileParser",
]
