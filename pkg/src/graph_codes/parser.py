"""Reading and writing the line-oriented graph file format.

Directed graphs::

    GRAPH n=3 alphabet=gf2
    0 1 0
    1 ? 0
    0 0 1

Undirected graphs use ``UGRAPH`` and list the lower triangle, line i holding
i+1 tokens. Rectangular information blocks use
``INFO rows=<r> cols=<c> alphabet=<tag>``. Tokens are minimal lowercase hex
field elements, or ``?`` for an Unknown cell.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from .exceptions import FieldError, GraphFormatError, InvalidParametersError
from .gf2m import Field, field_make
from .graph import DirectedGraph, ErasedGraph, UndirectedGraph

UNKNOWN_TOKEN = "?"


@dataclass(frozen=True, eq=False)
class InfoBlock:
    """A rectangular block of information symbols."""

    field: Field
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.int64, copy=True)
        if values.ndim != 2:
            raise InvalidParametersError("information block must be 2-D")
        if values.size and (values.min() < 0 or values.max() >= self.field.order):
            raise InvalidParametersError(f"information symbols must lie in GF(2^{self.field.m})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))


GraphFile = Union[DirectedGraph, UndirectedGraph, ErasedGraph, InfoBlock]


class GraphFileParser:
    """Parser and writer for graph, erased-graph and information files."""

    @staticmethod
    def parse_alphabet(tag: str) -> Field:
        """Map an alphabet tag (``gf2`` or ``gf2m:<m>``) to its field.

        Raises:
            GraphFormatError: If the tag is not recognised
        """
        if tag == "gf2":
            return field_make(1)
        if tag.startswith("gf2m:"):
            degree = tag[len("gf2m:"):]
            if degree.isdigit() and not degree.startswith("0") and 2 <= int(degree) <= 32:
                return field_make(int(degree))
        raise GraphFormatError(f"unknown alphabet tag: {tag!r}")

    @staticmethod
    def _parse_header(line: str) -> Tuple[str, Dict[str, str]]:
        parts = line.split(" ")
        kind = parts[0]
        expected = {"GRAPH": ["n", "alphabet"], "UGRAPH": ["n", "alphabet"],
                    "INFO": ["rows", "cols", "alphabet"]}
        if kind not in expected:
            raise GraphFormatError(f"unknown header kind: {kind!r}")
        fields: Dict[str, str] = {}
        for part in parts[1:]:
            key, sep, value = part.partition("=")
            if not sep or not value or key in fields:
                raise GraphFormatError(f"malformed header field: {part!r}")
            fields[key] = value
        if list(fields) != expected[kind]:
            raise GraphFormatError(f"{kind} header needs fields {' '.join(expected[kind])}")
        return kind, fields

    @staticmethod
    def _parse_size(value: str, name: str) -> int:
        if not value.isdigit() or (len(value) > 1 and value.startswith("0")) or int(value) < 1:
            raise GraphFormatError(f"{name} must be a positive integer, got {value!r}")
        return int(value)

    @staticmethod
    def _parse_row(field: Field, line: str, width: int, line_no: int,
                   allow_unknown: bool) -> Tuple[List[int], List[bool]]:
        tokens = line.split(" ")
        if len(tokens) != width:
            raise GraphFormatError(f"line {line_no}: expected {width} tokens, got {len(tokens)}")
        values: List[int] = []
        known: List[bool] = []
        for token in tokens:
            if token == UNKNOWN_TOKEN:
                if not allow_unknown:
                    raise GraphFormatError(f"line {line_no}: '?' is not allowed here")
                values.append(0)
                known.append(False)
                continue
            try:
                values.append(field.parse_element(token))
            except FieldError as e:
                raise GraphFormatError(f"line {line_no}: {e}") from e
            known.append(True)
        return values, known

    @staticmethod
    def _split_lines(text: str) -> List[str]:
        if "\r" in text:
            raise GraphFormatError("line endings must be LF")
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise GraphFormatError("empty file")
        return lines

    @staticmethod
    def parse(text: str) -> GraphFile:
        """Parse a graph, erased graph or information block.

        Args:
            text: File content

        Returns:
            DirectedGraph or UndirectedGraph when every cell is Known,
            ErasedGraph when any token is ``?``, InfoBlock for INFO files

        Raises:
            GraphFormatError: On bad headers, token counts, tags or tokens
        """
        lines = GraphFileParser._split_lines(text)
        kind, fields = GraphFileParser._parse_header(lines[0])
        field = GraphFileParser.parse_alphabet(fields["alphabet"])
        body = lines[1:]

        if kind == "INFO":
            rows = GraphFileParser._parse_size(fields["rows"], "rows")
            cols = GraphFileParser._parse_size(fields["cols"], "cols")
            if len(body) != rows:
                raise GraphFormatError(f"expected {rows} rows, got {len(body)}")
            values = [GraphFileParser._parse_row(field, line, cols, k + 2, False)[0]
                      for k, line in enumerate(body)]
            return InfoBlock(field, np.array(values, dtype=np.int64).reshape(rows, cols))

        n = GraphFileParser._parse_size(fields["n"], "n")
        if len(body) != n:
            raise GraphFormatError(f"expected {n} rows, got {len(body)}")
        labels = np.zeros((n, n), dtype=np.int64)
        known = np.ones((n, n), dtype=bool)
        directed = kind == "GRAPH"
        for i, line in enumerate(body):
            width = n if directed else i + 1
            values, row_known = GraphFileParser._parse_row(field, line, width, i + 2, True)
            labels[i, :width] = values
            known[i, :width] = row_known
        if not directed:
            labels = np.tril(labels) + np.tril(labels, -1).T
            known = np.tril(known) | np.tril(known, -1).T
        if not known.all():
            return ErasedGraph(field, labels, known, directed)
        if directed:
            return DirectedGraph(field, labels)
        return UndirectedGraph.from_lower(field, labels)

    @staticmethod
    def serialize(item: GraphFile) -> str:
        """Render an object in the bit-exact file format (LF endings, trailing newline)."""
        field = item.field
        if isinstance(item, InfoBlock):
            rows, cols = item.shape
            lines = [f"INFO rows={rows} cols={cols} alphabet={field.tag}"]
            lines += [" ".join(field.format_element(int(v)) for v in row) for row in item.values]
            return "\n".join(lines) + "\n"

        if isinstance(item, ErasedGraph):
            labels, known, directed = item.labels, item.known, item.directed
        else:
            labels = item.matrix()
            known = np.ones(labels.shape, dtype=bool)
            directed = item.directed
        n = labels.shape[0]
        lines = [f"{'GRAPH' if directed else 'UGRAPH'} n={n} alphabet={field.tag}"]
        for i in range(n):
            width = n if directed else i + 1
            lines.append(" ".join(
                field.format_element(int(labels[i, j])) if known[i, j] else UNKNOWN_TOKEN
                for j in range(width)
            ))
        return "\n".join(lines) + "\n"

    @staticmethod
    def read(path: Union[str, Path]) -> GraphFile:
        try:
            text = Path(path).read_text(encoding="ascii")
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"{path}: not an ASCII file") from e
        return GraphFileParser.parse(text)

    @staticmethod
    def write(path: Union[str, Path], item: GraphFile) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            f.write(GraphFileParser.serialize(item))
