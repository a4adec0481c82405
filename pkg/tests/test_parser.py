"""Tests for the graph file format."""

import numpy as np
import pytest
from src.graph_codes.exceptions import GraphFormatError
from src.graph_codes.gf2m import GF2, field_make
from src.graph_codes.graph import DirectedGraph, ErasedGraph, UndirectedGraph
from src.graph_codes.parser import GraphFileParser, InfoBlock


def test_parse_directed_graph_with_unknown():
    """Test that '?' tokens produce an ErasedGraph."""
    text = "GRAPH n=3 alphabet=gf2\n0 1 0\n1 ? 0\n0 0 1\n"
    item = GraphFileParser.parse(text)
    assert isinstance(item, ErasedGraph)
    assert item.directed
    assert not item.is_known(1, 1)
    assert item.unknown_cells() == [(1, 1)]
    assert item.labels[0, 1] == 1


def test_parse_complete_directed_graph():
    """Test that a file without '?' gives a DirectedGraph."""
    item = GraphFileParser.parse("GRAPH n=2 alphabet=gf2\n0 1\n1 1\n")
    assert item == DirectedGraph(GF2, [[0, 1], [1, 1]])


def test_parse_undirected_graph_reads_lower_triangle():
    """Test that line i of a UGRAPH file holds i+1 tokens."""
    item = GraphFileParser.parse("UGRAPH n=3 alphabet=gf2\n1\n0 1\n1 0 0\n")
    assert isinstance(item, UndirectedGraph)
    assert item.label(2, 0) == 1
    assert item.label(0, 2) == 1
    assert item.label(2, 1) == 0


def test_serialize_is_bit_exact():
    """Test the exact serialized text of directed and undirected graphs."""
    directed = DirectedGraph(GF2, [[0, 1], [1, 1]])
    assert GraphFileParser.serialize(directed) == "GRAPH n=2 alphabet=gf2\n0 1\n1 1\n"
    undirected = UndirectedGraph.from_lower(field_make(4), np.array([[3, 0], [10, 5]]))
    assert GraphFileParser.serialize(undirected) == "UGRAPH n=2 alphabet=gf2m:4\n3\na 5\n"


def test_serialize_erased_undirected_graph():
    """Test that Unknown pairs are written as '?'."""
    text = "UGRAPH n=2 alphabet=gf2m:3\n?\n? 7\n"
    assert GraphFileParser.serialize(GraphFileParser.parse(text)) == text


def test_info_block():
    """Test reading and writing rectangular information blocks."""
    text = "INFO rows=2 cols=3 alphabet=gf2m:8\nff 0 1\n10 2 a0\n"
    item = GraphFileParser.parse(text)
    assert isinstance(item, InfoBlock)
    assert item.shape == (2, 3)
    assert item.values[1, 2] == 0xA0
    assert GraphFileParser.serialize(item) == text


def test_read_and_write(tmp_path):
    """Test that write then read returns the same graph."""
    graph = DirectedGraph(field_make(5), np.arange(16).reshape(4, 4) % 32)
    path = tmp_path / "graph.txt"
    GraphFileParser.write(path, graph)
    assert path.read_text() == GraphFileParser.serialize(graph)
    assert GraphFileParser.read(path) == graph


@pytest.mark.parametrize(
    "text",
    [
        "",
        "GRAPH n=2 alphabet=gf2\r\n0 1\r\n1 1\r\n",
        "GRAPH n=2 alphabet=gf2\n0 1\n",
        "GRAPH n=2 alphabet=gf2\n0 1 1\n1 1\n",
        "GRAPH n=2 alphabet=gf2\n0 2\n1 1\n",
        "GRAPH n=2 alphabet=gf2m:4\n01 1\n1 1\n",
        "GRAPH n=2 alphabet=gf2m:1\n0 1\n1 1\n",
        "GRAPH n=2 alphabet=gf5\n0 1\n1 1\n",
        "GRAPH alphabet=gf2 n=2\n0 1\n1 1\n",
        "GRAPH n=02 alphabet=gf2\n0 1\n1 1\n",
        "MATRIX n=2 alphabet=gf2\n0 1\n1 1\n",
        "UGRAPH n=2 alphabet=gf2\n0 1\n1 1\n",
        "INFO rows=1 cols=2 alphabet=gf2\n0 ?\n",
        "GRAPH n=2 alphabet=gf2\n0  1\n1 1\n",
    ],
)
def test_parse_rejects_malformed_files(text):
    """Test that malformed headers, rows and tokens raise GraphFormatError."""
    with pytest.raises(GraphFormatError):
        GraphFileParser.parse(text)


def test_read_rejects_non_ascii(tmp_path):
    """Test that non-ASCII files are rejected."""
    path = tmp_path / "bad.txt"
    path.write_bytes("GRAPH n=1 alphabet=gf2\né\n".encode("utf-8"))
    with pytest.raises(GraphFormatError):
        GraphFileParser.read(path)
