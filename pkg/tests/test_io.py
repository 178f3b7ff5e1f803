import pytest
from hypothesis import given

from gen import ancestral_graphs
from mageq import parse_graph, read_graph, serialize_graph, write_graph
from mageq.errors import ParseError


def test_parse_basic():
    g = parse_graph("# comment\nnodes: a b c z\na -> b\nb <-> c\n\nc -- z\n")
    assert g.vertices == ("a", "b", "c", "z")
    assert g.is_directed("a", "b")
    assert g.is_bidirected("b", "c")
    assert g.is_undirected("c", "z")


def test_isolated_vertex_needs_nodes_line():
    assert parse_graph("nodes: q\na -> b\n").vertices == ("a", "b", "q")


def test_canonical_output():
    text = serialize_graph(parse_graph("b <-> c\nb -> a\n"))
    assert text == "nodes: a b c\nb -> a\nb <-> c\n"


@pytest.mark.parametrize("bad", ["a => b", "a ->", "a - > b", "a -> b -> c", "nodes: a,b"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_graph(bad)


def test_parse_error_reports_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("a -> b\noops\n")


@given(ancestral_graphs())
def test_round_trip(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_file_round_trip(tmp_path):
    g = parse_graph("x -> q\nq <-> b\n")
    path = tmp_path / "g.ag"
    write_graph(g, path)
    assert read_graph(path) == g
