import json

import networkx as nx
import pytest
from hypothesis import given

from signedcolor.catalog import tetrahedron
from signedcolor.constructions import build_tutte_graph
from signedcolor.graph import InputError, SignedGraph, VertexSignedGraph
from signedcolor.serialize import (
    from_graph6,
    graph_from_json,
    graph_to_json,
    labeling_from_dict,
    to_dot,
    to_graph6,
)

from .strategies import embedded_signed, signed_graphs


@given(signed_graphs())
def test_json_round_trip(g):
    text = graph_to_json(g)
    assert graph_from_json(text) == g
    assert graph_to_json(graph_from_json(text)) == text


@given(embedded_signed())
def test_json_round_trip_keeps_rotation(g):
    assert graph_from_json(graph_to_json(g)) == g


def test_json_vertex_signed_round_trip():
    h = build_tutte_graph()
    back = graph_from_json(graph_to_json(h))
    assert isinstance(back, VertexSignedGraph) and back == h


def test_json_edges_in_any_order_are_canonicalized():
    doc = {"n": 3, "edges": [[2, 1, -1], [0, 1, 1]]}
    g = graph_from_json(json.dumps(doc))
    assert g.edges == ((0, 1), (1, 2)) and g.sigma == (1, -1)


@pytest.mark.parametrize(
    "text",
    ["[", "[]", '{"edges": []}', '{"n": 2, "edges": [[0, 1, 1, 1]]}', '{"n": 2, "edges": [[0, 5]]}'],
)
def test_json_malformed(text):
    with pytest.raises(InputError):
        graph_from_json(text)


def test_graph6_k4():
    assert to_graph6(tetrahedron()) == nx.to_graph6_bytes(nx.complete_graph(4), header=False).decode().strip()
    assert from_graph6(">>graph6<<C~").edges == tetrahedron().edges


def test_graph6_refuses_signs():
    g = tetrahedron().with_sigma([-1] + [1] * 5)
    with pytest.raises(InputError):
        to_graph6(g)
    assert to_graph6(g, underlying=True) == to_graph6(tetrahedron())
    with pytest.raises(InputError):
        to_graph6(build_tutte_graph())


def test_dot_marks_negatives():
    dot = to_dot(build_tutte_graph())
    assert dot.count('label="-"') == 12
    assert dot.count(" -- ") == 69
    g = SignedGraph.from_edges(2, [(0, 1, -1)])
    assert "style=dashed" in to_dot(g)


def test_labels_validated():
    with pytest.raises(InputError):
        labeling_from_dict({"labels": ["0", "c"]})
