"""JSON, graph6 and DOT formats for graphs and solver artifacts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence, Union

import networkx as nx

from .graph import InputError, SignedGraph, VertexSignedGraph

AnyGraph = Union[SignedGraph, VertexSignedGraph]


def graph_to_dict(g: AnyGraph) -> dict[str, Any]:
    sigma = getattr(g, "sigma", (1,) * g.m)
    d: dict[str, Any] = {"n": g.n, "edges": [[u, v, s] for (u, v), s in zip(g.edges, sigma)]}
    if g.rotation is not None:
        d["rotation"] = [list(r) for r in g.rotation]
    if isinstance(g, VertexSignedGraph):
        d["vertex_signs"] = list(g.vertex_signs)
    return d


def graph_from_dict(d: dict[str, Any]) -> AnyGraph:
    """Parse the graph JSON document.

    A document with ``vertex_signs`` becomes a :class:`VertexSignedGraph`
    (its edge signs must then all be +1); otherwise a :class:`SignedGraph`.
    Edges may come in any order; rotation ids refer to the listed order.
    """
    try:
        n = int(d["n"])
        raw = [list(e) for e in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from None
    for e in raw:
        if len(e) not in (2, 3) or not all(isinstance(x, int) for x in e):
            raise InputError(f"malformed edge entry {e}")
    rotation = d.get("rotation")
    if "vertex_signs" in d:
        if any(len(e) == 3 and e[2] != 1 for e in raw):
            raise InputError("a vertex-signed document cannot carry negative edges")
        return VertexSignedGraph.from_edges(n, [e[:2] for e in raw], d["vertex_signs"], rotation)
    return SignedGraph.from_edges(n, raw, rotation)


def dumps(obj: dict[str, Any]) -> str:
    """Stable text form: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_json(g: AnyGraph) -> str:
    return dumps(graph_to_dict(g))


def graph_from_json(text: str) -> AnyGraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise InputError("graph document must be a JSON object")
    return graph_from_dict(d)


def load_graph(path: str | Path) -> AnyGraph:
    return graph_from_json(Path(path).read_text())


def coloring_to_dict(k: int, colors: Sequence[int]) -> dict[str, Any]:
    return {"k": k, "colors": list(colors)}


def labeling_to_dict(labels: Sequence[str]) -> dict[str, Any]:
    return {"labels": list(labels)}


def labeling_from_dict(d: dict[str, Any]) -> tuple[str, ...]:
    labels = tuple(d["labels"])
    if any(x not in ("0", "a", "b") for x in labels):
        raise InputError("labels must be '0', 'a' or 'b'")
    return labels


def two_factor_to_dict(f) -> dict[str, Any]:
    return {"edges": list(f.edges), "cycles": [list(c) for c in f.cycles]}


def to_networkx(g: AnyGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def to_graph6(g: AnyGraph, underlying: bool = False) -> str:
    """graph6 string of the underlying graph.

    Refuses to drop sign information unless ``underlying`` is set.
    """
    lossy = any(s < 0 for s in getattr(g, "sigma", ())) or any(
        s < 0 for s in getattr(g, "vertex_signs", ())
    )
    if lossy and not underlying:
        raise InputError("graph6 cannot store signs; pass underlying=True to drop them")
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").strip()


def from_graph6(text: str) -> SignedGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        G = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise InputError(f"bad graph6 string: {exc}") from None
    return SignedGraph.from_edges(G.number_of_nodes(), list(G.edges()))


def to_dot(g: AnyGraph, name: str = "G") -> str:
    """DOT rendering: negative edges dashed red, negative vertices as minus circles."""
    lines = [f"graph {name} {{", "  node [shape=point];"]
    vsigns = getattr(g, "vertex_signs", (1,) * g.n)
    for v in range(g.n):
        if vsigns[v] < 0:
            lines.append(f'  {v} [shape=circle, width=0.2, label="-"];')
        else:
            lines.append(f"  {v};")
    sigma = getattr(g, "sigma", (1,) * g.m)
    for (u, v), s in zip(g.edges, sigma):
        if s < 0:
            lines.append(f'  {u} -- {v} [style=dashed, color=red, label="-"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
