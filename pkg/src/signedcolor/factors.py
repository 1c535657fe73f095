"""2-factors of cubic graphs and their link to strong labelings.

In a cubic graph a 2-factor is the complement of a perfect matching, so
enumerating perfect matchings enumerates 2-factors. A 2-factor is
*consistent* for a vertex-signed graph when each of its cycles holds an even
number of positive vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import InputError, VertexSignedGraph
from .labeling import first_strong_violation


@dataclass(frozen=True)
class TwoFactor:
    edges: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]


def _require_cubic(h) -> None:
    if not h.is_cubic():
        raise InputError("graph is not cubic")


def cycles_of(h, edge_ids: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Split a 2-regular spanning edge set into vertex cycles.

    Each cycle starts at its lowest vertex and heads to the smaller of its
    two neighbors. Raises if the edge set is not a 2-factor.
    """
    nbrs: list[list[int]] = [[] for _ in range(h.n)]
    for e in edge_ids:
        u, v = h.edges[e]
        nbrs[u].append(v)
        nbrs[v].append(u)
    if any(len(x) != 2 for x in nbrs):
        raise InputError("edge set is not a 2-factor")
    seen = [False] * h.n
    out = []
    for start in range(h.n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        prev, cur = start, min(nbrs[start])
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        out.append(tuple(cyc))
    return tuple(out)


def two_factor_from_edges(h, edge_ids: Sequence[int]) -> TwoFactor:
    edges = tuple(sorted(edge_ids))
    return TwoFactor(edges, cycles_of(h, edges))


def perfect_matchings(h) -> Iterator[tuple[int, ...]]:
    """Perfect matchings by backtracking: lowest unmatched vertex, neighbors ascending."""
    matched = [False] * h.n
    chosen: list[int] = []

    def rec(start: int):
        u = start
        while u < h.n and matched[u]:
            u += 1
        if u == h.n:
            yield tuple(sorted(chosen))
            return
        matched[u] = True
        for w in h.neighbors(u):
            if not matched[w]:
                matched[w] = True
                chosen.append(h.edge_id(u, w))
                yield from rec(u + 1)
                chosen.pop()
                matched[w] = False
        matched[u] = False

    yield from rec(0)


def enumerate_two_factors(h) -> Iterator[TwoFactor]:
    """Every 2-factor of a cubic graph exactly once, in matching-search order."""
    _require_cubic(h)
    for matching in perfect_matchings(h):
        m = set(matching)
        yield two_factor_from_edges(h, [e for e in range(h.m) if e not in m])


def first_inconsistent_cycle(h: VertexSignedGraph, f: TwoFactor) -> tuple[int, ...] | None:
    """First cycle of ``f`` with an odd number of positive vertices, or None."""
    if cycles_of(h, f.edges) != f.cycles:
        raise InputError("cycles do not match the 2-factor's edges")
    for cyc in f.cycles:
        if sum(1 for v in cyc if h.vertex_signs[v] > 0) % 2:
            return cyc
    return None


def is_consistent(h: VertexSignedGraph, f: TwoFactor) -> bool:
    return first_inconsistent_cycle(h, f) is None


def strong_labeling_from_two_factor(h: VertexSignedGraph, f: TwoFactor) -> tuple[str, ...]:
    """Label 2-factor edges a/b, switching label exactly at positive vertices.

    Each cycle starts with its lowest edge id labeled ``a``, walked from the
    smaller endpoint to the larger; edges outside the 2-factor get ``0``.
    """
    _require_cubic(h)
    bad = first_inconsistent_cycle(h, f)
    if bad is not None:
        raise InputError(f"cycle {bad} has an odd number of positive vertices")
    in_f = set(f.edges)
    labels = ["0"] * h.m
    for cyc in f.cycles:
        cyc_edges = [h.edge_id(u, v) for u, v in zip(cyc, cyc[1:] + cyc[:1])]
        e0 = min(cyc_edges)
        cur_edge, cur = e0, h.edges[e0][1]
        lab = "a"
        while True:
            labels[cur_edge] = lab
            nxt = next(e for e in h.incident[cur] if e in in_f and e != cur_edge)
            if h.vertex_signs[cur] > 0:
                lab = "b" if lab == "a" else "a"
            if nxt == e0:
                break
            cur_edge, cur = nxt, h.other(nxt, cur)
    return tuple(labels)


def two_factor_from_strong_labeling(h: VertexSignedGraph, labels: Sequence[str]) -> TwoFactor:
    """The a- and b-labeled edges of a strong labeling of a cubic graph."""
    _require_cubic(h)
    bad = first_strong_violation(h, labels)
    if bad is not None:
        raise InputError(f"labeling is not strong at vertex {bad}")
    return two_factor_from_edges(h, [e for e, x in enumerate(labels) if x != "0"])
