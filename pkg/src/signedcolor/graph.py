"""Signed graphs, vertex-signed graphs and rotation-system embeddings.

Vertices are ``0..n-1``. Edges are stored as sorted ``(u, v)`` pairs with
``u < v``; the edge id is the position in that sorted tuple. A rotation
system, when present, lists for every vertex the ids of its incident edges
in cyclic order. Rotations are normalized so each cyclic list starts with
its smallest edge id, which makes equality of embedded graphs meaningful.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

Edge = tuple[int, int]
Rotation = tuple[tuple[int, ...], ...]


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class EmbeddingError(InputError):
    """Rotation system does not describe a plane embedding."""


class ContradictionError(RuntimeError):
    """Two results that must agree by theory disagree."""


def _normalize_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[i:]) + tuple(seq[:i])


def canonicalize(
    n: int,
    pairs: Sequence[tuple[int, int]],
    rotation: Sequence[Sequence[int]] | None = None,
) -> tuple[tuple[Edge, ...], list[int], Rotation | None]:
    """Sort edges into canonical order.

    Returns the canonical edge tuple, ``perm`` with ``perm[old] = new`` and the
    rotation rewritten to the new ids (``None`` if no rotation was given).
    """
    norm = [(min(u, v), max(u, v)) for u, v in pairs]
    order = sorted(range(len(norm)), key=norm.__getitem__)
    perm = [0] * len(norm)
    for new, old in enumerate(order):
        perm[old] = new
    edges = tuple(norm[i] for i in order)
    rot = None
    if rotation is not None:
        rot = tuple(tuple(perm[e] for e in rotation[v]) for v in range(n))
    return edges, perm, rot


class _GraphMixin:
    """Adjacency helpers shared by both graph types."""

    n: int
    edges: tuple[Edge, ...]
    rotation: Rotation | None

    def _validate_structure(self) -> None:
        if self.n < 0:
            raise InputError("negative vertex count")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InputError(f"bad edge {(u, v)} for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise InputError("edges must be sorted and free of duplicates")
            prev = (u, v)
        if self.rotation is not None:
            if len(self.rotation) != self.n:
                raise InputError("rotation must list every vertex")
            rot = []
            for v, cyc in enumerate(self.rotation):
                if sorted(cyc) != list(self.incident[v]):
                    raise InputError(f"rotation at {v} is not a permutation of its edges")
                rot.append(_normalize_cycle(tuple(cyc)))
            object.__setattr__(self, "rotation", tuple(rot))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[(min(u, v), max(u, v))]
        except KeyError:
            raise InputError(f"{(u, v)} is not an edge") from None

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(sorted(self.other(e, v) for e in self.incident[v])) for v in range(self.n)
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in ascending order."""
        return self._adjacency[v]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs_order(self, 0)) == self.n

    def is_cubic(self) -> bool:
        return all(len(x) == 3 for x in self.incident)

    @property
    def embedded(self) -> bool:
        return self.rotation is not None


@dataclass(frozen=True, eq=True)
class SignedGraph(_GraphMixin):
    """Simple graph with an edge signature in {+1, -1}, optionally embedded."""

    n: int
    edges: tuple[Edge, ...]
    sigma: tuple[int, ...]
    rotation: Rotation | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if self.rotation is not None:
            object.__setattr__(self, "rotation", tuple(tuple(r) for r in self.rotation))
        self._validate_structure()
        if len(self.sigma) != len(self.edges):
            raise InputError("one sign per edge required")
        if any(s not in (1, -1) for s in self.sigma):
            raise InputError("edge signs must be +1 or -1")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], rotation=None) -> "SignedGraph":
        """Build from ``(u, v)`` or ``(u, v, sign)`` items in any order.

        ``rotation`` refers to positions in the given edge list.
        """
        items = [tuple(e) for e in edges]
        pairs = [(e[0], e[1]) for e in items]
        signs = [e[2] if len(e) > 2 else 1 for e in items]
        canon, perm, rot = canonicalize(n, pairs, rotation)
        sigma = [0] * len(items)
        for old, s in enumerate(signs):
            sigma[perm[old]] = s
        return cls(n, canon, tuple(sigma), rot)

    def with_sigma(self, sigma: Sequence[int]) -> "SignedGraph":
        return SignedGraph(self.n, self.edges, tuple(sigma), self.rotation)

    def negative_edges(self) -> list[int]:
        return [i for i, s in enumerate(self.sigma) if s < 0]


@dataclass(frozen=True, eq=True)
class VertexSignedGraph(_GraphMixin):
    """Simple graph whose vertices carry signs (the dual side of a signed graph)."""

    n: int
    edges: tuple[Edge, ...]
    vertex_signs: tuple[int, ...]
    rotation: Rotation | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "vertex_signs", tuple(self.vertex_signs))
        if self.rotation is not None:
            object.__setattr__(self, "rotation", tuple(tuple(r) for r in self.rotation))
        self._validate_structure()
        if len(self.vertex_signs) != self.n:
            raise InputError("one sign per vertex required")
        if any(s not in (1, -1) for s in self.vertex_signs):
            raise InputError("vertex signs must be +1 or -1")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Sequence[int]], vertex_signs=None, rotation=None
    ) -> "VertexSignedGraph":
        pairs = [(e[0], e[1]) for e in edges]
        canon, _, rot = canonicalize(n, pairs, rotation)
        signs = tuple(vertex_signs) if vertex_signs is not None else (1,) * n
        return cls(n, canon, signs, rot)

    @property
    def negative_vertices(self) -> list[int]:
        return [v for v, s in enumerate(self.vertex_signs) if s < 0]

    def with_vertex_signs(self, signs: Sequence[int]) -> "VertexSignedGraph":
        return VertexSignedGraph(self.n, self.edges, tuple(signs), self.rotation)

    def with_negatives(self, negatives: Iterable[int]) -> "VertexSignedGraph":
        neg = set(negatives)
        return self.with_vertex_signs([-1 if v in neg else 1 for v in range(self.n)])


class Face(NamedTuple):
    """A face as its boundary walk.

    ``darts`` holds ``(edge id, tail vertex)`` pairs in traversal order.
    """

    darts: tuple[tuple[int, int], ...]
    sign: int

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.darts)

    def __len__(self) -> int:  # boundary length
        return len(self.darts)


def _bfs_order(g: _GraphMixin, root: int, removed: frozenset[int] = frozenset()) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen and w not in removed:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def bfs_tree(g: _GraphMixin, root: int = 0) -> dict[int, tuple[int, int]]:
    """BFS spanning tree of ``root``'s component, neighbors in ascending order.

    Maps each non-root vertex to ``(parent, edge id)``.
    """
    parent: dict[int, tuple[int, int]] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                parent[w] = (u, g.edge_id(u, w))
                queue.append(w)
    return parent


def bfs_path(g: _GraphMixin, a: int, b: int) -> list[int]:
    """Edge ids of the BFS shortest path from ``a`` to ``b``."""
    parent = bfs_tree(g, a)
    if b != a and b not in parent:
        raise InputError(f"no path between {a} and {b}")
    path = []
    while b != a:
        p, e = parent[b]
        path.append(e)
        b = p
    return path[::-1]


def switch(g: SignedGraph, v: int) -> SignedGraph:
    """Negate the sign of every edge at ``v``."""
    if not 0 <= v < g.n:
        raise InputError(f"unknown vertex {v}")
    sigma = list(g.sigma)
    for e in g.incident[v]:
        sigma[e] = -sigma[e]
    return g.with_sigma(sigma)


def cycle_sign(g: SignedGraph, cycle: Sequence[int]) -> int:
    """Product of edge signs along the closed walk ``cycle``.

    The walk is closed implicitly; a repeated first vertex at the end is
    accepted as well.
    """
    seq = list(cycle)
    if len(seq) > 1 and seq[0] == seq[-1]:
        seq.pop()
    if len(seq) < 2:
        raise InputError("a cycle needs at least two vertices")
    sign = 1
    for u, v in zip(seq, seq[1:] + seq[:1]):
        sign *= g.sigma[g.edge_id(u, v)]
    return sign


def _potentials(g: SignedGraph) -> tuple[list[int], list[int]]:
    """Switching potentials over a BFS spanning forest, and the cotree edges."""
    pot = [0] * g.n
    tree_edges: set[int] = set()
    for root in range(g.n):
        if pot[root]:
            continue
        pot[root] = 1
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    e = g.edge_id(u, w)
                    tree_edges.add(e)
                    pot[w] = pot[u] * g.sigma[e]
                    queue.append(w)
    cotree = [e for e in range(g.m) if e not in tree_edges]
    return pot, cotree


def fundamental_cycle_signs(g: SignedGraph) -> dict[int, int]:
    """Sign of the fundamental cycle of each cotree edge (BFS forest from low ids)."""
    pot, cotree = _potentials(g)
    return {e: g.sigma[e] * pot[g.edges[e][0]] * pot[g.edges[e][1]] for e in cotree}


def switch_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    if g1.n != g2.n or g1.edges != g2.edges:
        raise InputError("switching equivalence needs the same underlying graph")
    return fundamental_cycle_signs(g1) == fundamental_cycle_signs(g2)


def switching_to(g: SignedGraph, target: SignedGraph) -> list[int] | None:
    """A vertex set whose switching turns ``g`` into ``target``, or None."""
    if not switch_equivalent(g, target):
        return None
    p1, _ = _potentials(g)
    p2, _ = _potentials(target)
    return [v for v in range(g.n) if p1[v] != p2[v]]


def trace_faces(g: _GraphMixin) -> list[Face]:
    """Faces of the rotation system, checked against Euler's formula."""
    if g.rotation is None:
        raise InputError("graph carries no rotation system")
    if not g.is_connected():
        raise InputError("face tracing needs a connected graph")
    if g.m == 0:
        return [Face((), 1)] if g.n == 1 else []
    pos = [{e: i for i, e in enumerate(g.rotation[v])} for v in range(g.n)]
    sigma = getattr(g, "sigma", None)
    seen: set[tuple[int, int]] = set()
    faces = []
    for e0 in range(g.m):
        for tail0 in g.edges[e0]:
            if (e0, tail0) in seen:
                continue
            darts = []
            e, tail = e0, tail0
            while (e, tail) not in seen:
                seen.add((e, tail))
                darts.append((e, tail))
                head = g.other(e, tail)
                rot = g.rotation[head]
                e = rot[(pos[head][e] + 1) % len(rot)]
                tail = head
            sign = 1
            if sigma is not None:
                for d, _ in darts:
                    sign *= sigma[d]
            faces.append(Face(tuple(darts), sign))
    if g.n - g.m + len(faces) != 2:
        raise EmbeddingError(
            f"Euler check failed: V-E+F = {g.n}-{g.m}+{len(faces)} != 2"
        )
    return faces


def is_three_connected(g: _GraphMixin) -> bool:
    """Vertex connectivity >= 3, by removing every vertex pair."""
    if g.n < 4 or not g.is_connected():
        return False
    for a in range(g.n):
        for b in range(a + 1, g.n):
            removed = frozenset((a, b))
            root = next(v for v in range(g.n) if v not in removed)
            if len(_bfs_order(g, root, removed)) != g.n - 2:
                return False
    return True


def negative_vertex_count_parity(h: VertexSignedGraph) -> int:
    """0 if the number of negative vertices is even, else 1."""
    return len(h.negative_vertices) % 2


class DualPair(NamedTuple):
    """A signed plane graph, its vertex-signed dual and the edge bijection.

    ``edge_map[e]`` is the id of the dual edge crossing primal edge ``e``;
    ``faces[f]`` is the primal face that became dual vertex ``f``.
    """

    primal: SignedGraph
    dual: VertexSignedGraph
    edge_map: tuple[int, ...]
    faces: tuple[Face, ...]


def _dual_structure(g: _GraphMixin, check: bool = True):
    faces = trace_faces(g)
    if check and not is_three_connected(g):
        warnings.warn("dual of a graph that is not 3-connected", stacklevel=3)
    side: dict[int, list[int]] = {e: [] for e in range(g.m)}
    for f, face in enumerate(faces):
        for e in face.edges:
            side[e].append(f)
    pairs = []
    for e in range(g.m):
        f1, f2 = side[e]
        if f1 == f2:
            raise InputError(f"edge {g.edges[e]} is a bridge; its dual is a loop")
        pairs.append((f1, f2))
    if len(set(map(lambda p: (min(p), max(p)), pairs))) != len(pairs):
        raise InputError("dual has parallel edges (input not 3-connected)")
    rotation = [list(face.edges) for face in faces]
    edges, perm, rot = canonicalize(len(faces), pairs, rotation)
    return faces, edges, tuple(perm), rot


def dual(g: SignedGraph, check: bool = True) -> DualPair:
    """Dual of an embedded signed graph; dual vertices carry the face signs."""
    faces, edges, perm, rot = _dual_structure(g, check)
    h = VertexSignedGraph(len(faces), edges, tuple(f.sign for f in faces), rot)
    return DualPair(g, h, perm, tuple(faces))


def plane_dual(h: _GraphMixin, check: bool = True) -> tuple[SignedGraph, tuple[int, ...], tuple[Face, ...]]:
    """Unsigned dual of any embedded graph: (all-positive dual, edge map, faces)."""
    faces, edges, perm, rot = _dual_structure(h, check)
    return SignedGraph(len(faces), edges, (1,) * len(edges), rot), perm, tuple(faces)


def face_vertex_correspondence(pair: DualPair) -> list[int]:
    """For each face of the dual, the primal vertex it surrounds.

    Used to check that dualizing twice returns the original graph.
    """
    g, h = pair.primal, pair.dual
    inverse = {d: e for e, d in enumerate(pair.edge_map)}
    by_edges = {frozenset(g.incident[v]): v for v in range(g.n)}
    out = []
    for face in trace_faces(h):
        key = frozenset(inverse[d] for d in face.edges)
        if key not in by_edges:
            raise ContradictionError("dual face does not match a primal vertex star")
        out.append(by_edges[key])
    return out
