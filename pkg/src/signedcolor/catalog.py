"""Small embedded planar graphs and random generators for experiments.

Rotations are written out combinatorially (counter-clockwise neighbor order
of a concrete drawing); nothing here runs a planarity or embedding algorithm.
"""

from __future__ import annotations

import random
from typing import Sequence

from .graph import SignedGraph, VertexSignedGraph, is_three_connected, plane_dual


def from_neighbor_rotation(rot: Sequence[Sequence[int]]) -> SignedGraph:
    """All-positive embedded graph from cyclic neighbor lists."""
    n = len(rot)
    pairs = sorted({(min(u, v), max(u, v)) for u in range(n) for v in rot[u]})
    idx = {p: i for i, p in enumerate(pairs)}
    rotation = [[idx[(min(u, v), max(u, v))] for v in rot[u]] for u in range(n)]
    return SignedGraph(n, tuple(pairs), (1,) * len(pairs), rotation)


def neighbor_rotation(g) -> list[list[int]]:
    return [[g.other(e, v) for e in g.rotation[v]] for v in range(g.n)]


def wheel(n: int) -> SignedGraph:
    """Rim 0..n-1 around hub n."""
    rot = [[(i + 1) % n, n, (i - 1) % n] for i in range(n)]
    rot.append(list(range(n)))
    return from_neighbor_rotation(rot)


def prism(n: int) -> SignedGraph:
    """Outer cycle 0..n-1, inner cycle n..2n-1, spokes i -- n+i."""
    rot = [[(i + 1) % n, n + i, (i - 1) % n] for i in range(n)]
    rot += [[i, n + (i + 1) % n, n + (i - 1) % n] for i in range(n)]
    return from_neighbor_rotation(rot)


def antiprism(n: int) -> SignedGraph:
    """Outer cycle 0..n-1, inner cycle n..2n-1 rotated half a step."""
    o = lambda i: i % n
    p = lambda i: n + i % n
    rot = [[o(i + 1), p(i), p(i - 1), o(i - 1)] for i in range(n)]
    rot += [[o(i + 1), p(i + 1), p(i - 1), o(i)] for i in range(n)]
    return from_neighbor_rotation(rot)


def bipyramid(n: int) -> SignedGraph:
    """Rim 0..n-1, inner apex n, outer apex n+1."""
    rot = [[n + 1, (i + 1) % n, n, (i - 1) % n] for i in range(n)]
    rot.append(list(range(n)))
    rot.append(list(range(n - 1, -1, -1)))
    return from_neighbor_rotation(rot)


def icosahedron() -> SignedGraph:
    """Pentagonal antiprism capped by an inner apex 10 and an outer apex 11."""
    n = 5
    o = lambda i: i % n
    p = lambda i: n + i % n
    t, s = 10, 11
    rot = [[s, o(i + 1), p(i), p(i - 1), o(i - 1)] for i in range(n)]
    rot += [[o(i + 1), p(i + 1), t, p(i - 1), o(i)] for i in range(n)]
    rot.append([p(i) for i in range(n)])
    rot.append([o(i) for i in range(n - 1, -1, -1)])
    return from_neighbor_rotation(rot)


def tetrahedron() -> SignedGraph:
    return wheel(3)


def cube() -> SignedGraph:
    return prism(4)


def octahedron() -> SignedGraph:
    return antiprism(3)


def dodecahedron() -> SignedGraph:
    g, _, _ = plane_dual(icosahedron(), check=False)
    return g


def petersen() -> VertexSignedGraph:
    """Non-planar cubic graph without a rotation; handy for labeling tests."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return VertexSignedGraph.from_edges(10, outer + spokes + inner)


def polyhedra(max_vertices: int = 12) -> dict[str, SignedGraph]:
    """3-connected embedded planar graphs with at most ``max_vertices`` vertices."""
    out: dict[str, SignedGraph] = {}
    for n in range(3, max_vertices):
        if n + 1 <= max_vertices:
            out[f"wheel{n}"] = wheel(n)
        if 2 * n <= max_vertices:
            out[f"prism{n}"] = prism(n)
            out[f"antiprism{n}"] = antiprism(n)
        if n + 2 <= max_vertices:
            out[f"bipyramid{n}"] = bipyramid(n)
    if max_vertices >= 12:
        out["icosahedron"] = icosahedron()
    if max_vertices >= 20:
        out["dodecahedron"] = dodecahedron()
    return out


def random_signature(g: SignedGraph, rng: random.Random, p: float = 0.5) -> SignedGraph:
    return g.with_sigma([-1 if rng.random() < p else 1 for _ in range(g.m)])


def random_even_negatives(h, rng: random.Random) -> VertexSignedGraph:
    t = rng.randrange(0, h.n + 1, 2) if h.n else 0
    return VertexSignedGraph(h.n, h.edges, (1,) * h.n, h.rotation).with_negatives(
        rng.sample(range(h.n), t)
    )


def _faces_of_rotation(rot: list[list[int]]) -> list[list[tuple[int, int]]]:
    seen = set()
    faces = []
    for u in range(len(rot)):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                r = rot[b]
                a, b = b, r[(r.index(a) + 1) % len(r)]
            faces.append(face)
    return faces


def random_cubic_planar(n: int, rng: random.Random, three_connected: bool = True) -> VertexSignedGraph:
    """Random embedded cubic planar graph on ``n`` (even, >= 4) vertices.

    Grows K4 by the face operation: subdivide two distinct edges of one face
    and join the two new vertices across that face.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    while True:
        rot = [list(r) for r in neighbor_rotation(tetrahedron())]
        while len(rot) < n:
            faces = _faces_of_rotation(rot)
            face = rng.choice(faces)
            i, j = sorted(rng.sample(range(len(face)), 2))
            (a, b), (c, d) = face[i], face[j]
            p, q = len(rot), len(rot) + 1
            rot[a][rot[a].index(b)] = p
            rot[b][rot[b].index(a)] = p
            rot[c][rot[c].index(d)] = q
            rot[d][rot[d].index(c)] = q
            rot.append([a, q, b])
            rot.append([c, p, d])
        g = from_neighbor_rotation(rot)
        h = VertexSignedGraph(g.n, g.edges, (1,) * g.n, g.rotation)
        if not three_connected or is_three_connected(h):
            return h
