"""Weak and strong signed edge-labelings with labels ``"0"``, ``"a"``, ``"b"``.

Encode the labels as the nonzero elements of Z2 x Z2: ``0 -> (1,1)``,
``a -> (1,0)``, ``b -> (0,1)``. The XOR of the codes at a vertex is
``(d0+da, d0+db) mod 2``. Since ``d0+da+db = d``, the three weak-labeling
parity conditions hold at ``v`` exactly when that XOR is ``(0,0)`` for a
positive ``v`` and ``(1,1)`` for a negative one. So a vertex with one
unlabeled edge left determines the label of that edge, and feasibility is
a XOR-sum condition that combines well under a tree decomposition.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Sequence

import networkx as nx
import numpy as np
from networkx.algorithms.approximation import treewidth_min_fill_in

from .coloring import BudgetExceeded, first_improper_edge
from .graph import (
    ContradictionError,
    DualPair,
    InputError,
    VertexSignedGraph,
    bfs_path,
    bfs_tree,
    plane_dual,
    trace_faces,
)

LABELS = ("0", "a", "b")
CODE = {"0": 3, "a": 1, "b": 2}
LABEL_OF = {3: "0", 1: "a", 2: "b"}


class DegreeProfile(NamedTuple):
    d0: int
    da: int
    db: int

    @property
    def d(self) -> int:
        return self.d0 + self.da + self.db


def _check_inputs(h: VertexSignedGraph, labels: Sequence[str]) -> None:
    if len(h.negative_vertices) % 2:
        raise InputError("the number of negative vertices must be even")
    if len(labels) != h.m:
        raise InputError(f"expected {h.m} labels, got {len(labels)}")
    for x in labels:
        if x not in CODE:
            raise InputError(f"unknown label {x!r}")


def degree_profile(h: VertexSignedGraph, labels: Sequence[str], v: int) -> DegreeProfile:
    counts = {"0": 0, "a": 0, "b": 0}
    for e in h.incident[v]:
        counts[labels[e]] += 1
    return DegreeProfile(counts["0"], counts["a"], counts["b"])


def _weak_ok(p: DegreeProfile, sign: int) -> bool:
    d = p.d
    target = d % 2 if sign > 0 else (d + 1) % 2
    return p.d0 % 2 == d % 2 and p.da % 2 == target and p.db % 2 == target


def first_weak_violation(h: VertexSignedGraph, labels: Sequence[str]) -> int | None:
    """Lowest vertex breaking a weak-labeling parity condition, or None."""
    _check_inputs(h, labels)
    for v in range(h.n):
        if not _weak_ok(degree_profile(h, labels, v), h.vertex_signs[v]):
            return v
    return None


def first_strong_violation(h: VertexSignedGraph, labels: Sequence[str]) -> int | None:
    """Like :func:`first_weak_violation`, also rejecting odd vertices labeled all 0."""
    _check_inputs(h, labels)
    for v in range(h.n):
        p = degree_profile(h, labels, v)
        if not _weak_ok(p, h.vertex_signs[v]):
            return v
        if p.d % 2 == 1 and p.d0 == p.d:
            return v
    return None


def is_weak_labeling(h: VertexSignedGraph, labels: Sequence[str]) -> bool:
    return first_weak_violation(h, labels) is None


def is_strong_labeling(h: VertexSignedGraph, labels: Sequence[str]) -> bool:
    return first_strong_violation(h, labels) is None


_WHT4 = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]], dtype=np.int64)
# axis of size 8 stores (acc, seen-nonzero flag) as acc + 4*flag; flags combine by OR
_FWD8 = np.kron(np.array([[1, 0], [1, 1]], dtype=np.int64), _WHT4)
_INV8 = np.kron(np.array([[1, 0], [-1, 1]], dtype=np.int64), _WHT4)
_CODE_ORDER = (3, 1, 2)  # "0", "a", "b"


def _step(i: int, code: int, size: int) -> int:
    """Axis value after adding an edge with ``code`` to an axis of ``size`` 4 or 8."""
    if size == 4:
        return i ^ code
    return ((i & 3) ^ code) | (4 if i >> 2 or code != 3 else 0)


class _Table(NamedTuple):
    vars: tuple[int, ...]
    arr: np.ndarray  # bool, one axis per variable


class _DecompositionSolver:
    """Dynamic programming over a tree decomposition of ``h``.

    A table maps the partial state of each bag vertex (XOR of the labels
    placed so far, plus in strong mode a "saw a nonzero label" flag for odd
    negative vertices) to feasibility. Children are merged by XOR
    convolution via an exact Walsh-Hadamard transform. Every
    intermediate table is kept so a witness can be read back top-down.
    """

    def __init__(self, h: VertexSignedGraph, strong: bool):
        self.h = h
        self.target = [0 if s > 0 else 3 for s in h.vertex_signs]
        self.size = [
            8 if strong and h.vertex_signs[v] < 0 and h.degree(v) % 2 else 4 for v in range(h.n)
        ]
        G = nx.Graph()
        G.add_nodes_from(range(h.n))
        G.add_edges_from(h.edges)
        width, tree = treewidth_min_fill_in(G)
        self.width = width
        bags = sorted((tuple(sorted(b)) for b in tree.nodes), key=lambda b: (len(b) == 0, b))
        self.root = bags[0]
        nbrs = {tuple(sorted(b)): sorted(tuple(sorted(c)) for c in tree[b]) for b in tree.nodes}
        self.order = [self.root]
        self.children: dict[tuple, list[tuple]] = {}
        seen = {self.root}
        for b in self.order:
            kids = [c for c in nbrs[b] if c not in seen]
            seen.update(kids)
            self.children[b] = kids
            self.order.extend(kids)
        top: dict[int, tuple] = {}
        for b in self.order:
            for v in b:
                top.setdefault(v, b)
        self.forget = {b: tuple(v for v in b if top[v] == b) for b in self.order}
        self.edges_at: dict[tuple, list[int]] = {b: [] for b in self.order}
        for e, (u, v) in enumerate(h.edges):
            home = next(b for b in self.order if u in b and v in b)
            self.edges_at[home].append(e)
        self.final: dict[tuple, np.ndarray] = {}
        self.out: dict[tuple, _Table] = {}
        self.stages: dict[tuple, list] = {}
        self.largest = 0

    # table operations --------------------------------------------------

    def _embed(self, t: _Table, bag: tuple[int, ...]) -> np.ndarray:
        arr = np.zeros([self.size[v] for v in bag], dtype=bool)
        present = [v for v in bag if v in t.vars]
        src = np.transpose(t.arr, [t.vars.index(v) for v in present]) if t.vars else t.arr
        index = tuple(slice(None) if v in t.vars else 0 for v in bag)
        arr[index] = src
        return arr

    def _transform(self, arr: np.ndarray, bag, inverse: bool) -> np.ndarray:
        for axis, v in enumerate(bag):
            m = (_INV8 if inverse else _FWD8) if self.size[v] == 8 else _WHT4
            arr = np.moveaxis(np.tensordot(m, arr, axes=([1], [axis])), 0, axis)
        return arr

    def _join(self, a: np.ndarray, b: np.ndarray, bag) -> np.ndarray:
        # transformed entries stay below n**3, so floats are exact up to 2**53
        n = a.size
        if n ** 3 < 2 ** 53:
            dtype = np.float64
        elif n ** 3 < 2 ** 62:
            dtype = np.int64
        else:
            dtype = object
        fa = self._transform(a.astype(dtype), bag, False)
        fb = self._transform(b.astype(dtype), bag, False)
        prod = self._transform(fa * fb, bag, True)
        # prod is 4**len(bag) times a nonnegative count
        return prod * 2 > 4 ** len(bag)

    def _edge(self, arr: np.ndarray, bag, e: int) -> np.ndarray:
        u, v = self.h.edges[e]
        iu, iv = bag.index(u), bag.index(v)
        x = np.moveaxis(arr, (iu, iv), (0, 1))
        out = np.zeros_like(x)
        for code in _CODE_ORDER:
            for i in range(x.shape[0]):
                for j in range(x.shape[1]):
                    out[_step(i, code, x.shape[0]), _step(j, code, x.shape[1])] |= x[i, j]
        return np.moveaxis(out, (0, 1), (iu, iv))

    def _accept(self, v: int) -> int:
        return self.target[v] | (4 if self.size[v] == 8 else 0)

    # passes ---------------------------------------------------------------

    def run(self) -> bool:
        for bag in reversed(self.order):
            arr = np.zeros([self.size[v] for v in bag], dtype=bool)
            arr[(0,) * len(bag)] = True
            unit = True
            stages = []
            for child in self.children[bag]:
                c = self._embed(self.out[child], bag)
                stages.append(("join", child, arr, c))
                arr = c if unit else self._join(arr, c, bag)
                unit = False
            for e in self.edges_at[bag]:
                stages.append(("edge", e, arr))
                arr = self._edge(arr, bag, e)
            self.largest = max(self.largest, arr.size)
            self.stages[bag] = stages
            self.final[bag] = arr
            index = tuple(self._accept(v) if v in self.forget[bag] else slice(None) for v in bag)
            kept = tuple(v for v in bag if v not in self.forget[bag])
            self.out[bag] = _Table(kept, arr[index])
        return bool(self.out[self.root].arr)

    def witness(self) -> tuple[int, ...]:
        codes = [0] * self.h.m
        todo = [(self.root, {})]
        while todo:
            bag, fixed = todo.pop()
            s = [fixed[v] if v in fixed else self._accept(v) for v in bag]
            for stage in reversed(self.stages[bag]):
                if stage[0] == "edge":
                    codes[stage[1]], s = self._undo_edge(stage[2], bag, stage[1], s)
                else:
                    _, child, before, c = stage
                    s, s2 = self._undo_join(before, c, bag, s)
                    todo.append((child, {v: s2[bag.index(v)] for v in self.out[child].vars}))
        return tuple(codes)

    def _undo_edge(self, before, bag, e, s):
        u, v = self.h.edges[e]
        iu, iv = bag.index(u), bag.index(v)
        for code in _CODE_ORDER:
            for i in range(self.size[u]):
                if _step(i, code, self.size[u]) != s[iu]:
                    continue
                for j in range(self.size[v]):
                    if _step(j, code, self.size[v]) != s[iv]:
                        continue
                    prev = list(s)
                    prev[iu], prev[iv] = i, j
                    if before[tuple(prev)]:
                        return code, prev
        raise ContradictionError("decomposition tables are inconsistent")

    def _undo_join(self, before, c, bag, s):
        target = np.array(s, dtype=np.int64)
        rows = np.argwhere(before)
        flagged = [k for k, v in enumerate(bag) if self.size[v] == 8 and s[k] >> 2]
        for pick in itertools.product((0, 1), repeat=len(flagged)):
            flag2 = np.zeros(len(bag), dtype=np.int64)
            for k, f in zip(flagged, pick):
                flag2[k] = f
            acc2 = (rows & 3) ^ (target & 3)
            flag1 = rows >> 2
            ok = ((flag1 | flag2) == (target >> 2)).all(axis=1)
            s2 = acc2 | (flag2 << 2)
            cand = rows[ok]
            if len(cand) == 0:
                continue
            hit = c[tuple(s2[ok].T)]
            if hit.any():
                k = int(np.argmax(hit))
                return list(map(int, cand[k])), list(map(int, s2[ok][k]))
        raise ContradictionError("decomposition tables are inconsistent")


def _solve(h: VertexSignedGraph, strong: bool, stats: dict | None) -> tuple[str, ...] | None:
    if len(h.negative_vertices) % 2:
        raise InputError("the number of negative vertices must be even")
    if h.n == 0:
        return ()
    solver = _DecompositionSolver(h, strong)
    sat = solver.run()
    if stats is not None:
        stats.update(treewidth=solver.width, bags=len(solver.order), largest_table=solver.largest)
    if not sat:
        return None
    return tuple(LABEL_OF[c] for c in solver.witness())


def solve_weak_labeling(h: VertexSignedGraph, stats: dict | None = None) -> tuple[str, ...] | None:
    """A weak signed edge-labeling, or None if none exists.

    Exact and deterministic: the witness is read back from the dynamic
    programming tables, preferring labels 0, a, b in that order.
    """
    return _solve(h, False, stats)


def solve_strong_labeling(h: VertexSignedGraph, stats: dict | None = None) -> tuple[str, ...] | None:
    """A strong signed edge-labeling, or None if none exists."""
    return _solve(h, True, stats)


def brute_force_labeling(h: VertexSignedGraph, strong: bool = False, budget: int = 3 ** 14) -> tuple[str, ...] | None:
    """First labeling in lexicographic order over all 3^m; an independent oracle."""
    if 3 ** h.m > budget:
        raise BudgetExceeded(f"3^{h.m} labelings exceed budget {budget}")
    check = first_strong_violation if strong else first_weak_violation
    for labels in itertools.product(LABELS, repeat=h.m):
        if check(h, labels) is None:
            return labels
    return None


def t_join(g, terminals) -> frozenset[int]:
    """Edge set whose odd-degree vertices are exactly ``terminals``.

    Terminals are paired by ascending id and the BFS paths between the
    pairs are added modulo 2.
    """
    t = sorted(set(terminals))
    if len(t) % 2:
        raise InputError("a T-join needs an even number of terminals")
    if not g.is_connected():
        raise InputError("a T-join needs a connected graph")
    join: set[int] = set()
    for a, b in zip(t[::2], t[1::2]):
        join.symmetric_difference_update(bfs_path(g, a, b))
    return frozenset(join)


def signature_from_negative_vertices(h: VertexSignedGraph, check: bool = True) -> DualPair:
    """Signed plane graph whose dual is ``h`` with its vertex signs.

    The primal is the plane dual of ``h``; an edge is negative exactly when
    the ``h`` edge it crosses lies in a T-join of the negative vertices. The
    returned pair has ``primal`` = that signed graph and ``dual`` = ``h``.
    """
    if h.rotation is None:
        raise InputError("h must be embedded")
    join = t_join(h, h.negative_vertices)
    g0, to_g, _ = plane_dual(h, check)
    # to_g[e_h] = primal edge crossing h-edge e_h; invert it
    edge_map = [0] * h.m
    for e_h, e_g in enumerate(to_g):
        edge_map[e_g] = e_h
    sigma = tuple(-1 if edge_map[e] in join else 1 for e in range(g0.m))
    g = g0.with_sigma(sigma)
    star = {frozenset(h.incident[v]): v for v in range(h.n)}
    by_vertex: list = [None] * h.n
    for face in trace_faces(g):
        v = star[frozenset(edge_map[e] for e in face.edges)]
        if face.sign != h.vertex_signs[v]:
            raise ContradictionError(f"face sign at dual vertex {v} does not match")
        by_vertex[v] = face
    return DualPair(g, h, tuple(edge_map), tuple(by_vertex))


def _swap_abs(c: int) -> int:
    if c == 0:
        raise InputError("color 0 is not in the 4-color set")
    return (3 if c > 0 else -3) - c


def coloring_to_labeling(pair: DualPair, colors: Sequence[int]) -> tuple[str, ...]:
    """Label each dual edge from the colors at the ends of its primal edge.

    0 if c(u) = -sigma*c(v); a if sigma*c(u)*c(v) = 2; b if it is -2.
    """
    g = pair.primal
    bad = first_improper_edge(g, 4, colors)
    if bad is not None:
        raise InputError(f"coloring is improper on edge {g.edges[bad]}")
    labels = [""] * pair.dual.m
    for e, ((u, v), s) in enumerate(zip(g.edges, g.sigma)):
        if colors[u] == -s * colors[v]:
            lab = "0"
        else:
            prod = s * colors[u] * colors[v]
            if prod == 2:
                lab = "a"
            elif prod == -2:
                lab = "b"
            else:
                raise ContradictionError(f"edge {g.edges[e]} gives product {prod}")
        labels[pair.edge_map[e]] = lab
    return tuple(labels)


def labeling_to_coloring(pair: DualPair, labels: Sequence[str]) -> list[int]:
    """Propagate colors from vertex 0 (color 1) down a BFS tree of the primal.

    Along a tree edge from parent color p: ``a`` gives sigma*swap(p), ``b``
    gives -sigma*swap(p) and ``0`` gives -sigma*p, where swap exchanges the
    absolute values 1 and 2 and keeps the sign.
    """
    g, h = pair.primal, pair.dual
    bad = first_weak_violation(h, labels)
    if bad is not None:
        raise InputError(f"labeling is not weak at dual vertex {bad}")
    if g.n == 0:
        return []
    colors = [0] * g.n
    colors[0] = 1
    parent = bfs_tree(g, 0)
    if len(parent) != g.n - 1:
        raise InputError("primal graph is disconnected")
    # dict order is BFS discovery order, so parents come first
    for child, (par, e) in parent.items():
        p = colors[par]
        s = g.sigma[e]
        lab = labels[pair.edge_map[e]]
        if lab == "a":
            colors[child] = s * _swap_abs(p)
        elif lab == "b":
            colors[child] = -s * _swap_abs(p)
        else:
            colors[child] = -s * p
    bad_edge = first_improper_edge(g, 4, colors)
    if bad_edge is not None:
        raise ContradictionError(
            f"propagated coloring is improper on {g.edges[bad_edge]}; "
            "face signs of the primal do not match the dual vertex signs"
        )
    if coloring_to_labeling(pair, colors) != tuple(labels):
        raise ContradictionError("propagated coloring does not reproduce the labeling")
    return colors

