"""Signed colorings: c(u) != sigma(uv) * c(v) on every edge.

Two color sets are supported. The default one uses exactly k colors,
``{-k/2..-1, 1..k/2}`` for even k and ``{-(k-1)/2..(k-1)/2}`` (with 0) for odd
k. The ``zaslavsky`` variant uses ``{-k..k}``, i.e. 2k+1 colors.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .graph import InputError, SignedGraph


class BudgetExceeded(RuntimeError):
    """A search or enumeration ran past its configured budget."""


@dataclass(frozen=True)
class ColorSet:
    k: int
    zaslavsky: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise InputError("k must be at least 1")

    @property
    def colors(self) -> tuple[int, ...]:
        if self.zaslavsky:
            return tuple(range(-self.k, self.k + 1))
        h = self.k // 2
        if self.k % 2 == 0:
            return tuple(range(-h, 0)) + tuple(range(1, h + 1))
        return tuple(range(-h, h + 1))

    def __contains__(self, c: int) -> bool:
        return c in self.colors

    def __len__(self) -> int:
        return len(self.colors)


def _as_colorset(k: int | ColorSet) -> ColorSet:
    return k if isinstance(k, ColorSet) else ColorSet(k)


def first_improper_edge(g: SignedGraph, k: int | ColorSet, colors: Sequence[int]) -> int | None:
    """Lowest edge id violating c(u) != sigma*c(v), or None if proper."""
    cs = _as_colorset(k)
    if len(colors) != g.n:
        raise InputError("coloring must assign every vertex")
    allowed = set(cs.colors)
    for v, c in enumerate(colors):
        if c not in allowed:
            raise InputError(f"color {c} of vertex {v} not in {cs.colors}")
    for e, ((u, v), s) in enumerate(zip(g.edges, g.sigma)):
        if colors[u] == s * colors[v]:
            return e
    return None


def is_proper(g: SignedGraph, k: int | ColorSet, colors: Sequence[int]) -> bool:
    return first_improper_edge(g, k, colors) is None


def vertex_order(g: SignedGraph) -> list[int]:
    """Descending degree, ties by id."""
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


class _Search:
    def __init__(self, g: SignedGraph, cs: ColorSet, time_limit: float | None = None):
        self.g = g
        self.colors = cs.colors
        nc = len(self.colors)
        index = {c: i for i, c in enumerate(self.colors)}
        self.neg = [index[-c] for c in self.colors]
        self.full = (1 << nc) - 1
        self.order = vertex_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        # for each vertex: (later neighbor, sign) pairs, later in search order
        self.later = [
            [(g.other(e, v), g.sigma[e]) for e in g.incident[v] if pos[g.other(e, v)] > pos[v]]
            for v in range(g.n)
        ]
        self.nodes = 0
        self.memo_hits = 0
        self.failed: set = set()
        self.deadline = None if time_limit is None else time.monotonic() + time_limit

    def run(self, first: Sequence[int] | None = None) -> list[int] | None:
        if self.g.n == 0:
            return []
        dom = [self.full] * self.g.n
        assign = [0] * self.g.n
        return self._root(dom, assign, first)

    def _root(self, dom, assign, first):
        v = self.order[0]
        candidates = range(len(self.colors)) if first is None else first
        nonzero_failed = False
        for ci in candidates:
            color = self.colors[ci]
            # every nonzero color is equivalent at the root under the
            # symmetries x -> -x and permutations of absolute values
            if color != 0 and nonzero_failed:
                continue
            res = self._try(0, v, ci, dom, assign)
            if res is not None:
                return res
            if color != 0 and first is None:
                nonzero_failed = True
        return None

    def _try(self, depth, v, ci, dom, assign):
        assign[v] = ci
        trail = []
        ok = True
        for u, s in self.later[v]:
            bit = 1 << (ci if s > 0 else self.neg[ci])
            if dom[u] & bit:
                trail.append((u, dom[u]))
                dom[u] &= ~bit
                if not dom[u]:
                    ok = False
                    break
        res = self._descend(depth + 1, dom, assign) if ok else None
        for u, d in reversed(trail):
            dom[u] = d
        return res

    def _descend(self, depth, dom, assign):
        self.nodes += 1
        if self.deadline is not None and self.nodes & 0xFFF == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded(f"coloring search exceeded its time budget after {self.nodes} nodes")
        order = self.order
        if depth == len(order):
            return [self.colors[assign[v]] for v in range(self.g.n)]
        key = (depth, tuple(dom[u] for u in order[depth:]))
        if key in self.failed:
            self.memo_hits += 1
            return None
        v = order[depth]
        d = dom[v]
        for ci in range(len(self.colors)):
            if d >> ci & 1:
                res = self._try(depth, v, ci, dom, assign)
                if res is not None:
                    return res
        self.failed.add(key)
        return None


def _solve_branch(args):
    g, k, zaslavsky, ci, time_limit = args
    return _Search(g, ColorSet(k, zaslavsky), time_limit).run(first=[ci])


def solve_coloring(
    g: SignedGraph,
    k: int,
    *,
    zaslavsky: bool = False,
    time_limit: float | None = None,
    threads: int = 1,
    stats: dict | None = None,
) -> list[int] | None:
    """First proper signed k-coloring in search order, or None if none exists.

    Vertices are taken by descending degree and colors in ascending order,
    with forward checking. Subproblems proven infeasible are cached by the
    remaining domains. ``threads > 1`` splits on the first vertex's color and
    returns the same coloring as the sequential run.
    """
    cs = ColorSet(k, zaslavsky)
    if threads > 1 and g.n > 0:
        tasks = [(g, k, zaslavsky, ci, time_limit) for ci in range(len(cs))]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for res in pool.map(_solve_branch, tasks):
                if res is not None:
                    return res
        return None
    search = _Search(g, cs, time_limit)
    res = search.run()
    if stats is not None:
        stats.update(nodes=search.nodes, memo_hits=search.memo_hits)
    return res


def brute_force_coloring(g: SignedGraph, k: int, budget: int = 10**8, zaslavsky: bool = False) -> bool:
    """Exhaustive check over every assignment; an independent oracle."""
    colors = ColorSet(k, zaslavsky).colors
    if len(colors) ** g.n > budget:
        raise BudgetExceeded(f"{len(colors)}^{g.n} assignments exceed budget {budget}")
    triples = [(u, v, s) for (u, v), s in zip(g.edges, g.sigma)]
    for c in itertools.product(colors, repeat=g.n):
        if all(c[u] != s * c[v] for u, v, s in triples):
            return True
    return False


def chromatic_number(g: SignedGraph, k_max: int, time_limit: float | None = None) -> int | None:
    """Smallest k <= k_max admitting a signed k-coloring, else None.

    Every k is tried in turn: the color sets for k and k+1 are not nested.
    """
    if k_max < 1:
        raise InputError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        if solve_coloring(g, k, time_limit=time_limit) is not None:
            return k
    return None


def negate_at(colors: Sequence[int], v: int) -> list[int]:
    """Coloring after switching ``v``: the color of ``v`` changes sign."""
    out = list(colors)
    out[v] = -out[v]
    return out
