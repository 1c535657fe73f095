"""Builders: the W_k gadget, the Tutte fragment, the signed Tutte graph and
the counterexample pair, plus the negative-placement search."""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator, Sequence

from .catalog import from_neighbor_rotation, neighbor_rotation
from .factors import TwoFactor, enumerate_two_factors, first_inconsistent_cycle
from .graph import (
    DualPair,
    EmbeddingError,
    InputError,
    VertexSignedGraph,
    is_three_connected,
    trace_faces,
)
from .labeling import signature_from_negative_vertices


def _embedded(rot: Sequence[Sequence[int]], signs: Sequence[int]) -> VertexSignedGraph:
    g = from_neighbor_rotation(rot)
    return VertexSignedGraph(g.n, g.edges, tuple(signs), g.rotation)


# ---------------------------------------------------------------- gadget


@dataclass(frozen=True)
class Gadget:
    """W_k: ring ``0..2k-1`` (even positions positive, odd negative), center ``2k``.

    ``ports[i]`` is the ring vertex carrying the i-th pendant edge. In
    ``neighbor_rotation`` the pendant slot is written as ``-1``.
    """

    k: int
    graph: VertexSignedGraph
    ring: tuple[int, ...]
    center: int
    ports: tuple[int, ...]
    neighbor_rotation: tuple[tuple[int, ...], ...]


def _check_gadget_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise InputError(f"gadget size must be odd and at least 3, got {k}")


def _gadget_rotation(k: int, port_of) -> list[list[int]]:
    """Ring and center rotations; ``port_of(i)`` fills the i-th pendant slot."""
    size = 2 * k
    center = size
    rot: list[list[int]] = []
    for j in range(size):
        nxt, prv = (j + 1) % size, (j - 1) % size
        if j % 2 == 0:
            rot.append([port_of(j // 2), nxt, prv])
        else:
            rot.append([nxt, center, prv])
    rot.append(list(range(1, size, 2)))
    return rot


def build_gadget(k: int) -> Gadget:
    _check_gadget_k(k)
    rot = _gadget_rotation(k, lambda i: -1)
    internal = [[w for w in r if w >= 0] for r in rot]
    signs = [1 if j % 2 == 0 else -1 for j in range(2 * k)] + [1]
    g = _embedded(internal, signs)
    trace_faces(g)
    return Gadget(
        k,
        g,
        tuple(range(2 * k)),
        2 * k,
        tuple(range(0, 2 * k, 2)),
        tuple(tuple(r) for r in rot),
    )


@dataclass(frozen=True)
class GadgetRegion:
    """Where a gadget sits inside a host after replacement.

    ``host_vertex`` is the id the contracted vertex gets back.
    """

    host_vertex: int
    ring: tuple[int, ...]
    center: int

    @property
    def k(self) -> int:
        return len(self.ring) // 2

    @property
    def ports(self) -> tuple[int, ...]:
        return self.ring[::2]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.ring) | {self.center}


def replace_vertices(h: VertexSignedGraph, vertices: Iterable[int]) -> tuple[VertexSignedGraph, tuple[GadgetRegion, ...]]:
    """Replace each listed negative odd-degree vertex by a copy of W_d.

    The i-th pendant edge goes to the i-th neighbor in the vertex's
    rotation. Remaining vertices keep their relative order and come first;
    gadgets follow in ascending order of the replaced vertex.
    """
    if h.rotation is None:
        raise InputError("host must be embedded")
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < h.n:
            raise InputError(f"unknown vertex {v}")
        if h.vertex_signs[v] > 0:
            raise InputError(f"vertex {v} is positive")
        if h.degree(v) < 3 or h.degree(v) % 2 == 0:
            raise InputError(f"vertex {v} has degree {h.degree(v)}; need odd degree >= 3")
    nrot = neighbor_rotation(h)
    replaced = set(vs)
    kept = [u for u in range(h.n) if u not in replaced]
    new_id = {u: i for i, u in enumerate(kept)}
    base: dict[int, int] = {}
    nxt = len(kept)
    for v in vs:
        base[v] = nxt
        nxt += 2 * h.degree(v) + 1

    def slot(w: int, toward: int) -> int:
        # vertex standing in for w on its edge toward ``toward``
        if w not in replaced:
            return new_id[w]
        return base[w] + 2 * nrot[w].index(toward)

    rot: list[list[int]] = [[] for _ in range(nxt)]
    signs = [1] * nxt
    for u in kept:
        rot[new_id[u]] = [slot(w, u) for w in nrot[u]]
        signs[new_id[u]] = h.vertex_signs[u]
    regions = []
    for v in vs:
        k = h.degree(v)
        local = _gadget_rotation(k, lambda i, v=v: slot(nrot[v][i], v) - base[v])
        for j, r in enumerate(local):
            rot[base[v] + j] = [base[v] + x for x in r]
            signs[base[v] + j] = 1 if j == 2 * k or j % 2 == 0 else -1
        regions.append(GadgetRegion(v, tuple(range(base[v], base[v] + 2 * k)), base[v] + 2 * k))
    out = _embedded(rot, signs)
    trace_faces(out)
    return out, tuple(regions)


def replace_vertex_with_gadget(h: VertexSignedGraph, v: int) -> tuple[VertexSignedGraph, GadgetRegion]:
    out, (region,) = replace_vertices(h, [v])
    return out, region


def replace_odd_negatives(h: VertexSignedGraph) -> tuple[VertexSignedGraph, tuple[GadgetRegion, ...]]:
    """Replace every negative vertex of odd degree (the reduction to strong labelings)."""
    odd = [v for v in h.negative_vertices if h.degree(v) % 2 == 1]
    for v in odd:
        if h.degree(v) < 3:
            raise InputError(f"negative vertex {v} has degree 1; no gadget fits")
    return replace_vertices(h, odd)


def check_region(h: VertexSignedGraph, region: GadgetRegion) -> None:
    """Raise InputError unless ``region`` is an installed gadget of ``h``."""
    ring, c = region.ring, region.center
    size = len(ring)
    inside = region.vertices
    if size < 6 or size % 4 != 2 or len(inside) != size + 1:
        raise InputError("region is not a gadget: ring length must be 2k with k odd >= 3")
    if h.vertex_signs[c] < 0 or set(h.neighbors(c)) != set(ring[1::2]):
        raise InputError("region is not a gadget: center must be positive and see the odd ring vertices")
    for j, r in enumerate(ring):
        nb = set(h.neighbors(r))
        if h.degree(r) != 3 or not {ring[j - 1], ring[(j + 1) % size]} <= nb:
            raise InputError(f"region is not a gadget: ring breaks at {r}")
        if j % 2 == 1:
            if h.vertex_signs[r] > 0 or c not in nb:
                raise InputError(f"region is not a gadget: {r} should be a negative spiked vertex")
        elif h.vertex_signs[r] < 0 or len(nb - inside) != 1:
            raise InputError(f"region is not a gadget: {r} should be a positive port")


def _port_exit(h: VertexSignedGraph, region: GadgetRegion, port: int) -> int:
    (w,) = [w for w in h.neighbors(port) if w not in region.vertices]
    return w


def contract_all(
    h: VertexSignedGraph,
    regions: Sequence[GadgetRegion],
    labels: Sequence[str] | None = None,
) -> tuple[VertexSignedGraph, tuple[str, ...] | None]:
    """Collapse every region to one negative vertex, keeping leaving-edge labels.

    Inverse of :func:`replace_vertices` when given the regions it returned.
    """
    if h.rotation is None:
        raise InputError("graph must be embedded")
    for r in regions:
        check_region(h, r)
    owner: dict[int, GadgetRegion] = {}
    for r in regions:
        for x in r.vertices:
            if x in owner:
                raise InputError("gadget regions overlap")
            owner[x] = r
    kept = [x for x in range(h.n) if x not in owner]
    n = len(kept) + len(regions)
    targets = sorted(r.host_vertex for r in regions)
    if len(set(targets)) != len(targets) or any(not 0 <= t < n for t in targets):
        raise InputError("region host ids must be distinct and within the contracted graph")
    free = iter(sorted(set(range(n)) - set(targets)))
    hid = {x: next(free) for x in kept}
    for x, r in owner.items():
        hid[x] = r.host_vertex
    nrot = neighbor_rotation(h)
    rot: list[list[int]] = [[] for _ in range(n)]
    signs = [1] * n
    for x in kept:
        rot[hid[x]] = [hid[w] for w in nrot[x]]
        signs[hid[x]] = h.vertex_signs[x]
    for r in regions:
        rot[r.host_vertex] = [hid[_port_exit(h, r, p)] for p in r.ports]
        signs[r.host_vertex] = -1
    out = _embedded(rot, signs)
    if labels is None:
        return out, None
    if len(labels) != h.m:
        raise InputError(f"expected {h.m} labels, got {len(labels)}")
    new_labels = [""] * out.m
    for e, (a, b) in enumerate(h.edges):
        if a in owner and owner.get(b) is owner[a]:
            continue
        new_labels[out.edge_id(hid[a], hid[b])] = labels[e]
    return out, tuple(new_labels)


def contract_gadget(h, region: GadgetRegion, labels=None):
    return contract_all(h, [region], labels)


def leaving_edges(h: VertexSignedGraph, region: GadgetRegion) -> tuple[int, ...]:
    return tuple(h.edge_id(p, _port_exit(h, region, p)) for p in region.ports)


# ---------------------------------------------------------- Tutte fragment

ATTACHMENTS = ("e1", "e2", "e3")
CLAIMS = ("e21", "e9", "e17", "e15", "e14")


@dataclass(frozen=True)
class FragmentTemplate:
    """15-vertex Tutte fragment with named edges e1..e25 (e25 aliases e24).

    ``ends[name]`` lists the fragment endpoints of each edge; the attachment
    edges e1, e2, e3 have a single fragment endpoint.
    """

    n: int
    ends: dict[str, tuple[int, ...]]
    aliases: dict[str, str]
    rotation: tuple[tuple[int | str, ...], ...]
    negatives: tuple[int, ...]
    networkx_ids: tuple[int, ...]
    vertex_names: tuple[tuple[str, ...], ...] = field(init=False)

    def __post_init__(self):
        at: list[list[str]] = [[] for _ in range(self.n)]
        for name, ends in self.ends.items():
            for v in ends:
                at[v].append(name)
        object.__setattr__(self, "vertex_names", tuple(tuple(sorted(x, key=_name_key)) for x in at))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.ends, key=_name_key))

    def resolve(self, name: str) -> str:
        return self.aliases.get(name, name)

    @property
    def internal_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for e in self.ends.values() if len(e) == 2)

    def sign(self, v: int) -> int:
        return -1 if v in self.negatives else 1

    def closed(self) -> VertexSignedGraph:
        """The fragment with its attachments joined to one extra vertex ``n``.

        The extra vertex takes whichever cyclic order of the tips embeds.
        """
        tips = [self.ends[a][0] for a in ATTACHMENTS]
        rot = [[self.n if isinstance(w, str) else w for w in r] for r in self.rotation]
        signs = [self.sign(v) for v in range(self.n)] + [1]
        try:
            g = _embedded(rot + [tips], signs)
            trace_faces(g)
        except EmbeddingError:
            g = _embedded(rot + [tips[::-1]], signs)
            trace_faces(g)
        return g


def _name_key(name: str) -> int:
    return int(name[1:])


@functools.lru_cache(maxsize=None)
def build_tutte_fragment() -> FragmentTemplate:
    raw = json.loads(resources.files("signedcolor").joinpath("data/tutte_fragment.json").read_text())
    n = raw["vertices"]
    ends: dict[str, tuple[int, ...]] = {a: (v,) for a, v in raw["attachments"].items()}
    for u, v, name in raw["edges"]:
        ends[name] = (u, v)
    t = FragmentTemplate(
        n,
        ends,
        dict(raw["aliases"]),
        tuple(tuple(r) for r in raw["rotation"]),
        tuple(raw["negatives"]),
        tuple(raw["networkx_tutte_ids"]),
    )
    _self_check_fragment(t)
    return t


def _self_check_fragment(t: FragmentTemplate) -> None:
    expected = {f"e{i}" for i in range(1, 26)}
    if set(t.ends) | set(t.aliases) != expected or set(t.aliases.values()) - set(t.ends):
        raise InputError("fragment edge names must cover e1..e25")
    if t.n != 15 or len(t.negatives) != 4:
        raise InputError("fragment needs 15 vertices and 4 negatives")
    for v in range(t.n):
        if len(t.vertex_names[v]) != 3:
            raise InputError(f"fragment vertex {v} is not cubic")
        named = set()
        for w in t.rotation[v]:
            named.add(w if isinstance(w, str) else next(
                nm for nm in t.vertex_names[v] if set(t.ends[nm]) == {v, w}))
        if named != set(t.vertex_names[v]):
            raise InputError(f"rotation at fragment vertex {v} disagrees with its edges")
    t.closed()


# ----------------------------------------------------------- Tutte graph


def _copy_vertex(i: int, v: int, n: int = 15) -> int:
    return 1 + n * i + v


@functools.lru_cache(maxsize=None)
def build_tutte_graph(signed: bool = True) -> VertexSignedGraph:
    """Center 0 and three fragment copies (copy i occupies ``1+15i .. 15+15i``).

    Copy i's e1 goes to the center and its e2 meets copy i+1's e3. With
    ``signed`` the 12 fragment negatives are marked.
    """
    t = build_tutte_fragment()
    top = t.ends["e1"][0]
    e2_end, e3_end = t.ends["e2"][0], t.ends["e3"][0]
    last_error = None
    for center_order in ([0, 1, 2], [2, 1, 0]):
        rot: list[list[int]] = [[_copy_vertex(i, top) for i in center_order]]
        for i in range(3):
            far = {
                "e1": 0,
                "e2": _copy_vertex((i + 1) % 3, e3_end),
                "e3": _copy_vertex((i - 1) % 3, e2_end),
            }
            for v in range(t.n):
                rot.append([far[w] if isinstance(w, str) else _copy_vertex(i, w) for w in t.rotation[v]])
        negatives = {_copy_vertex(i, v) for i in range(3) for v in t.negatives} if signed else set()
        h = _embedded(rot, [-1 if v in negatives else 1 for v in range(len(rot))])
        try:
            trace_faces(h)
        except EmbeddingError as exc:
            last_error = exc
            continue
        return h
    raise EmbeddingError(f"fragment copies do not assemble into a plane graph: {last_error}")


def fragment_edge(h: VertexSignedGraph, copy: int, name: str) -> int:
    """Edge id in the assembled Tutte graph of fragment edge ``name`` in ``copy``."""
    t = build_tutte_fragment()
    name = t.resolve(name)
    if name == "e1":
        return h.edge_id(0, _copy_vertex(copy, t.ends["e1"][0]))
    if name == "e2":
        return h.edge_id(_copy_vertex(copy, t.ends["e2"][0]), _copy_vertex((copy + 1) % 3, t.ends["e3"][0]))
    if name == "e3":
        return h.edge_id(_copy_vertex(copy, t.ends["e3"][0]), _copy_vertex((copy - 1) % 3, t.ends["e2"][0]))
    u, v = t.ends[name]
    return h.edge_id(_copy_vertex(copy, u), _copy_vertex(copy, v))


# ------------------------------------------------ fragment forcing replay


def propagate(t: FragmentTemplate, inside: Iterable[str], outside: Iterable[str]):
    """Close a partial 2-factor under the degree-2 rule at every fragment vertex.

    Returns ``(inside, outside)`` as frozensets, or None on a contradiction.
    """
    inn = {t.resolve(x) for x in inside}
    out = {t.resolve(x) for x in outside}
    if inn & out:
        return None
    changed = True
    while changed:
        changed = False
        for names in t.vertex_names:
            k_in = sum(x in inn for x in names)
            k_out = sum(x in out for x in names)
            if k_in > 2 or k_out > 1:
                return None
            free = [x for x in names if x not in inn and x not in out]
            if free and k_in == 2:
                out.update(free)
                changed = True
            elif free and k_out == 1:
                inn.update(free)
                changed = True
    return frozenset(inn), frozenset(out)


def local_two_factors(t: FragmentTemplate, inside=(), outside=()) -> list[frozenset[str]]:
    """Every edge set of the fragment (attachments included) giving all vertices degree 2."""
    start = propagate(t, inside, outside)
    if start is None:
        return []
    found: list[frozenset[str]] = []

    def rec(inn, out):
        free = [x for x in t.names if x not in inn and x not in out]
        if not free:
            found.append(inn)
            return
        for branch in ((inn | {free[0]}, out), (inn, out | {free[0]})):
            nxt = propagate(t, *branch)
            if nxt is not None:
                rec(*nxt)

    rec(*start)
    return sorted(found, key=lambda s: sorted(map(_name_key, s)))


def odd_internal_cycles(t: FragmentTemplate, chosen: Iterable[str]) -> list[tuple[int, ...]]:
    """Cycles of a local 2-factor lying inside the fragment with an odd number of positives."""
    nbrs: dict[int, list[int]] = {v: [] for v in range(t.n)}
    for x in chosen:
        ends = t.ends[t.resolve(x)]
        if len(ends) == 2:
            u, v = ends
            nbrs[u].append(v)
            nbrs[v].append(u)
    seen: set[int] = set()
    odd = []
    for s in range(t.n):
        if s in seen:
            continue
        comp, stack, closed = [], [s], True
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            closed &= len(nbrs[x]) == 2
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if closed and sum(t.sign(v) > 0 for v in comp) % 2:
            odd.append(tuple(sorted(comp)))
    return odd


@dataclass(frozen=True)
class ClaimCheck:
    edge: str
    propagated_in: tuple[str, ...]
    propagated_out: tuple[str, ...]
    completions: int
    every_completion_has_odd_cycle: bool
    propagation_contradiction: bool

    @property
    def confirmed(self) -> bool:
        return self.every_completion_has_odd_cycle


@dataclass(frozen=True)
class ForcingReplay:
    configurations: int
    every_configuration_has_odd_cycle: bool
    claims: tuple[ClaimCheck, ...]
    final_forced: tuple[str, ...]
    final_completions: int
    final_all_odd: bool

    @property
    def confirmed(self) -> bool:
        return (
            self.every_configuration_has_odd_cycle
            and all(c.confirmed for c in self.claims)
            and self.final_all_odd
        )


def _sorted_names(xs) -> tuple[str, ...]:
    return tuple(sorted(xs, key=_name_key))


def replay_fragment_forcing(t: FragmentTemplate | None = None, claims: Sequence[str] = CLAIMS) -> ForcingReplay:
    """Local exhaustive search on the fragment with e1 out and e2, e3 in.

    Each claimed edge is tested in turn: with all earlier claims in, every
    completion that leaves the claimed edge out must contain an inside cycle
    with an odd number of positive vertices.
    """
    t = t or build_tutte_fragment()
    base_in, base_out = {"e2", "e3"}, {"e1"}
    configs = local_two_factors(t, base_in, base_out)
    all_odd = all(odd_internal_cycles(t, c) for c in configs)
    checks = []
    inn = set(base_in)
    for x in claims:
        state = propagate(t, inn, base_out | {x})
        completions = local_two_factors(t, inn, base_out | {x})
        p_in, p_out = state if state is not None else (frozenset(), frozenset())
        checks.append(
            ClaimCheck(
                x,
                _sorted_names(p_in),
                _sorted_names(p_out),
                len(completions),
                all(odd_internal_cycles(t, c) for c in completions),
                state is None,
            )
        )
        inn.add(x)
    final = propagate(t, inn, base_out)
    final_in = final[0] if final is not None else frozenset()
    completions = local_two_factors(t, inn, base_out)
    return ForcingReplay(
        len(configs),
        all_odd,
        tuple(checks),
        _sorted_names(final_in),
        len(completions),
        all(odd_internal_cycles(t, c) for c in completions),
    )


@dataclass(frozen=True)
class ForcingGlobalCheck:
    two_factors: int
    omissions: int  # (2-factor, copy) pairs with that copy's e1 left out
    violations: int  # omissions where every cycle is consistent


def check_forcing_globally(h: VertexSignedGraph | None = None) -> ForcingGlobalCheck:
    """Over every 2-factor of the signed Tutte graph: leaving a copy's e1 out forces an odd cycle."""
    h = h or build_tutte_graph()
    tops = [fragment_edge(h, i, "e1") for i in range(3)]
    count = omissions = violations = 0
    for f in enumerate_two_factors(h):
        count += 1
        edges = set(f.edges)
        missing = sum(e not in edges for e in tops)
        if missing:
            omissions += missing
            if first_inconsistent_cycle(h, f) is None:
                violations += missing
    return ForcingGlobalCheck(count, omissions, violations)


# ------------------------------------------------ 2-factor verification


@dataclass(frozen=True)
class TwoFactorVerdict:
    consistent: TwoFactor | None
    examined: int

    @property
    def sat(self) -> bool:
        return self.consistent is not None


def verify_no_consistent_two_factor(h: VertexSignedGraph, require_even: bool = True) -> TwoFactorVerdict:
    """Enumerate 2-factors until a consistent one appears.

    UNSAT (``consistent is None``) means every 2-factor was examined.
    Consistency makes sense for any sign pattern; ``require_even`` enforces
    the even negative count that the labeling side needs.
    """
    if require_even and len(h.negative_vertices) % 2:
        raise InputError("the number of negative vertices must be even")
    examined = 0
    for f in enumerate_two_factors(h):
        examined += 1
        if first_inconsistent_cycle(h, f) is None:
            return TwoFactorVerdict(f, examined)
    return TwoFactorVerdict(None, examined)


# ------------------------------------------------------ counterexample


@dataclass(frozen=True)
class Counterexample:
    tutte: VertexSignedGraph
    cubic: VertexSignedGraph
    regions: tuple[GadgetRegion, ...]
    pair: DualPair

    @property
    def triangulation(self):
        return self.pair.primal


@functools.lru_cache(maxsize=None)
def build_counterexample() -> Counterexample:
    """Signed Tutte graph with every negative replaced by W_3, and its signed dual."""
    tutte = build_tutte_graph()
    cubic, regions = replace_vertices(tutte, tutte.negative_vertices)
    pair = signature_from_negative_vertices(cubic)
    return Counterexample(tutte, cubic, regions, pair)


# ------------------------------------------------- placement search


def _factor_masks(h) -> list[tuple[tuple[int, int], ...]]:
    out = []
    for f in enumerate_two_factors(h):
        out.append(tuple((sum(1 << v for v in c), len(c) % 2) for c in f.cycles))
    return out


def search_negative_placements(
    h,
    t: int,
    budget: int | None = None,
    seeds: Sequence[Sequence[int]] = (),
    stats: dict | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield size-``t`` vertex sets whose negation leaves no consistent 2-factor.

    Seeds are tried first, then all subsets in lexicographic order;
    ``budget`` caps the number of placements examined.
    """
    if t % 2 or not 0 <= t <= h.n:
        raise InputError("t must be even and at most the number of vertices")
    factors = _factor_masks(h)
    examined = 0
    tried: set[tuple[int, ...]] = set()
    if stats is not None:
        stats.update(two_factors=len(factors), examined=0)

    def consistent_somewhere(neg: int) -> bool:
        for cycles in factors:
            if all((parity + bin(mask & neg).count("1")) % 2 == 0 for mask, parity in cycles):
                return True
        return False

    candidates = itertools.chain(
        (tuple(sorted(s)) for s in seeds), itertools.combinations(range(h.n), t)
    )
    for placement in candidates:
        if placement in tried:
            continue
        if len(placement) != t:
            raise InputError(f"seed {placement} does not have {t} vertices")
        if budget is not None and examined >= budget:
            return
        tried.add(placement)
        examined += 1
        if stats is not None:
            stats["examined"] = examined
        if not consistent_somewhere(sum(1 << v for v in placement)):
            yield placement
