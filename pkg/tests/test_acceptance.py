"""Acceptance checks 1-8, one PASS/FAIL line each.

Run under pytest (lines go straight to the terminal) or directly with
``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import time

import networkx as nx
import pytest

from signedcolor.catalog import petersen, polyhedra, random_cubic_planar, random_even_negatives, random_signature
from signedcolor.coloring import brute_force_coloring, is_proper, solve_coloring
from signedcolor.constructions import (
    build_counterexample,
    build_gadget,
    build_tutte_fragment,
    build_tutte_graph,
    check_forcing_globally,
    contract_all,
    leaving_edges,
    replace_odd_negatives,
    replay_fragment_forcing,
    verify_no_consistent_two_factor,
)
from signedcolor.factors import (
    enumerate_two_factors,
    is_consistent,
    strong_labeling_from_two_factor,
    two_factor_from_strong_labeling,
)
from signedcolor.graph import (
    SignedGraph,
    VertexSignedGraph,
    cycle_sign,
    dual,
    plane_dual,
    switch,
    trace_faces,
)
from signedcolor.labeling import (
    coloring_to_labeling,
    degree_profile,
    is_strong_labeling,
    is_weak_labeling,
    labeling_to_coloring,
    solve_strong_labeling,
    solve_weak_labeling,
)

SEED = 20261015


def _nx(g):
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges)
    return x


def criterion_1():
    """solve_coloring agrees with brute force on every switching class of connected graphs up to 5 vertices."""
    checked = 0
    for atlas_graph in nx.graph_atlas_g()[1:53]:
        if not nx.is_connected(atlas_graph):
            continue
        n = atlas_graph.number_of_nodes()
        edges = sorted(tuple(sorted(e)) for e in atlas_graph.edges())
        tree = {tuple(sorted(e)) for e in nx.bfs_tree(atlas_graph, 0).to_undirected().edges()}
        free = [e for e in edges if e not in tree]
        # signs on a spanning tree can be switched to +; the rest pick the class
        for signs in itertools.product((1, -1), repeat=len(free)):
            chosen = dict(zip(free, signs))
            g = SignedGraph.from_edges(n, [(u, v, chosen.get((u, v), 1)) for u, v in edges])
            for k in (1, 2, 3, 4):
                colors = solve_coloring(g, k)
                if (colors is not None) != brute_force_coloring(g, k):
                    return False, f"disagreement on {edges} signs {signs} k={k}"
                if colors is not None and not is_proper(g, k, colors):
                    return False, f"improper certificate on {edges} k={k}"
                checked += 1
    return True, f"{checked} (class, k) instances agree"


def criterion_2():
    """4-colorings of embedded signed graphs match weak labelings of their duals."""
    rng = random.Random(SEED)
    catalog = polyhedra(12)
    names = sorted(catalog)
    sat = 0
    for i in range(120):
        g = random_signature(catalog[names[i % len(names)]], rng)
        pair = dual(g)
        colors = solve_coloring(g, 4)
        labels = solve_weak_labeling(pair.dual)
        if (colors is None) != (labels is None):
            return False, f"verdicts differ on instance {i}"
        if colors is None:
            continue
        sat += 1
        derived = coloring_to_labeling(pair, colors)
        lifted = labeling_to_coloring(pair, labels)
        if not (is_weak_labeling(pair.dual, derived) and is_proper(g, 4, lifted)):
            return False, f"converted artifact fails its checker on instance {i}"
        if coloring_to_labeling(pair, labeling_to_coloring(pair, derived)) != derived:
            return False, f"coloring-side round trip fails on instance {i}"
        if coloring_to_labeling(pair, lifted) != labels:
            return False, f"labeling-side round trip fails on instance {i}"
    return True, f"120 instances, {sat} SAT with round trips"


def criterion_3():
    """Strong labelings exist exactly when a consistent 2-factor does."""
    rng = random.Random(SEED + 3)
    hosts = [petersen().with_negatives(p) for p in ((), (0, 1), (0, 5), (0, 2, 5, 7))]
    while len(hosts) < 110:
        n = rng.randrange(4, 21, 2)
        hosts.append(random_even_negatives(random_cubic_planar(n, rng), rng))
    sat = 0
    for i, h in enumerate(hosts):
        factor = next((f for f in enumerate_two_factors(h) if is_consistent(h, f)), None)
        labels = solve_strong_labeling(h)
        if (factor is None) != (labels is None):
            return False, f"verdicts differ on host {i}"
        if labels is None:
            continue
        sat += 1
        if not is_strong_labeling(h, strong_labeling_from_two_factor(h, factor)):
            return False, f"2-factor does not convert to a strong labeling on host {i}"
        if not is_consistent(h, two_factor_from_strong_labeling(h, labels)):
            return False, f"strong labeling does not convert to a consistent 2-factor on host {i}"
    return True, f"{len(hosts)} hosts incl. Petersen, {sat} SAT"


def criterion_4():
    replay = replay_fragment_forcing()
    glob = check_forcing_globally()
    ok = replay.confirmed and glob.violations == 0 and glob.omissions > 0
    claims = ", ".join(
        f"{c.edge}:{'contradiction' if c.propagation_contradiction else c.completions}" for c in replay.claims
    )
    return ok, (
        f"{replay.configurations} local configurations all odd; claims {claims}; "
        f"global {glob.two_factors} 2-factors, {glob.omissions} omissions, {glob.violations} violations"
    )


def criterion_5():
    h = build_tutte_graph()
    first = verify_no_consistent_two_factor(h)
    second = verify_no_consistent_two_factor(build_tutte_graph())
    ok = not first.sat and not second.sat and first.examined == second.examined == 960
    return ok, f"UNSAT after {first.examined} 2-factors (repeat: {second.examined})"


def criterion_6():
    ce = build_counterexample()
    cubic, tri = ce.cubic, ce.triangulation
    counts = (cubic.n, cubic.m, len(cubic.negative_vertices))
    start = time.monotonic()
    weak = solve_weak_labeling(cubic)
    weak_time = time.monotonic() - start
    faces = trace_faces(tri)
    triangles = all(len(f) == 3 for f in faces)
    start = time.monotonic()
    deep = solve_coloring(tri, 4, time_limit=1800)
    deep_time = time.monotonic() - start
    ok = counts == (118, 177, 36) and weak is None and weak_time < 600 and tri.n == 61 and triangles
    return ok and deep is None, (
        f"cubic {counts}, weak UNSAT in {weak_time:.2f}s, triangulation {tri.n} vertices "
        f"all-triangle={triangles}, deep 4-coloring {'UNSAT' if deep is None else 'SAT'} in {deep_time:.2f}s"
    )


def criterion_7():
    rng = random.Random(SEED + 7)
    catalog = polyhedra(12)
    names = sorted(catalog)
    for trial in range(1200):
        g = random_signature(catalog[names[trial % len(names)]], rng)
        faces = trace_faces(g)
        v = rng.randrange(g.n)
        s = switch(g, v)
        if switch(s, v) != g:
            return False, f"switching is not an involution (trial {trial})"
        h = g
        for _ in range(rng.randrange(1, 8)):
            h = switch(h, rng.randrange(g.n))
        after = trace_faces(h)
        if [f.sign for f in after] != [f.sign for f in faces]:
            return False, f"face signs changed under switching (trial {trial})"
        cyc = list(nx.find_cycle(_nx(g), source=0))
        walk = [a for a, _ in cyc]
        if cycle_sign(g, walk) != cycle_sign(h, walk):
            return False, f"cycle sign changed under switching (trial {trial})"
        if sum(f.sign < 0 for f in after) % 2:
            return False, f"odd number of negative faces (trial {trial})"
    euler = []
    constructions = [build_gadget(k).graph for k in (3, 5, 7, 9)]
    constructions += [build_tutte_fragment().closed(), build_tutte_graph()]
    ce = build_counterexample()
    constructions += [ce.cubic, ce.triangulation] + list(catalog.values())
    for c in constructions:
        if c.n - c.m + len(trace_faces(c)) != 2:
            euler.append(c.n)
    if euler:
        return False, f"Euler fails on graphs with {euler} vertices"
    for name, g in catalog.items():
        once, _, _ = plane_dual(g)
        twice, _, _ = plane_dual(once)
        if not nx.is_isomorphic(_nx(twice), _nx(g)):
            return False, f"dual of dual differs from {name}"
        d = dual(g).dual
        if sorted(d.vertex_signs) != sorted(f.sign for f in trace_faces(g)):
            return False, f"dual vertex signs differ from face signs on {name}"
    return True, f"1200 switch trials, Euler on {len(constructions)} constructions, dual involution on {len(catalog)} catalog graphs"


def criterion_8():
    rng = random.Random(SEED + 8)
    hosts, labelings, gadgets = 0, 0, 0
    # two W_9 gadgets on an 11-vertex bipyramid push the decomposition width to 11
    catalog = polyhedra(10)
    odd_hosts = [g for g in catalog.values() if any(len(g.incident[v]) % 2 for v in range(g.n))]
    while hosts < 60:
        if hosts % 3 == 2:
            base = rng.choice(odd_hosts)
            h = VertexSignedGraph(base.n, base.edges, (1,) * base.n, base.rotation)
            odd = [v for v in range(h.n) if h.degree(v) % 2]
            h = h.with_negatives(rng.sample(odd, 2 * rng.randrange(1, min(len(odd) // 2, 2) + 1)))
        else:
            h = random_even_negatives(random_cubic_planar(rng.randrange(4, 17, 2), rng), rng)
        if not any(h.degree(v) % 2 for v in h.negative_vertices):
            continue
        g, regions = replace_odd_negatives(h)
        hosts += 1
        weak = solve_weak_labeling(g)
        if (weak is None) != (solve_strong_labeling(h) is None):
            return False, f"gadget reduction changes the verdict on host {hosts}"
        if weak is None:
            continue
        labelings += 1
        for r in regions:
            gadgets += 1
            out = [weak[e] for e in leaving_edges(g, r)]
            a, b, z = out.count("a"), out.count("b"), out.count("0")
            if a % 2 or b % 2 or z % 2 == 0 or z == len(out):
                return False, f"leaving labels {out} break the parity pattern on host {hosts}"
        _, contracted = contract_all(g, regions, weak)
        if not is_strong_labeling(h, contracted):
            return False, f"contraction is not strong on host {hosts}"
    return True, f"{hosts} gadget hosts, {labelings} weak labelings, {gadgets} gadgets checked"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def report(i, fn):
    start = time.monotonic()
    ok, detail = fn()
    line = f"criterion {i}: {'PASS' if ok else 'FAIL'} ({time.monotonic() - start:.1f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("i", range(1, 9))
def test_criterion(i, capsys):
    ok, line = report(i, CRITERIA[i - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(i, fn) for i, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
