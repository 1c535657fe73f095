import pytest
from hypothesis import given, strategies as st

from signedcolor.coloring import (
    BudgetExceeded,
    ColorSet,
    brute_force_coloring,
    chromatic_number,
    first_improper_edge,
    is_proper,
    negate_at,
    solve_coloring,
)
from signedcolor.graph import InputError, SignedGraph, switch

from .strategies import embedded_signed, signed_graphs


def edge(sign):
    return SignedGraph.from_edges(2, [(0, 1, sign)])


def test_color_sets():
    assert ColorSet(4).colors == (-2, -1, 1, 2)
    assert ColorSet(3).colors == (-1, 0, 1)
    assert ColorSet(1).colors == (0,)
    assert len(ColorSet(2, zaslavsky=True)) == 5
    with pytest.raises(InputError):
        ColorSet(0)


def test_properness_examples():
    assert is_proper(edge(1), 2, [1, -1])
    assert not is_proper(edge(-1), 2, [1, -1])
    assert is_proper(edge(-1), 2, [1, 1])
    with pytest.raises(InputError):
        is_proper(edge(1), 2, [0, 1])


def test_first_violation_is_lowest_edge():
    g = SignedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert first_improper_edge(g, 3, [0, 0, 0]) == 0


def test_solver_examples():
    assert solve_coloring(edge(1), 1) is None
    assert solve_coloring(edge(1), 2) is not None
    assert solve_coloring(edge(-1), 1) is None
    tri = SignedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert solve_coloring(tri, 2) is None
    assert is_proper(tri, 3, solve_coloring(tri, 3))


def test_trivial_oracles():
    assert brute_force_coloring(SignedGraph(0, (), ()), 1)
    assert brute_force_coloring(SignedGraph(1, (), ()), 1)
    with pytest.raises(BudgetExceeded):
        brute_force_coloring(SignedGraph(30, (), ()), 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_positive_clique_needs_n_colors(n):
    g = SignedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    assert chromatic_number(g, 8) == n


def test_triangle_with_one_negative_edge():
    g = SignedGraph.from_edges(3, [(0, 1, -1), (1, 2), (0, 2)])
    assert chromatic_number(g, 4) == 2
    assert not brute_force_coloring(g, 1) and brute_force_coloring(g, 2)


def test_chromatic_number_reports_excess():
    g = SignedGraph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert chromatic_number(g, 3) is None


@given(signed_graphs(max_n=5), st.integers(1, 4))
def test_solver_matches_oracle(g, k):
    res = solve_coloring(g, k)
    assert (res is not None) == brute_force_coloring(g, k)
    if res is not None:
        assert is_proper(g, k, res)


@given(signed_graphs(max_n=5), st.integers(1, 3))
def test_monotone_in_steps_of_two(g, k):
    if solve_coloring(g, k) is not None:
        assert solve_coloring(g, k + 2) is not None


@given(signed_graphs(max_n=6), st.data())
def test_switching_moves_colorings(g, data):
    c = solve_coloring(g, 4)
    if c is None:
        return
    v = data.draw(st.integers(0, g.n - 1))
    assert is_proper(switch(g, v), 4, negate_at(c, v))


@given(signed_graphs(max_n=4), st.integers(1, 2))
def test_zaslavsky_variant(g, k):
    res = solve_coloring(g, k, zaslavsky=True)
    assert (res is not None) == brute_force_coloring(g, k, zaslavsky=True)


def test_parallel_split_is_deterministic():
    import random

    from signedcolor.catalog import icosahedron, random_signature

    g = random_signature(icosahedron(), random.Random(3))
    assert solve_coloring(g, 4, threads=2) == solve_coloring(g, 4)


def test_time_limit_raises():
    from signedcolor.constructions import build_counterexample

    with pytest.raises(BudgetExceeded):
        solve_coloring(build_counterexample().triangulation, 4, time_limit=0.0)


@given(embedded_signed())
def test_solver_output_is_proper_on_catalog(g):
    c = solve_coloring(g, 4)
    if c is not None:
        assert is_proper(g, 4, c)
