import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from listcrit import fans
from listcrit.coloring import (
    CriticalityCertificate,
    Subgraph,
    brute_force_colorings,
    is_proper_coloring,
    is_T_critical,
    is_valid_assignment,
    nonextendable_precolorings,
    read_lists,
    read_precoloring,
    reduced_lists,
    solve_extension,
    verify_certificate,
    write_lists,
    write_precoloring,
)
from listcrit.plane_graph import (
    ParseError,
    PlaneGraph,
    cycle_graph,
    from_faces,
    k4_graph,
    path_graph,
    random_plane_graph,
    wheel_graph,
)


def every(g, colours):
    return {v: frozenset(colours) for v in range(g.n)}


def has_extension(g, lists, phi):
    # independent oracle: plain product over all lists
    verts = [v for v in range(g.n) if v not in phi]
    for combo in product(*(sorted(lists[v]) for v in verts)):
        col = dict(phi)
        col.update(zip(verts, combo))
        if all(col[u] != col[v] for u, v in g.edges()):
            return True
    return False


def random_lists(g, rng, universe, lo=1, hi=3):
    return {v: frozenset(rng.sample(range(universe), rng.randint(lo, min(hi, universe)))) for v in range(g.n)}


# solve_extension ----------------------------------------------------------

def test_triangle_three_colours():
    g = cycle_graph(3)
    col = solve_extension(g, every(g, {1, 2, 3}))
    assert col is not None and is_proper_coloring(g, col, every(g, {1, 2, 3}))
    assert sorted(col.values()) == [1, 2, 3]


def test_k4_three_colours_unsat():
    g = k4_graph()
    assert solve_extension(g, every(g, {1, 2, 3})) is None


def test_fat_fan_two_blocked_precoloring():
    proc = fans.build_fat_fan(2)
    g = proc.graph
    x, y, z = proc.base
    (apex,) = proc.interior
    v1, v2 = proc.rim[1:-1]
    lists = {apex: {1, 2, 3, 4, 5}, v1: {1, 2, 4}, v2: {1, 2, 5}, x: {4}, y: {3}, z: {5}}
    assert solve_extension(g, lists, {x: 4, y: 3, z: 5}) is None
    assert not has_extension(g, {k: frozenset(v) for k, v in lists.items()}, {x: 4, y: 3, z: 5})


def test_fixed_colour_outside_list_is_rejected():
    g = cycle_graph(3)
    with pytest.raises(ValueError):
        solve_extension(g, every(g, {1, 2, 3}), {0: 9})


def test_improper_fixed_has_no_extension():
    g = cycle_graph(3)
    assert solve_extension(g, every(g, {1, 2, 3}), {0: 1, 1: 1}) is None


def test_empty_list_is_legal_and_unsat():
    g = path_graph(2)
    assert solve_extension(g, {0: frozenset(), 1: frozenset({1})}) is None


def test_missing_list_is_an_error():
    with pytest.raises(ValueError):
        solve_extension(cycle_graph(3), {0: {1}, 1: {2}})


def test_string_colours_are_reported_by_name():
    g = path_graph(3)
    col = solve_extension(g, every(g, {"red", "blue"}))
    assert col[0] == col[2] != col[1]
    assert {col[0], col[1]} == {"red", "blue"}


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.integers(0, 10**6), st.integers(1, 6))
def test_solver_agrees_with_enumeration(n, seed, universe):
    rng = random.Random(seed)
    g = random_plane_graph(n, rng, rng.random())
    lists = random_lists(g, rng, universe, 1, 4)
    col = solve_extension(g, lists)
    some = next(brute_force_colorings(g, lists), None)
    assert (col is None) == (some is None)
    if col is not None:
        assert is_proper_coloring(g, col, lists)


# nonextendable precolourings -------------------------------------------------

def test_fan_one_single_bad_precoloring():
    proc = fans.build_fan(1)
    g = proc.graph
    x, y, z = proc.base
    (v1,) = proc.rim[1:-1]
    lists = {v1: {1, 2, 3}, x: {1}, y: {2}, z: {3}}
    bad = nonextendable_precolorings(g, Subgraph.path([x, y, z]), lists)
    assert bad == [{x: 1, y: 2, z: 3}]


def test_edge_with_full_lists_has_no_bad_precoloring():
    g = path_graph(2)
    assert nonextendable_precolorings(g, Subgraph(frozenset([0])), every(g, {1, 2})) == []


def test_even_fat_fan_has_exactly_one_bad_precoloring():
    proc = fans.build_fat_fan(2)
    g = proc.graph
    x, y, z = proc.base
    (apex,) = proc.interior
    v1, v2 = proc.rim[1:-1]
    full = frozenset(range(1, 9))
    lists = {apex: {1, 2, 3, 4, 5}, v1: {1, 2, 4}, v2: {1, 2, 5}, x: full, y: full, z: full}
    bad = nonextendable_precolorings(g, Subgraph.path([x, y, z]), lists)
    assert bad == [{x: 4, y: 3, z: 5}]


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10**6))
def test_nonextendable_matches_oracle(n, seed):
    rng = random.Random(seed)
    g = random_plane_graph(n, rng, 0.6)
    lists = random_lists(g, rng, 4, 1, 3)
    t = Subgraph.induced(g, [0, 1])
    got = nonextendable_precolorings(g, t, lists)
    want = []
    for a, b in product(sorted(lists[0]), sorted(lists[1])):
        if t.has_edge(0, 1) and a == b:
            continue
        if not has_extension(g, lists, {0: a, 1: b}):
            want.append({0: a, 1: b})
    assert got == want


# criticality ------------------------------------------------------------------

def test_fan_one_is_critical_for_its_base():
    proc = fans.build_fan(1)
    g = proc.graph
    x, y, z = proc.base
    (v1,) = proc.rim[1:-1]
    lists = {v1: {1, 2, 3}, x: {1, 2, 3}, y: {1, 2, 3}, z: {1, 2, 3}}
    ok, cert = is_T_critical(g, Subgraph.path([x, y, z]), lists)
    assert ok
    assert len(cert.witnesses) == 3
    assert verify_certificate(g, Subgraph.path([x, y, z]), lists, cert)


def test_pendant_vertex_kills_criticality():
    # K4 drawn as wheel_graph(3) plus vertex 4 hanging off vertex 3
    k4 = k4_graph()
    rot = [list(r) for r in k4.rotations] + [[3]]
    rot[3].append(4)
    g = PlaneGraph(tuple(tuple(r) for r in rot), k4.outer)
    lists = every(g, range(5))
    ok, cert = is_T_critical(g, Subgraph.cycle([0, 1, 2]), lists)
    assert not ok
    assert ("edge", 3, 4) in cert.missing


def rim_sorted_wheel():
    return wheel_graph(5), Subgraph.cycle(range(5))


def test_wheel_critical_iff_hub_list_is_rim_union():
    g, t = rim_sorted_wheel()
    rim = {v: frozenset({v}) for v in range(5)}
    yes = dict(rim)
    yes[5] = frozenset(range(5))
    ok, cert = is_T_critical(g, t, yes)
    assert ok and verify_certificate(g, t, yes, cert)
    no = dict(rim)
    no[5] = frozenset({0, 1, 2, 3, 9})
    ok, _ = is_T_critical(g, t, no)
    assert not ok


def test_criticality_rejects_g_equal_t():
    g = cycle_graph(4)
    with pytest.raises(ValueError):
        is_T_critical(g, Subgraph.cycle(range(4)), every(g, {1, 2}))


def test_tampered_certificate_fails_verification():
    g, t = rim_sorted_wheel()
    lists = {v: frozenset({v}) for v in range(5)}
    lists[5] = frozenset(range(5))
    ok, cert = is_T_critical(g, t, lists)
    bad = CriticalityCertificate(dict(cert.witnesses))
    bad.witnesses.popitem()
    assert not verify_certificate(g, t, lists, bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_critical_graphs_have_high_degree(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng.randint(4, 7), rng, 0.8)
    t = Subgraph.induced(g, [0, 1])
    if all(v in t.vertices for v in range(g.n)) or len(t.edges) == g.m:
        return
    lists = random_lists(g, rng, 4, 1, 3)
    ok, cert = is_T_critical(g, t, lists)
    if ok:
        assert verify_certificate(g, t, lists, cert)
        for v in range(g.n):
            if v not in t.vertices:
                assert g.degree(v) >= len(lists[v])


# reduced lists and validity -----------------------------------------------

def test_reduced_lists_examples():
    g = path_graph(3)
    lists = every(g, {1, 2, 3})
    assert reduced_lists(g, lists, {0: 1})[1] == {2, 3}
    lists = {0: {4}, 1: {1, 2, 3}, 2: {5}}
    red = reduced_lists(g, lists, {0: 4, 2: 5})
    assert red[1] == {1, 2, 3} and red[0] == {4}


def test_reduced_lists_drop_one_colour_per_hitting_neighbour():
    g = wheel_graph(4)
    lists = every(g, range(7))
    fixed = {0: 0, 1: 1, 2: 2}
    assert len(reduced_lists(g, lists, fixed)[4]) == 7 - 3


def test_valid_assignment_examples():
    w = wheel_graph(5)
    lists = {v: frozenset(range(3)) for v in range(5)}
    lists[5] = frozenset(range(5))
    assert is_valid_assignment(w, [], [], lists)
    lists[5] = frozenset(range(4))
    assert not is_valid_assignment(w, [], [], lists)


def test_precoloured_vertex_next_to_short_list_is_invalid():
    w = wheel_graph(6)
    lists = {v: frozenset(range(5)) for v in range(7)}
    lists[6] = frozenset({0})
    assert is_valid_assignment(w, [], [6], lists, 0)
    lists[0] = frozenset(range(3))
    assert not is_valid_assignment(w, [], [6], lists, 2)


# file formats --------------------------------------------------------------

def test_lists_round_trip():
    lists = {0: frozenset({3, 1}), 1: frozenset(), 2: frozenset({7})}
    assert read_lists(write_lists(lists)) == lists


def test_precoloring_round_trip():
    phi = {0: 4, 5: 1}
    assert read_precoloring(write_precoloring(phi)) == phi


def test_lists_parse_error_position():
    with pytest.raises(ParseError) as e:
        read_lists("LST/1\n0: 1 2\n1: 3 x\n")
    assert e.value.line == 3
    assert e.value.col == 6
