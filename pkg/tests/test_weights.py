import random
import warnings
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from listcrit import fans
from listcrit.plane_graph import (
    cycle_graph,
    from_faces,
    k4_graph,
    outer_cycle,
    outer_face,
    path_graph,
    random_plane_graph,
    trace_faces,
    wheel_graph,
)
from listcrit.weights import (
    HypothesisWarning,
    check_prepathw,
    check_preouf,
    check_qsum,
    check_size_bounds,
    compute_weight,
)


def sized(g, inner=5, outer=3):
    on = set(outer_face(g).vertices)
    return {v: frozenset(range(outer if v in on else inner)) for v in range(g.n)}


def wheel_lists():
    w = wheel_graph(5)
    lists = {v: frozenset({v}) for v in range(5)}
    lists[5] = frozenset(range(5))
    return w, lists


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_wheel_weight_is_zero():
    w, lists = wheel_lists()
    rep = compute_weight(w, outer_cycle(w), lists)
    assert rep.total == 0
    assert all(x == 0 for _, x in rep.face_weights)


def test_cycle_plus_chord_weight():
    for c in range(4, 9):
        faces = [[0, 1, 2], [0] + list(range(2, c))]
        g = from_faces(c, faces, list(reversed(range(c))))
        cyc = outer_cycle(g)
        assert compute_weight(g, cyc, sized(g)).total == c - 4


def test_facial_cycle_weight():
    for c in range(3, 9):
        g = cycle_graph(c)
        assert compute_weight(g, outer_cycle(g), sized(g)).total == c - 3


def test_path_must_lie_on_outer_face():
    w, lists = wheel_lists()
    with pytest.raises(ValueError):
        compute_weight(w, [0, 5], lists)


def test_outer_list_sizes_contribute():
    w = wheel_graph(5)
    lists = sized(w)
    lists[2] = frozenset(range(5))
    rep = compute_weight(w, [0, 1], lists)
    assert rep.vertex_weights[2] == 2
    assert rep.total == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_weight_matches_direct_sum(n, seed):
    rng = random.Random(seed)
    g = random_plane_graph(n, rng, rng.random())
    of = outer_face(g)
    on = sorted(set(of.vertices))
    p = on[:rng.randint(0, len(on))]
    lists = {v: frozenset(range(rng.randint(3, 5))) for v in range(g.n)}
    rep = compute_weight(g, p, lists)
    cuts = set(nx.articulation_points(to_nx(g)))
    want = 0
    for v in range(g.n):
        if v in p:
            want += v in cuts
        elif v in on:
            want += len(lists[v]) - 3
    faces = trace_faces(g)
    want += sum(len(f) - 3 for f in faces) - (len(of) - 3)
    assert rep.total == want
    assert rep.total == sum(rep.vertex_weights.values()) + sum(x for _, x in rep.face_weights)


# the cycle bound --------------------------------------------------------------

def test_wheel_passes_cycle_bound():
    w, lists = wheel_lists()
    holds, slack, rep = check_preouf(w, lists)
    assert holds
    assert Fraction(5, 2) - 2 - Fraction(1, 12) == slack  # 1/2 - 1/12


def test_three_pairwise_adjacent_hubs_family():
    # 6-cycle 0..5 with a triangle 6 7 8 inside, every hub of degree 5
    faces = [
        [0, 1, 6], [1, 2, 6], [2, 7, 6], [2, 3, 7], [3, 4, 7], [4, 8, 7],
        [4, 5, 8], [5, 0, 8], [0, 6, 8], [6, 7, 8],
    ]
    g = from_faces(9, faces, [5, 4, 3, 2, 1, 0])
    assert all(g.degree(v) == 5 for v in (6, 7, 8))
    holds, slack, rep = check_preouf(g, sized(g, outer=1))
    assert rep.total == 0
    assert holds and slack == Fraction(3, 2) - Fraction(3, 14)


def test_cycle_plus_chord_warns():
    g = from_faces(5, [[0, 1, 2], [0, 2, 3, 4]], [4, 3, 2, 1, 0])
    with pytest.warns(HypothesisWarning):
        check_preouf(g, sized(g, outer=1))


# the path bound -----------------------------------------------------------

@pytest.mark.parametrize("text", ["fan:1", "fan:3", "fatfan:2", "fan:0,fatfan:2", "fatfan:2,fatfan:2"])
def test_even_processions_are_tight(text):
    proc = fans.build_procession(fans.FanProcessionSpec.parse(text))
    lists, phi = fans.dangerous_witness(proc)
    holds, slack, rep = check_prepathw(proc.graph, list(proc.base), lists)
    assert holds and slack == 0 and rep.total == 0


# face square sum ------------------------------------------------------------

def test_qsum_examples():
    assert check_qsum(path_graph(4)) == (True, 34, 34)
    assert check_qsum(cycle_graph(3)) == (True, 14, 14)
    assert check_qsum(k4_graph()) == (True, 28, 34)


def test_qsum_requires_connected():
    from listcrit.plane_graph import PlaneGraph

    with pytest.raises(ValueError):
        check_qsum(PlaneGraph(((), ()), 0))


# vertex count bounds ------------------------------------------------------

def test_size_bound_modes():
    g = wheel_graph(5)
    assert check_size_bounds(g, range(5)) == (True, 6, 200)
    assert check_size_bounds(g, [0, 1, 2], mode="boundsize") == (True, 6, 32)
    assert check_size_bounds(g, [0, 1, 2, 3], mode="boundsize")[2] == 72
    with pytest.raises(ValueError):
        check_size_bounds(g, [0, 1], mode="nope")


def test_triangle_bound_is_72():
    assert check_size_bounds(k4_graph(), [0, 1, 2])[2] == 72


def test_adjacent_three_lists_warn():
    proc = fans.build_fan(3)
    lists, _ = fans.dangerous_witness(proc)
    with pytest.warns(HypothesisWarning):
        check_size_bounds(proc.graph, list(proc.base), lists, mode="boundsize")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_size_bounds(proc.graph, list(proc.base), None, mode="boundsize")
