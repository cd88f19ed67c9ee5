import random

import pytest
from hypothesis import given, settings, strategies as st

from listcrit.plane_graph import (
    EmbeddingError,
    ParseError,
    PlaneGraph,
    are_isomorphic_bruteforce,
    canonical_form,
    chords_and_k_chords,
    components,
    cut_along_path,
    cycle_graph,
    distance,
    euler_holds,
    face_count,
    from_faces,
    interior_subgraph,
    k4_graph,
    outer_cycle,
    outer_face,
    path_graph,
    random_plane_graph,
    read_plg,
    split_face_to_cycle,
    trace_faces,
    wheel_graph,
    write_plg,
)
from listcrit import fans


def face_lengths(g):
    return sorted(len(f) for f in trace_faces(g))


def bfs(g, s):
    # plain textbook BFS, kept here so the test does not lean on the library
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.rotations[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def bowtie():
    # triangles 0 1 2 and 0 3 4 sharing vertex 0
    rot = ((1, 2, 3, 4), (2, 0), (0, 1), (4, 0), (0, 3))
    g = PlaneGraph(rot)
    # pick the outer dart as the one whose face has length 6
    for f in trace_faces(g):
        if len(f) == 6:
            return PlaneGraph(rot, f.darts[0])
    raise AssertionError("no face of length 6")


# construction and validation ---------------------------------------------

def test_rejects_asymmetric_adjacency():
    with pytest.raises(EmbeddingError):
        PlaneGraph(((1,), ()))


def test_rejects_loops_and_repeats():
    with pytest.raises(EmbeddingError):
        PlaneGraph(((0,),))
    with pytest.raises(EmbeddingError):
        PlaneGraph(((1, 1), (0,)))


def test_from_faces_rejects_repeated_dart():
    with pytest.raises(EmbeddingError):
        from_faces(3, [[0, 1, 2], [0, 1, 2]])


# face tracing ---------------------------------------------------------------

def test_triangle_has_two_faces_of_length_three():
    assert face_lengths(cycle_graph(3)) == [3, 3]


def test_path_on_three_vertices_has_one_face_of_length_four():
    assert face_lengths(path_graph(3)) == [4]


def test_k4_has_four_triangles():
    assert face_lengths(k4_graph()) == [3, 3, 3, 3]


def test_bowtie_outer_face_has_length_six():
    g = bowtie()
    assert len(outer_face(g)) == 6
    assert face_lengths(g) == [3, 3, 6]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6), st.floats(0, 1))
def test_faces_partition_darts_and_euler(n, seed, p):
    g = random_plane_graph(n, random.Random(seed), p)
    faces = trace_faces(g)
    darts = [d for f in faces for d in f.darts]
    assert len(darts) == len(set(darts)) == 2 * g.m
    assert sum(len(f) for f in faces) == 2 * g.m
    assert g.n - g.m + face_count(g) == 2
    assert euler_holds(g)


def test_euler_on_disconnected_graph():
    # triangle plus an isolated vertex: V - E + F = 1 + C
    g = PlaneGraph(((1, 2), (2, 0), (0, 1), ()), (0, 1))
    assert len(components(g)) == 2
    assert g.n - g.m + face_count(g) == 3
    assert euler_holds(g)


# distances ----------------------------------------------------------------

def test_distance_examples():
    c6 = cycle_graph(6)
    assert distance(c6, 2, 2) == 0
    assert distance(c6, 0, 1) == 1
    assert distance(c6, 0, 3) == 3


def test_distance_disconnected_is_infinite():
    g = PlaneGraph(((1,), (0,), ()), (0, 1))
    assert distance(g, 0, 2) == float("inf")


def test_distance_rejects_bad_vertex():
    with pytest.raises((ValueError, IndexError)):
        distance(cycle_graph(4), 0, 9)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_distance_agrees_with_bfs(n, seed):
    g = random_plane_graph(n, random.Random(seed), 0.4)
    for s in range(n):
        ref = bfs(g, s)
        for t in range(n):
            assert distance(g, s, t) == ref.get(t, float("inf"))


# chords ----------------------------------------------------------------------

def test_single_diagonal_is_the_only_chord():
    g = from_faces(4, [[0, 1, 2], [0, 2, 3]], [3, 2, 1, 0])
    assert chords_and_k_chords(g, [0, 1, 2, 3], 1) == [(0, 2)]


def test_wheel_has_ten_two_chords():
    w = wheel_graph(5)
    two = chords_and_k_chords(w, [0, 1, 2, 3, 4], 2)
    assert len(two) == 10
    assert all(p[1] == 5 for p in two)


def test_chordless_cycle_has_no_chords():
    assert chords_and_k_chords(wheel_graph(6), list(range(6)), 1) == []


def test_chords_reject_non_cycle():
    with pytest.raises(ValueError):
        chords_and_k_chords(wheel_graph(5), [0, 2, 4], 1)


def brute_k_chords(g, cyc, k):
    on = set(cyc)
    cyc_edges = {frozenset((cyc[i - 1], cyc[i])) for i in range(len(cyc))}
    out = set()

    def walk(path):
        if len(path) == k + 1:
            if path[-1] in on and path[-1] != path[0]:
                if k == 1 and frozenset(path) in cyc_edges:
                    return
                t = tuple(path)
                out.add(min(t, t[::-1]))
            return
        for w in g.rotations[path[-1]]:
            if w in path:
                continue
            if len(path) < k and w in on:
                continue
            walk(path + [w])

    for s in cyc:
        walk([s])
    return sorted(out)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_k_chords_match_brute_force_on_processions(k):
    for spec in fans.enumerate_specs(8):
        g = fans.build_procession(spec).graph
        cyc = outer_cycle(g)
        assert chords_and_k_chords(g, cyc, k) == brute_k_chords(g, cyc, k)


# interior subgraphs -----------------------------------------------------------

def test_interior_of_wheel_rim_is_whole_wheel():
    w = wheel_graph(5)
    h, relabel = interior_subgraph(w, outer_cycle(w))
    assert (h.n, h.m) == (w.n, w.m)
    assert canonical_form(h) == canonical_form(w)


def test_interior_of_k4_facial_triangle_is_triangle():
    g = k4_graph()
    h, _ = interior_subgraph(g, [0, 1, 3])
    assert (h.n, h.m) == (3, 3)


def test_interior_of_six_cycle_with_two_hubs_is_whole_graph():
    # 6-cycle 0..5 with adjacent interior vertices 6 and 7 of degree 5
    faces = [[0, 1, 6], [1, 2, 6], [2, 3, 6], [6, 3, 7], [3, 4, 7], [4, 5, 7], [5, 0, 7], [7, 0, 6]]
    g = from_faces(8, faces, [5, 4, 3, 2, 1, 0])
    assert g.degree(6) == g.degree(7) == 5
    h, _ = interior_subgraph(g, outer_cycle(g))
    assert (h.n, h.m) == (8, g.m)


def test_interior_of_separating_cycle():
    # wheel 6 with rim vertex 0 joined through: the cycle 0-1-6 bounds a face
    w = wheel_graph(6)
    h, relabel = interior_subgraph(w, [0, 1, 6])
    assert (h.n, h.m) == (3, 3)
    assert sorted(relabel) == [0, 1, 6]


# cutting along a path ----------------------------------------------------

def test_cut_single_edge_adds_one_vertex():
    w = wheel_graph(5)
    h, ql, qr, origin = cut_along_path(w, [0, 1])
    assert h.n == w.n + 1
    # both copies of the cut edge survive, one on each side of the slit
    assert h.m == w.m + 1


def test_cut_wheel_along_spoke():
    w = wheel_graph(6)
    h, ql, qr, origin = cut_along_path(w, [0, 6])
    assert h.n == 8 and h.m == w.m + 1
    walk = outer_face(h).vertices
    copies = [v for v in walk if origin[v] == 0]
    assert len(copies) >= 2
    assert len(set(copies)) == 2


def test_cut_tree_edge_keeps_both_paths_on_boundary():
    # the last vertex of q stays shared, so a tree stays a tree
    g = path_graph(3)
    h, ql, qr, origin = cut_along_path(g, [1, 0])
    assert h.n == 4 and h.m == 3
    assert len(components(h)) == 1
    assert face_lengths(h) == [6]
    darts = set(outer_face(h).darts)
    for q in (ql, qr):
        assert all((a, b) in darts or (b, a) in darts for a, b in zip(q, q[1:]))


def test_cut_rejects_start_inside():
    w = wheel_graph(5)
    with pytest.raises(ValueError):
        cut_along_path(w, [5, 0])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cut_doubles_path_edges_and_vertices(seed):
    rng = random.Random(seed)
    spec = rng.choice(fans.enumerate_specs(10))
    g = fans.build_procession(spec).graph
    start = rng.choice(outer_cycle(g))
    q = [start]
    for _ in range(rng.randint(1, 3)):
        nxt = [w for w in g.rotations[q[-1]] if w not in q]
        if not nxt:
            break
        q.append(rng.choice(nxt))
    if len(q) < 2:
        return
    h, ql, qr, origin = cut_along_path(g, q)
    k = len(q) - 1
    assert h.m == g.m + k
    assert h.n == g.n + k
    assert len(ql) == len(qr) == k + 1
    assert ql[-1] == qr[-1]
    assert euler_holds(h)


# splitting a face ---------------------------------------------------------

def test_split_simple_face_is_identity():
    g = cycle_graph(5)
    h, cyc, origin = split_face_to_cycle(g, outer_face(g))
    assert (h.n, h.m) == (5, 5)
    assert len(cyc) == 5


def test_split_path_face_gives_four_cycle():
    g = path_graph(3)
    h, cyc, origin = split_face_to_cycle(g, outer_face(g))
    assert len(cyc) == 4 and h.n == 4 and h.m == 4
    assert face_lengths(h) == [4, 4]


def test_split_bowtie_gives_six_cycle():
    g = bowtie()
    f = outer_face(g)
    h, cyc, origin = split_face_to_cycle(g, f)
    assert len(cyc) == len(f) == 6
    assert sorted(origin[v] for v in cyc).count(0) == 2
    assert euler_holds(h)


# canonical form -----------------------------------------------------------

def test_relabelled_k4_has_same_form():
    g = k4_graph()
    h = g.relabel([2, 0, 3, 1])
    assert canonical_form(g) == canonical_form(h)


def test_cycle_and_path_differ():
    assert canonical_form(cycle_graph(5)) != canonical_form(path_graph(5))


def test_fan_two_differs_from_fat_fan_one():
    a = fans.build_fan(2).graph
    b = fans.build_fat_fan(1).graph
    assert a.n == b.n == 5
    assert canonical_form(a) != canonical_form(b)
    assert not are_isomorphic_bruteforce(a, b)


def test_mirror_image_has_same_form():
    g = random_plane_graph(8, random.Random(3), 0.7)
    assert canonical_form(g) == canonical_form(g.mirror())


def test_marks_distinguish():
    g = cycle_graph(4)
    assert canonical_form(g, {0: 1}) == canonical_form(g, {2: 1})
    assert canonical_form(g, {0: 1, 1: 1}) != canonical_form(g, {0: 1, 2: 1})


def small_graphs(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, 7)
        g = random_plane_graph(n, rng, rng.random())
        faces = trace_faces(g)
        f = rng.choice(faces)
        if f.darts:
            g = PlaneGraph(g.rotations, f.darts[0])
        out.append(g)
    return out


def test_canonical_form_agrees_with_brute_force():
    graphs = small_graphs(11, 90)
    # relabelled and mirrored copies must collide
    rng = random.Random(12)
    for g in graphs[:30]:
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        if rng.random() < 0.5:
            h = h.mirror()
        assert are_isomorphic_bruteforce(g, h)
        assert canonical_form(g) == canonical_form(h)
    # and arbitrary pairs of equal size must agree with the oracle
    by_size = {}
    for g in graphs:
        by_size.setdefault((g.n, g.m), []).append(g)
    pairs = 0
    for group in by_size.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                a, b = group[i], group[j]
                assert (canonical_form(a) == canonical_form(b)) == are_isomorphic_bruteforce(a, b)
                pairs += 1
    assert pairs > 20


def test_outer_face_choice_matters():
    # a triangle with a pendant vertex: outer face the big face vs inner triangle
    rot = ((1, 2, 3), (2, 0), (0, 1), (0,))
    g = PlaneGraph(rot)
    big = [f for f in trace_faces(g) if len(f) == 5][0]
    small = [f for f in trace_faces(g) if len(f) == 3][0]
    a = PlaneGraph(rot, big.darts[0])
    b = PlaneGraph(rot, small.darts[0])
    assert canonical_form(a) != canonical_form(b)
    assert not are_isomorphic_bruteforce(a, b)


# PLG/1 --------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(1, 14), st.integers(0, 10**6))
def test_plg_round_trip(n, seed):
    g = random_plane_graph(n, random.Random(seed), 0.6)
    text = write_plg(g)
    h = read_plg(text)
    assert h == g
    assert write_plg(h) == text


def test_plg_isolated_vertex_anchor():
    g = PlaneGraph(((),), 0)
    text = write_plg(g)
    assert "vertex 0" in text
    assert read_plg(text) == g


def test_plg_parse_error_has_position():
    with pytest.raises(ParseError) as e:
        read_plg("3\n0: 1 2\n1: 2 0\n2: 0 x\nouter: 0>1\n")
    assert e.value.line == 4
